use thiserror::Error;

/// Errors produced by domain construction, grid discretization and the probes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed domain or growth-function document; `path` is a JSON pointer.
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    /// A query point is not inside the open domain.
    #[error("point ({x}, {y}) is not inside the domain")]
    OutsideDomain { x: f64, y: f64 },

    #[error("resolution error: {0}")]
    Resolution(String),

    /// Endpoints lie in different graph components.
    #[error("unreachable: {0}")]
    Unreachable(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// No admissible node near an anchor at the given probe scale.
    #[error("no admissible node within scale {scale} of anchor {anchor}")]
    Scale { anchor: String, scale: f64 },

    #[error("sampling error: {0}")]
    Sample(String),

    #[error("growth function error: {0}")]
    Function(String),

    #[error("unknown anchor '{0}'")]
    UnknownAnchor(String),

    #[error("usage error: {0}")]
    Usage(String),

    /// An internal consistency check failed.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }
}
