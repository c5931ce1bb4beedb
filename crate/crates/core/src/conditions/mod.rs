//! Quantitative domain-class checks: John cone arcs, QHBC, growth and
//! integrability of `φ`, Gehring–Hayman and ball separation.

mod cone;
mod growth;
mod qhbc;
mod separation;

pub use cone::*;
pub use growth::*;
pub use qhbc::*;
pub use separation::*;
