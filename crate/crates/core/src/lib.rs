//! Quasihyperbolic geometry of bounded planar domains.
//!
//! The quasihyperbolic metric `k` of a domain is the path metric with density
//! `1/δ(x)`, where `δ` is the Euclidean distance to the boundary. This crate
//! discretizes that density on an adaptively refined grid graph and builds a
//! battery of numerical probes on top of it: Gromov products and
//! δ-hyperbolicity estimates, visibility and geodesic-loop probes, John,
//! QHBC and growth-condition checks, Gehring–Hayman and ball-separation
//! ratios, and comparisons with the hyperbolic metric of the unit disk.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(a <= b)` rejects NaN on purpose

pub mod analysis;
pub mod conditions;
pub mod domain;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod hyperbolic;
pub mod path;
pub mod sampling;
pub mod suite;

pub use domain::{compile, parse_domain, Anchor, Domain, DomainSpec, FootFingersParams};
pub use error::{Error, Result};
pub use geometry::{parse_point, Point2};
