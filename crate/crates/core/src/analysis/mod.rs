//! Gromov products, δ-hyperbolicity estimates and boundary probes.

mod gromov;
mod probes;

pub use gromov::*;
pub use probes::*;
