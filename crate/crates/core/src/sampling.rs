//! Seeded sampling helpers shared by the probes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::geometry::Point2;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One point uniformly distributed in the domain (rejection in the bounding box).
pub fn interior_point(domain: &Domain, rng: &mut impl Rng) -> Result<Point2> {
    let bb = domain.bounding_box();
    for _ in 0..100_000 {
        let p = Point2::new(rng.random_range(bb.min.x..bb.max.x), rng.random_range(bb.min.y..bb.max.y));
        if domain.contains(p) {
            return Ok(p);
        }
    }
    Err(Error::Sample("rejection sampling found no interior point".into()))
}

pub fn interior_points(domain: &Domain, n: usize, rng: &mut impl Rng) -> Result<Vec<Point2>> {
    (0..n).map(|_| interior_point(domain, rng)).collect()
}

/// Uniform point in the disk `|z| < radius` about the origin.
pub fn disk_point(radius: f64, rng: &mut impl Rng) -> Point2 {
    let r = radius * rng.random::<f64>().sqrt();
    Point2::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
}
