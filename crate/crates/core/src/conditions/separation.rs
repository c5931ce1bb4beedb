//! Gehring–Hayman ratios and the ball-separation condition.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::graph::GridGraph;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GehringHaymanRow {
    pub x: Point2,
    pub y: Point2,
    pub geodesic_length: f64,
    pub inner_distance: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GehringHaymanReport {
    pub max_ratio: f64,
    pub rows: Vec<GehringHaymanRow>,
}

/// `l(γ_k) / λ(x, y)` for each pair; coincident points count as ratio 1.
pub fn gehring_hayman_ratio(g: &GridGraph, pairs: &[(Point2, Point2)]) -> Result<GehringHaymanReport> {
    let mut rows = Vec::with_capacity(pairs.len());
    for &(x, y) in pairs {
        let (geodesic_length, inner_distance, ratio) = if x == y {
            g.stub(x)?;
            (0.0, 0.0, 1.0)
        } else {
            let l = g.qh_geodesic(x, y)?.euclidean_length();
            let lam = g.inner_distance(x, y)?;
            (l, lam, l / lam)
        };
        rows.push(GehringHaymanRow {
            x,
            y,
            geodesic_length,
            inner_distance,
            ratio,
        });
    }
    Ok(GehringHaymanReport {
        max_ratio: rows.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallSeparationReport {
    pub holds: bool,
    pub c: f64,
    /// Geodesic vertex with the largest `dist(z, σ) / δ(z)`.
    pub worst_z: Point2,
    pub worst_ratio: f64,
}

/// Every vertex `z` of the quasihyperbolic geodesic must have a vertex of the
/// inner-metric shortest path `σ` within `c·δ(z)`.
pub fn ball_separation_check(g: &GridGraph, pair: (Point2, Point2), c: f64) -> Result<BallSeparationReport> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::Argument(format!("ball-separation constant must be positive (got {c})")));
    }
    let (x, y) = pair;
    let gamma = g.qh_geodesic(x, y)?;
    let sigma = g.inner_path(x, y)?;
    let d = g.domain();
    let mut worst = (0.0f64, x);
    for &z in gamma.points() {
        let gap = sigma.points().iter().map(|s| s.dist(z)).fold(f64::INFINITY, f64::min);
        let ratio = gap / d.distance_to_boundary(z);
        if ratio > worst.0 {
            worst = (ratio, z);
        }
    }
    Ok(BallSeparationReport {
        holds: worst.0 <= c,
        c,
        worst_z: worst.1,
        worst_ratio: worst.0,
    })
}
