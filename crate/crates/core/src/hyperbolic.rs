//! Hyperbolic metric of the unit disk, used as an analytic reference for the
//! quasihyperbolic graph.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::domain::DomainSpec;
use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::graph::GridGraph;
use crate::path::{integrate_segment, qh_length, PathPolyline};

/// Slack for discretization error in the disk comparison `k ≤ h ≤ 2k`.
pub const COMPARISON_SLACK: f64 = 0.05;
/// Polyline resolution of hyperbolic geodesics in the quasigeodesic check.
pub const GEODESIC_POINTS: usize = 256;

/// Curvature normalization of the Poincaré density.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypNormalization {
    /// `2 / (1 − |z|²)`, curvature −1.
    #[default]
    MinusOne,
    /// `1 / (1 − |z|²)`, curvature −4.
    MinusFour,
}

impl HypNormalization {
    fn factor(self) -> f64 {
        match self {
            HypNormalization::MinusOne => 2.0,
            HypNormalization::MinusFour => 1.0,
        }
    }
}

fn to_c(p: Point2) -> Complex64 {
    Complex64::new(p.x, p.y)
}

fn to_p(z: Complex64) -> Point2 {
    Point2::new(z.re, z.im)
}

fn check_disk(z: Point2) -> Result<()> {
    if !z.is_finite() || z.norm_sq() >= 1.0 {
        return Err(Error::OutsideDomain { x: z.x, y: z.y });
    }
    Ok(())
}

/// Disk automorphism `z ↦ (z − a) / (1 − ā z)`, sending `a` to 0.
pub fn mobius_to_origin(a: Point2, z: Point2) -> Point2 {
    let (a, z) = (to_c(a), to_c(z));
    to_p((z - a) / (Complex64::new(1.0, 0.0) - a.conj() * z))
}

/// Inverse of [`mobius_to_origin`].
pub fn mobius_from_origin(a: Point2, w: Point2) -> Point2 {
    let (a, w) = (to_c(a), to_c(w));
    to_p((w + a) / (Complex64::new(1.0, 0.0) + a.conj() * w))
}

/// General automorphism `z ↦ e^{iθ} (z − a) / (1 − ā z)`.
pub fn disk_automorphism(theta: f64, a: Point2, z: Point2) -> Point2 {
    to_p(Complex64::from_polar(1.0, theta) * to_c(mobius_to_origin(a, z)))
}

pub fn hyp_density(z: Point2, n: HypNormalization) -> Result<f64> {
    check_disk(z)?;
    Ok(n.factor() / (1.0 - z.norm_sq()))
}

/// Closed-form Poincaré distance. Uses `sinh(d/2) = |z1 − z2| / √((1−|z1|²)(1−|z2|²))`,
/// which equals `log((1+ρ)/(1−ρ))` with `ρ = |z1 − z2| / |1 − z̄1 z2|` and stays
/// accurate near the boundary and for close points.
pub fn hyp_distance_disk(z1: Point2, z2: Point2, n: HypNormalization) -> Result<f64> {
    check_disk(z1)?;
    check_disk(z2)?;
    let s = z1.dist(z2) / ((1.0 - z1.norm_sq()) * (1.0 - z2.norm_sq())).sqrt();
    Ok(n.factor() * s.asinh())
}

/// Samples the geodesic from `z1` to `z2`: the straight segment from 0 to
/// the image of `z2` under the map sending `z1` to 0, mapped back.
pub fn hyp_geodesic_disk(z1: Point2, z2: Point2, n_points: usize) -> Result<PathPolyline> {
    check_disk(z1)?;
    check_disk(z2)?;
    if n_points < 2 {
        return Err(Error::Argument(format!("n_points must be at least 2 (got {n_points})")));
    }
    let w = mobius_to_origin(z1, z2);
    let last = (n_points - 1) as f64;
    let mut points: Vec<Point2> = (0..n_points)
        .map(|i| mobius_from_origin(z1, Point2::new(w.x * i as f64 / last, w.y * i as f64 / last)))
        .collect();
    points[0] = z1;
    points[n_points - 1] = z2;
    PathPolyline::new(points)
}

/// Cumulative hyperbolic length at each vertex, by quadrature of the density.
pub fn hyp_cumulative(path: &PathPolyline, n: HypNormalization) -> Result<Vec<f64>> {
    for &p in path.points() {
        check_disk(p)?;
    }
    let mut acc = 0.0;
    let mut out = Vec::with_capacity(path.len());
    out.push(0.0);
    for w in path.points().windows(2) {
        acc += integrate_segment(w[0], w[1], |z| n.factor() / (1.0 - z.norm_sq()));
        out.push(acc);
    }
    Ok(out)
}

pub fn hyp_length(path: &PathPolyline, n: HypNormalization) -> Result<f64> {
    Ok(*hyp_cumulative(path, n)?.last().expect("non-empty path"))
}

fn check_unit_disk(g: &GridGraph) -> Result<()> {
    match g.domain().spec() {
        DomainSpec::Disk { center, radius } if *center == Point2::ORIGIN && *radius == 1.0 => Ok(()),
        _ => Err(Error::Usage("disk comparisons need a graph built on the unit disk".into())),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub x: Point2,
    pub y: Point2,
    pub k: f64,
    pub h: f64,
    /// `k (1 − ε) ≤ h`.
    pub lower_holds: bool,
    /// `h ≤ 2k (1 + ε)`.
    pub upper_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricComparison {
    pub normalization: HypNormalization,
    pub slack: f64,
    pub rows: Vec<ComparisonRow>,
    pub all_hold: bool,
}

/// Graph `k` against the closed-form `h` for each pair, with the verdicts
/// `k̂ (1 − ε) ≤ h ≤ 2 k̂ (1 + ε)`.
pub fn compare_metrics_disk(g: &GridGraph, pairs: &[(Point2, Point2)], n: HypNormalization) -> Result<MetricComparison> {
    check_unit_disk(g)?;
    let mut rows = Vec::with_capacity(pairs.len());
    for &(x, y) in pairs {
        let h = hyp_distance_disk(x, y, n)?;
        let k = g.qh_distance(x, y)?;
        rows.push(ComparisonRow {
            x,
            y,
            k,
            h,
            lower_holds: k * (1.0 - COMPARISON_SLACK) <= h,
            upper_holds: h <= 2.0 * k * (1.0 + COMPARISON_SLACK),
        });
    }
    Ok(MetricComparison {
        normalization: n,
        slack: COMPARISON_SLACK,
        all_hold: rows.iter().all(|r| r.lower_holds && r.upper_holds),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuasigeodesicRow {
    pub x: Point2,
    pub y: Point2,
    /// `l_k(γ_h) / k(x, y)`.
    pub k_ratio: f64,
    /// `l_h(γ_k) / h(x, y)`.
    pub h_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuasigeodesicReport {
    pub k_hat: f64,
    pub h_hat: f64,
    pub rows: Vec<QuasigeodesicRow>,
    /// Pairs left out because their endpoints coincide.
    pub skipped: usize,
}

/// Empirical constants `K̂ = max l_k(γ_h)/k` and `Ĥ = max l_h(γ_k)/h`.
pub fn bh_quasigeodesic_check(
    g: &GridGraph,
    pairs: &[(Point2, Point2)],
    n: HypNormalization,
) -> Result<QuasigeodesicReport> {
    check_unit_disk(g)?;
    let mut rows = Vec::with_capacity(pairs.len());
    let mut skipped = 0;
    for &(x, y) in pairs {
        if x == y {
            skipped += 1;
            continue;
        }
        let gamma_h = hyp_geodesic_disk(x, y, GEODESIC_POINTS)?;
        let k = g.qh_distance(x, y)?;
        let k_ratio = qh_length(g.domain(), &gamma_h)? / k;
        let gamma_k = g.qh_geodesic(x, y)?;
        let h_ratio = hyp_length(&gamma_k, n)? / hyp_distance_disk(x, y, n)?;
        rows.push(QuasigeodesicRow { x, y, k_ratio, h_ratio });
    }
    Ok(QuasigeodesicReport {
        k_hat: rows.iter().map(|r| r.k_ratio).fold(0.0, f64::max),
        h_hat: rows.iter().map(|r| r.h_ratio).fold(0.0, f64::max),
        rows,
        skipped,
    })
}
