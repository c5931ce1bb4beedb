//! Cone-arc constants along polylines and the John center probe.

use serde::Serialize;

use crate::analysis::{approach_node, check_scales, EndpointRule};
use crate::domain::{Anchor, Domain};
use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::graph::GridGraph;
use crate::path::PathPolyline;

/// Samples per segment before golden-section refinement.
const SEGMENT_SAMPLES: usize = 16;
const GOLDEN_STEPS: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct ConeArcStats {
    pub path: PathPolyline,
    pub b_hat: f64,
    pub argmax_point: Point2,
}

/// Which arc lengths enter the ratio at a point `z` of the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ConeForm {
    /// `min(l(γ[x,z]), l(γ[z,y])) / δ(z)`.
    Double,
    /// `l(γ[x,z]) / δ(z)` measured from the first vertex.
    Center,
}

fn check_inside(d: &Domain, path: &PathPolyline) -> Result<()> {
    for w in path.points().windows(2) {
        if !d.segment_inside(w[0], w[1]) {
            return Err(Error::Geometry(format!(
                "segment ({}, {}) -> ({}, {}) leaves the domain",
                w[0].x, w[0].y, w[1].x, w[1].y
            )));
        }
    }
    if path.len() == 1 && !d.contains(path.first()) {
        return Err(Error::OutsideDomain {
            x: path.first().x,
            y: path.first().y,
        });
    }
    Ok(())
}

/// Maximum of the cone ratio over the whole polyline, not only its vertices.
fn cone_max(d: &Domain, path: &PathPolyline, form: ConeForm) -> (f64, Point2) {
    let pts = path.points();
    let total = path.euclidean_length();
    let cum = path.cumulative_euclidean();
    let ratio = |z: Point2, arc: f64| {
        let l = match form {
            ConeForm::Double => arc.min(total - arc),
            ConeForm::Center => arc,
        };
        if l <= 0.0 {
            0.0
        } else {
            l / d.distance_to_boundary(z)
        }
    };
    let mut best = (ratio(pts[0], 0.0), pts[0]);
    let mut consider = |v: f64, z: Point2| {
        if v > best.0 {
            best = (v, z);
        }
    };
    for (k, w) in pts.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let len = a.dist(b);
        let at = |s: f64| (ratio(a.lerp(b, s), cum[k] + s * len), a.lerp(b, s));
        let (v, z) = at(1.0);
        consider(v, z);
        if form == ConeForm::Double {
            // where the two arc lengths balance
            let s = (0.5 * total - cum[k]) / len;
            if (0.0..=1.0).contains(&s) {
                let (v, z) = at(s);
                consider(v, z);
            }
        }
        let mut top = (f64::NEG_INFINITY, 0usize);
        for i in 0..=SEGMENT_SAMPLES {
            let v = at(i as f64 / SEGMENT_SAMPLES as f64).0;
            if v > top.0 {
                top = (v, i);
            }
        }
        let step = 1.0 / SEGMENT_SAMPLES as f64;
        let mut lo = (top.1 as f64 - 1.0).max(0.0) * step;
        let mut hi = (top.1 as f64 + 1.0).min(SEGMENT_SAMPLES as f64) * step;
        let phi = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..GOLDEN_STEPS {
            let m1 = hi - phi * (hi - lo);
            let m2 = lo + phi * (hi - lo);
            if at(m1).0 < at(m2).0 {
                lo = m1;
            } else {
                hi = m2;
            }
        }
        let (v, z) = at(0.5 * (lo + hi));
        consider(v, z);
    }
    best
}

fn point_key(p: Point2) -> (u64, u64) {
    (p.x.to_bits(), p.y.to_bits())
}

/// Double-cone constant `max_z min(l(γ[x,z]), l(γ[z,y])) / δ(z)`.
pub fn cone_arc_constant(d: &Domain, path: &PathPolyline) -> Result<ConeArcStats> {
    if path.len() < 2 {
        return Err(Error::Argument("cone-arc constant needs at least two points".into()));
    }
    check_inside(d, path)?;
    // both orientations, so that reversal leaves the result bitwise unchanged
    let fwd = cone_max(d, path, ConeForm::Double);
    let back = cone_max(d, &path.reversed(), ConeForm::Double);
    let (b_hat, argmax_point) = if back.0 > fwd.0 || (back.0 == fwd.0 && point_key(back.1) < point_key(fwd.1)) {
        back
    } else {
        fwd
    };
    Ok(ConeArcStats {
        path: path.clone(),
        b_hat,
        argmax_point,
    })
}

/// Center-form constant `max_y l(γ[x,y]) / δ(y)` with `x` the first vertex.
pub fn center_cone_constant(d: &Domain, path: &PathPolyline) -> Result<f64> {
    check_inside(d, path)?;
    Ok(cone_max(d, path, ConeForm::Center).0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassVerdict {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JohnTarget {
    pub anchor: String,
    pub point: Point2,
    /// Constant per scale; `None` where no admissible node exists.
    pub constants: Vec<Option<f64>>,
    pub worst: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JohnReport {
    pub x0: Point2,
    pub scales: Vec<f64>,
    pub targets: Vec<JohnTarget>,
    /// Worst constant of each target, in target order.
    pub growth: Vec<f64>,
    pub verdict: ClassVerdict,
}

/// John verdict: fails on two consecutive doublings of a constant sequence,
/// holds when every per-scale ratio stays below 1.5 and no doubling occurs.
pub fn john_verdict(growth: &[f64], per_scale: &[Vec<f64>]) -> ClassVerdict {
    let ratios = |s: &[f64]| s.windows(2).map(|w| w[1] / w[0]).collect::<Vec<f64>>();
    let doubles_twice = |s: &[f64]| ratios(s).windows(2).any(|r| r[0] >= 2.0 && r[1] >= 2.0);
    if doubles_twice(growth) || per_scale.iter().any(|s| doubles_twice(s)) {
        return ClassVerdict::Fails;
    }
    let calm_scales = per_scale.iter().all(|s| ratios(s).iter().all(|&r| r < 1.5));
    let no_doubling = ratios(growth).iter().all(|&r| r < 2.0);
    if calm_scales && no_doubling {
        ClassVerdict::Holds
    } else {
        ClassVerdict::Inconclusive
    }
}

/// Center-form cone constants of geodesics from near each target to `x0`.
pub fn john_center_probe(g: &GridGraph, x0: Point2, targets: &[Anchor], scales: &[f64]) -> Result<JohnReport> {
    check_scales(scales)?;
    let field = g.dist_field(x0)?;
    let comp = g.component_of(field.source_node());
    let mut out = Vec::with_capacity(targets.len());
    for anchor in targets {
        let mut constants = Vec::with_capacity(scales.len());
        for (k, &t) in scales.iter().enumerate() {
            let node = match approach_node(g, anchor, anchor.inward, t, comp, EndpointRule::Nearest, k) {
                Ok(n) => n,
                Err(Error::Scale { .. }) => {
                    constants.push(None);
                    continue;
                }
                Err(e) => return Err(e),
            };
            let path = field.path_to_node(g, node)?.reversed();
            constants.push(Some(center_cone_constant(g.domain(), &path)?));
        }
        let worst = constants.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max);
        if !worst.is_finite() {
            return Err(Error::Unreachable(format!("target {} is unreachable at every scale", anchor.name)));
        }
        out.push(JohnTarget {
            anchor: anchor.name.clone(),
            point: anchor.point,
            constants,
            worst,
        });
    }
    let growth: Vec<f64> = out.iter().map(|t| t.worst).collect();
    let per_scale: Vec<Vec<f64>> = out.iter().map(|t| t.constants.iter().flatten().copied().collect()).collect();
    Ok(JohnReport {
        x0,
        scales: scales.to_vec(),
        verdict: john_verdict(&growth, &per_scale),
        targets: out,
        growth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{compile, DomainSpec};

    fn brute_double(d: &Domain, a: Point2, b: Point2, n: usize) -> f64 {
        let len = a.dist(b);
        (0..=n)
            .map(|i| {
                let s = i as f64 / n as f64;
                let z = a.lerp(b, s);
                (s * len).min((1.0 - s) * len) / d.distance_to_boundary(z)
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn diameter_constant() {
        let d = compile(&DomainSpec::unit_disk()).unwrap();
        let (a, b) = (Point2::new(-0.9, 0.0), Point2::new(0.9, 0.0));
        let path = PathPolyline::new(vec![a, b]).unwrap();
        let s = cone_arc_constant(&d, &path).unwrap();
        assert!((s.b_hat - 0.9).abs() < 1e-12);
        assert!(s.argmax_point.norm() < 1e-12);
        assert!((s.b_hat - brute_double(&d, a, b, 20000)).abs() < 1e-3);
    }

    #[test]
    fn radial_constant() {
        let d = compile(&DomainSpec::unit_disk()).unwrap();
        let (a, b) = (Point2::ORIGIN, Point2::new(0.9, 0.0));
        let s = cone_arc_constant(&d, &PathPolyline::new(vec![a, b]).unwrap()).unwrap();
        // min(t, 0.9 - t) / (1 - t) peaks at t = 0.45
        assert!((s.b_hat - 0.45 / 0.55).abs() < 1e-9);
        assert!((s.b_hat - brute_double(&d, a, b, 20000)).abs() < 1e-3);
        let center = center_cone_constant(&d, &PathPolyline::new(vec![b, a]).unwrap()).unwrap();
        assert!((center - 0.9).abs() < 1e-9);
    }

    #[test]
    fn short_deep_path() {
        let d = compile(&DomainSpec::unit_disk()).unwrap();
        let eps = 1e-4;
        let path = PathPolyline::new(vec![Point2::ORIGIN, Point2::new(eps, 0.0)]).unwrap();
        let s = cone_arc_constant(&d, &path).unwrap();
        assert!((s.b_hat - eps / 2.0).abs() < 1e-7);
    }

    #[test]
    fn exiting_path_is_rejected() {
        let d = compile(&DomainSpec::slit_disk()).unwrap();
        let path = PathPolyline::new(vec![Point2::new(0.5, 0.1), Point2::new(0.5, -0.1)]).unwrap();
        assert!(matches!(cone_arc_constant(&d, &path), Err(Error::Geometry(_))));
    }

    #[test]
    fn john_verdict_rules() {
        assert_eq!(john_verdict(&[10.0, 25.0, 60.0], &[vec![9.0, 10.0]]), ClassVerdict::Fails);
        assert_eq!(john_verdict(&[1.0, 1.2], &[vec![1.0, 1.1, 1.05]]), ClassVerdict::Holds);
        assert_eq!(john_verdict(&[1.0, 1.8], &[vec![1.0, 1.7]]), ClassVerdict::Inconclusive);
    }
}
