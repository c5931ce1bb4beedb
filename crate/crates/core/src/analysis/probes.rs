//! Visibility, boundary Gromov-product and geodesic-loop probes.
//!
//! Each probe approaches boundary anchors along a decreasing scale ladder
//! `t_1 > … > t_K`, joins the approach points by graph geodesics and records
//! how far those geodesics stay from a basepoint `x0`.

use rand::Rng;
use serde::Serialize;

use crate::domain::Anchor;
use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::graph::{DistField, GridGraph};
use crate::path::PathPolyline;
use crate::sampling;

/// Increment bound for "m_k has stabilized".
pub const STABLE_INCREMENT: f64 = 0.1;
/// Total rise of a monotone run that counts as divergence.
pub const DIVERGENT_RISE: f64 = 2.0;
/// Loop probe: allowed spread of the last three `m_k`.
pub const LOOP_VARIATION: f64 = 0.25;
/// Loop probe: endpoints must be this far apart at the last scale.
pub const LOOP_SEPARATION: f64 = 4.0;
/// Approach targets sit this fraction of the scale along the inward direction.
const APPROACH_DEPTH: f64 = 0.75;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Visible,
    NotVisible,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundedness {
    Bounded,
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LoopVerdict {
    LoopSuspected,
    WellBehaved,
    Inconclusive,
}

/// How approach points are picked among the nodes within `t_k` of an anchor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EndpointRule {
    /// Node nearest to `anchor + 0.75 t_k · inward`.
    #[default]
    Nearest,
    /// Uniformly random admissible node.
    Random { seed: u64 },
}

/// Per-scale data common to all probes.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ProbeSeries {
    pub scales: Vec<f64>,
    pub endpoints: Vec<[Point2; 2]>,
    /// `m_k`: smallest `k(x0, ·)` over the vertices of the k-th geodesic.
    pub m: Vec<f64>,
    /// Largest `δ` over the vertices of the k-th geodesic.
    pub clearance: Vec<f64>,
    /// `(x_k | y_k)_{x0}`.
    pub gromov_products: Vec<f64>,
    /// `k(x_k, y_k)`.
    pub pair_distances: Vec<f64>,
    #[serde(skip)]
    pub geodesics: Vec<PathPolyline>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VisibilityReport {
    pub p: Point2,
    pub q: Point2,
    pub p_anchor: String,
    pub q_anchor: String,
    pub x0: Point2,
    pub scales: Vec<f64>,
    pub m: Vec<f64>,
    pub clearance: Vec<f64>,
    pub gromov_products: Vec<f64>,
    pub endpoints: Vec<[Point2; 2]>,
    pub pair_distances: Vec<f64>,
    pub verdict: Verdict,
    /// Least-squares slope of `m_k` against `log2(1/t_k)`.
    pub divergence_slope: f64,
    #[serde(skip)]
    pub geodesics: Vec<PathPolyline>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GromovBoundaryReport {
    pub p: Point2,
    pub q: Point2,
    pub o: Point2,
    pub scales: Vec<f64>,
    pub gromov_products: Vec<f64>,
    pub verdict: Boundedness,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoopReport {
    pub p: Point2,
    pub p_anchor: String,
    pub x0: Point2,
    pub arcs: [Point2; 2],
    pub scales: Vec<f64>,
    pub m: Vec<f64>,
    pub clearance: Vec<f64>,
    pub endpoints: Vec<[Point2; 2]>,
    pub pair_distances: Vec<f64>,
    pub verdict: LoopVerdict,
    pub divergence_slope: f64,
    #[serde(skip)]
    pub geodesics: Vec<PathPolyline>,
}

pub fn check_scales(scales: &[f64]) -> Result<()> {
    if scales.is_empty() {
        return Err(Error::Argument("at least one scale is required".into()));
    }
    if scales.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
        return Err(Error::Argument("scales must be positive".into()));
    }
    if scales.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Argument("scales must be strictly decreasing".into()));
    }
    Ok(())
}

/// Admissible node within `t` of `anchor`, in component `component`.
pub fn approach_node(
    g: &GridGraph,
    anchor: &Anchor,
    direction: Point2,
    t: f64,
    component: u32,
    rule: EndpointRule,
    scale_index: usize,
) -> Result<u32> {
    let candidates: Vec<u32> = g
        .nodes_within(anchor.point, t)
        .into_iter()
        .filter(|&u| g.component_of(u) == component)
        .collect();
    if candidates.is_empty() {
        return Err(Error::Scale {
            anchor: anchor.name.clone(),
            scale: t,
        });
    }
    Ok(match rule {
        EndpointRule::Nearest => {
            let target = anchor.point + direction.normalized() * (APPROACH_DEPTH * t);
            candidates
                .into_iter()
                .min_by(|&a, &b| {
                    g.node(a)
                        .point
                        .dist(target)
                        .total_cmp(&g.node(b).point.dist(target))
                        .then(a.cmp(&b))
                })
                .expect("non-empty")
        }
        EndpointRule::Random { seed } => {
            let mut rng = sampling::rng(seed ^ (scale_index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            candidates[rng.random_range(0..candidates.len())]
        }
    })
}

fn series(g: &GridGraph, field: &DistField, pairs: &[(u32, u32)], scales: &[f64]) -> Result<ProbeSeries> {
    let mut s = ProbeSeries {
        scales: scales.to_vec(),
        ..Default::default()
    };
    for &(x, y) in pairs {
        let (nodes, d) = g.node_geodesic(x, y)?;
        let m = nodes.iter().map(|&v| field.value(v)).fold(f64::INFINITY, f64::min);
        let clearance = nodes.iter().map(|&v| g.node(v).delta).fold(0.0, f64::max);
        let points: Vec<Point2> = nodes.iter().map(|&v| g.node(v).point).collect();
        s.endpoints.push([g.node(x).point, g.node(y).point]);
        s.m.push(m);
        s.clearance.push(clearance);
        s.gromov_products.push(0.5 * (field.value(x) + field.value(y) - d));
        s.pair_distances.push(d);
        s.geodesics.push(PathPolyline::new(points)?.with_graph_length(d));
    }
    Ok(s)
}

fn two_anchor_series(
    g: &GridGraph,
    p: &Anchor,
    q: &Anchor,
    x0: Point2,
    scales: &[f64],
    rule: EndpointRule,
) -> Result<ProbeSeries> {
    if p.point == q.point {
        return Err(Error::Argument("p and q coincide; use the loop probe".into()));
    }
    check_scales(scales)?;
    let field = g.dist_field(x0)?;
    let comp = g.component_of(field.source_node());
    let q_rule = match rule {
        EndpointRule::Random { seed } => EndpointRule::Random { seed: seed.wrapping_add(1) },
        r => r,
    };
    let pairs = scales
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            Ok((
                approach_node(g, p, p.inward, t, comp, rule, k)?,
                approach_node(g, q, q.inward, t, comp, q_rule, k)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    series(g, &field, &pairs, scales)
}

/// Divergence rule over `m_k` and the clearances.
pub fn visibility_verdict(m: &[f64], clearance: &[f64]) -> Verdict {
    let k = m.len();
    if k < 2 {
        return Verdict::Inconclusive;
    }
    let incs: Vec<f64> = m.windows(2).map(|w| w[1] - w[0]).collect();
    let tail = &incs[incs.len().saturating_sub(3)..];
    let ratio = clearance[k - 1] / clearance[0];
    if tail.iter().all(|&d| d < STABLE_INCREMENT) && ratio > 0.5 {
        return Verdict::Visible;
    }
    // trailing strictly increasing run
    let mut start = k - 1;
    while start > 0 && m[start - 1] < m[start] {
        start -= 1;
    }
    let run = k - start;
    if (run >= 3 && m[k - 1] - m[start] >= DIVERGENT_RISE) || ratio < 0.1 {
        return Verdict::NotVisible;
    }
    Verdict::Inconclusive
}

/// Bounded iff the last three increments of the products are all small.
pub fn boundedness_verdict(products: &[f64]) -> Boundedness {
    let incs: Vec<f64> = products.windows(2).map(|w| w[1] - w[0]).collect();
    let tail = &incs[incs.len().saturating_sub(3)..];
    if tail.iter().all(|&d| d < STABLE_INCREMENT) {
        Boundedness::Bounded
    } else {
        Boundedness::Unbounded
    }
}

pub fn loop_verdict(m: &[f64], pair_distances: &[f64]) -> LoopVerdict {
    let k = m.len();
    if k < 3 {
        return LoopVerdict::Inconclusive;
    }
    let last = &m[k - 3..];
    let spread = last.iter().copied().fold(f64::NEG_INFINITY, f64::max) - last.iter().copied().fold(f64::INFINITY, f64::min);
    if spread < LOOP_VARIATION && pair_distances[k - 1] >= LOOP_SEPARATION {
        LoopVerdict::LoopSuspected
    } else if m[k - 1] - m[k - 3] >= 1.0 {
        LoopVerdict::WellBehaved
    } else {
        LoopVerdict::Inconclusive
    }
}

/// Slope of `values` against `log2(1/t)`.
pub fn divergence_slope(scales: &[f64], values: &[f64]) -> f64 {
    let xs: Vec<f64> = scales.iter().map(|t| -t.log2()).collect();
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return 0.0;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = values.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(values).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

pub fn visibility_probe(g: &GridGraph, p: &Anchor, q: &Anchor, x0: Point2, scales: &[f64]) -> Result<VisibilityReport> {
    visibility_probe_with(g, p, q, x0, scales, EndpointRule::Nearest)
}

pub fn visibility_probe_with(
    g: &GridGraph,
    p: &Anchor,
    q: &Anchor,
    x0: Point2,
    scales: &[f64],
    rule: EndpointRule,
) -> Result<VisibilityReport> {
    let s = two_anchor_series(g, p, q, x0, scales, rule)?;
    Ok(VisibilityReport {
        p: p.point,
        q: q.point,
        p_anchor: p.name.clone(),
        q_anchor: q.name.clone(),
        x0,
        verdict: visibility_verdict(&s.m, &s.clearance),
        divergence_slope: divergence_slope(&s.scales, &s.m),
        scales: s.scales,
        m: s.m,
        clearance: s.clearance,
        gromov_products: s.gromov_products,
        endpoints: s.endpoints,
        pair_distances: s.pair_distances,
        geodesics: s.geodesics,
    })
}

pub fn gromov_product_boundary_probe(
    g: &GridGraph,
    p: &Anchor,
    q: &Anchor,
    o: Point2,
    scales: &[f64],
) -> Result<GromovBoundaryReport> {
    let s = two_anchor_series(g, p, q, o, scales, EndpointRule::Nearest)?;
    Ok(GromovBoundaryReport {
        p: p.point,
        q: q.point,
        o,
        verdict: boundedness_verdict(&s.gromov_products),
        scales: s.scales,
        gromov_products: s.gromov_products,
    })
}

/// Approaches one boundary anchor along two directions and tests whether the
/// joining geodesics stay near `x0` (a loop) or escape (well behaved).
pub fn loop_probe(g: &GridGraph, p: &Anchor, x0: Point2, scales: &[f64], arcs: [Point2; 2]) -> Result<LoopReport> {
    if g.domain().contains(p.point) {
        return Err(Error::Argument(format!("loop probe anchor {} is an interior point", p.name)));
    }
    check_scales(scales)?;
    let (a, b) = (arcs[0].normalized(), arcs[1].normalized());
    if !(a.is_finite() && b.is_finite()) || a.dot(b) > (1f64.to_radians()).cos() {
        return Err(Error::Geometry("approach arcs must point in distinct directions".into()));
    }
    let field = g.dist_field(x0)?;
    let comp = g.component_of(field.source_node());
    let pairs = scales
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            let x = approach_node(g, p, a, t, comp, EndpointRule::Nearest, k)?;
            let y = approach_node(g, p, b, t, comp, EndpointRule::Nearest, k)?;
            if x == y {
                return Err(Error::Geometry(format!("approach arcs meet at scale {t}")));
            }
            Ok((x, y))
        })
        .collect::<Result<Vec<_>>>()?;
    let s = series(g, &field, &pairs, scales)?;
    Ok(LoopReport {
        p: p.point,
        p_anchor: p.name.clone(),
        x0,
        arcs: [a, b],
        verdict: loop_verdict(&s.m, &s.pair_distances),
        divergence_slope: divergence_slope(&s.scales, &s.m),
        scales: s.scales,
        m: s.m,
        clearance: s.clearance,
        endpoints: s.endpoints,
        pair_distances: s.pair_distances,
        geodesics: s.geodesics,
    })
}

/// `t_k = base^k` for `k` in `from..=to`.
pub fn geometric_scales(base: f64, from: i32, to: i32) -> Vec<f64> {
    (from..=to).map(|k| base.powi(k)).collect()
}
