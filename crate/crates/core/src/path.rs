//! Polylines and their Euclidean, quasihyperbolic and conformal lengths.

use std::fmt::Write as _;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::geometry::Point2;

/// Relative-change stopping rule for segment quadrature.
pub const QUADRATURE_RTOL: f64 = 1e-6;
const MAX_HALVINGS: u32 = 22;
/// Absolute slack of [`check_lower_bound`].
pub const LOWER_BOUND_TOL: f64 = 1e-9;

/// Ordered point sequence representing a geodesic or a test curve.
#[derive(Debug, Clone, PartialEq)]
pub struct PathPolyline {
    points: Vec<Point2>,
    euclidean_length: f64,
    /// Sum of trapezoidal edge weights when the path came from the grid graph.
    graph_qh_length: Option<f64>,
}

impl PathPolyline {
    /// Builds a polyline, dropping consecutive duplicate points.
    pub fn new(points: Vec<Point2>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Argument("a path needs at least one point".into()));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::Argument("path points must be finite".into()));
        }
        let mut pts: Vec<Point2> = Vec::with_capacity(points.len());
        for p in points {
            if pts.last() != Some(&p) {
                pts.push(p);
            }
        }
        let euclidean_length = pts.windows(2).map(|w| w[0].dist(w[1])).sum();
        Ok(PathPolyline {
            points: pts,
            euclidean_length,
            graph_qh_length: None,
        })
    }

    pub(crate) fn with_graph_length(mut self, len: f64) -> Self {
        self.graph_qh_length = Some(len);
        self
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn first(&self) -> Point2 {
        self.points[0]
    }

    pub fn last(&self) -> Point2 {
        self.points[self.points.len() - 1]
    }

    pub fn euclidean_length(&self) -> f64 {
        self.euclidean_length
    }

    /// Cached quasihyperbolic length from graph weights, if known.
    pub fn graph_qh_length(&self) -> Option<f64> {
        self.graph_qh_length
    }

    pub fn reversed(&self) -> PathPolyline {
        let mut points = self.points.clone();
        points.reverse();
        PathPolyline {
            points,
            euclidean_length: self.euclidean_length,
            graph_qh_length: self.graph_qh_length,
        }
    }

    /// Cumulative Euclidean arc length at every vertex.
    pub fn cumulative_euclidean(&self) -> Vec<f64> {
        let mut acc = 0.0;
        let mut out = Vec::with_capacity(self.points.len());
        out.push(0.0);
        for w in self.points.windows(2) {
            acc += w[0].dist(w[1]);
            out.push(acc);
        }
        out
    }
}

pub fn euclidean_length(path: &PathPolyline) -> f64 {
    path.euclidean_length()
}

/// Trapezoidal quasihyperbolic weight of the segment `[a, b]`, the same rule
/// used for grid edges.
pub fn trapezoid_weight(a: Point2, delta_a: f64, b: Point2, delta_b: f64) -> f64 {
    a.dist(b) * 0.5 * (1.0 / delta_a + 1.0 / delta_b)
}

/// `∫ density` along `[a, b]` by composite midpoint with interval halving.
pub fn integrate_segment(a: Point2, b: Point2, density: impl Fn(Point2) -> f64) -> f64 {
    let len = a.dist(b);
    if len == 0.0 {
        return 0.0;
    }
    let mut n = 4usize;
    let mut prev = midpoint_sum(a, b, &density, n) * len;
    for _ in 0..MAX_HALVINGS {
        n *= 2;
        let cur = midpoint_sum(a, b, &density, n) * len;
        if (cur - prev).abs() <= QUADRATURE_RTOL * cur.abs() {
            return cur;
        }
        prev = cur;
    }
    prev
}

fn midpoint_sum(a: Point2, b: Point2, density: &impl Fn(Point2) -> f64, n: usize) -> f64 {
    let step = 1.0 / n as f64;
    (0..n).map(|k| density(a.lerp(b, (k as f64 + 0.5) * step))).sum::<f64>() * step
}

/// Quasihyperbolic length `∫ |dz| / δ(z)` by adaptive quadrature.
pub fn qh_length(domain: &Domain, path: &PathPolyline) -> Result<f64> {
    let p0 = path.first();
    if !domain.contains(p0) {
        return Err(Error::Geometry(format!("path vertex ({}, {}) is outside the domain", p0.x, p0.y)));
    }
    let mut total = 0.0;
    for w in path.points().windows(2) {
        if !domain.segment_inside(w[0], w[1]) {
            return Err(Error::Geometry(format!(
                "segment ({}, {}) -> ({}, {}) leaves the domain",
                w[0].x, w[0].y, w[1].x, w[1].y
            )));
        }
        total += integrate_segment(w[0], w[1], |z| 1.0 / domain.distance_to_boundary(z));
    }
    Ok(total)
}

/// Lower bound `log(1 + |x − y| / min(δ(x), δ(y)))` on `k(x, y)`.
pub fn qh_lower_bound(domain: &Domain, x: Point2, y: Point2) -> Result<f64> {
    let m = domain.boundary_distance(x)?.min(domain.boundary_distance(y)?);
    Ok((x.dist(y) / m).ln_1p())
}

/// Fails with [`Error::Invariant`] when a computed `k(x, y)` falls below
/// [`qh_lower_bound`] or below `|log(δ(y)/δ(x))|`.
pub fn check_lower_bound(domain: &Domain, x: Point2, y: Point2, k: f64) -> Result<()> {
    let j = qh_lower_bound(domain, x, y)?;
    let ratio = (domain.boundary_distance(y)? / domain.boundary_distance(x)?).ln().abs();
    if k < j.max(ratio) - LOWER_BOUND_TOL {
        return Err(Error::Invariant(format!(
            "k(({}, {}), ({}, {})) = {k} is below the lower bound {}",
            x.x,
            x.y,
            y.x,
            y.y,
            j.max(ratio)
        )));
    }
    Ok(())
}

/// Formats `v` with `sig` significant digits, `%g` style.
pub fn format_sig(v: f64, sig: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..sig as i32).contains(&exp) {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        let s = format!("{v:.decimals$}");
        // rounding may push 9.99.. to 10.0; trimming keeps it valid either way
        trim_zeros(s)
    } else {
        let s = format!("{:.*e}", sig - 1, v);
        let (mantissa, exponent) = s.split_once('e').unwrap_or((&s, "0"));
        format!("{}e{}", trim_zeros(mantissa.to_string()), exponent)
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Geodesic CSV: `x,y,delta,cum_qh_length,cum_euc_length`, plus an optional
/// trailing `hyp_cum_length` column.
pub fn geodesic_csv(domain: &Domain, path: &PathPolyline, hyperbolic: Option<&[f64]>) -> String {
    let mut out = String::from("x,y,delta,cum_qh_length,cum_euc_length");
    if hyperbolic.is_some() {
        out.push_str(",hyp_cum_length");
    }
    out.push('\n');
    let pts = path.points();
    let deltas: Vec<f64> = pts.iter().map(|&p| domain.distance_to_boundary(p)).collect();
    let euc = path.cumulative_euclidean();
    let mut qh = 0.0;
    for (i, &p) in pts.iter().enumerate() {
        if i > 0 {
            qh += trapezoid_weight(pts[i - 1], deltas[i - 1], p, deltas[i]);
        }
        let _ = write!(
            out,
            "{},{},{},{},{}",
            format_sig(p.x, 9),
            format_sig(p.y, 9),
            format_sig(deltas[i], 9),
            format_sig(qh, 9),
            format_sig(euc[i], 9)
        );
        if let Some(h) = hyperbolic {
            let _ = write!(out, ",{}", format_sig(h[i], 9));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{compile, DomainSpec};

    #[test]
    fn euclidean_lengths() {
        let single = PathPolyline::new(vec![Point2::new(0.2, 0.1)]).unwrap();
        assert_eq!(single.euclidean_length(), 0.0);
        let seg = PathPolyline::new(vec![Point2::ORIGIN, Point2::new(3.0, 4.0)]).unwrap();
        assert_eq!(euclidean_length(&seg), 5.0);
        let square = PathPolyline::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
            Point2::new(0.0, 0.0),
        ])
        .unwrap();
        assert_eq!(square.euclidean_length(), 4.0);
    }

    #[test]
    fn disk_quadrature_matches_closed_form() {
        let disk = compile(&DomainSpec::unit_disk()).unwrap();
        let single = PathPolyline::new(vec![Point2::new(0.1, 0.1)]).unwrap();
        assert_eq!(qh_length(&disk, &single).unwrap(), 0.0);
        let radial = PathPolyline::new(vec![Point2::ORIGIN, Point2::new(0.5, 0.0)]).unwrap();
        // ∫_0^0.5 dt/(1-t) = log 2
        assert!((qh_length(&disk, &radial).unwrap() - 2f64.ln()).abs() < 2e-6 * 2f64.ln());
        let diameter = PathPolyline::new(vec![Point2::new(-0.5, 0.0), Point2::new(0.5, 0.0)]).unwrap();
        let exact = 2.0 * 2f64.ln();
        assert!((qh_length(&disk, &diameter).unwrap() - exact).abs() < 2e-6 * exact);
    }

    #[test]
    fn quadrature_rejects_exiting_segments() {
        let slit = compile(&DomainSpec::slit_disk()).unwrap();
        let crossing = PathPolyline::new(vec![Point2::new(0.5, 0.1), Point2::new(0.5, -0.1)]).unwrap();
        assert!(matches!(qh_length(&slit, &crossing), Err(Error::Geometry(_))));
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_sig(0.0, 9), "0");
        assert_eq!(format_sig(2f64.ln(), 9), "0.693147181");
        assert_eq!(format_sig(-0.25, 9), "-0.25");
        assert_eq!(format_sig(1.0e-7, 9), "1e-7");
        assert_eq!(format_sig(123456.789, 9), "123456.789");
    }
}
