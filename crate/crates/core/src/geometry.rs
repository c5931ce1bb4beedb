//! Planar primitives: points, segments and circular arcs.

use std::f64::consts::TAU;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for parameter clamping in intersection tests.
const PARAM_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Unit vector in the same direction; the zero vector maps to itself.
    pub fn normalized(self) -> Point2 {
        let n = self.norm();
        if n > 0.0 {
            self * (1.0 / n)
        } else {
            self
        }
    }

    pub fn lerp(self, o: Point2, t: f64) -> Point2 {
        self + (o - self) * t
    }

    pub fn midpoint(self, o: Point2) -> Point2 {
        self.lerp(o, 0.5)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn from_polar(r: f64, theta: f64) -> Point2 {
        Point2::new(r * theta.cos(), r * theta.sin())
    }
}

/// Parses `"x,y"`; whitespace around either coordinate is ignored.
pub fn parse_point(s: &str) -> Result<Point2> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| Error::parse("point", format!("expected \"x,y\", got {s:?}")))?;
    let coord = |t: &str, which: &str| -> Result<f64> {
        let v: f64 = t
            .trim()
            .parse()
            .map_err(|_| Error::parse("point", format!("{which} coordinate {t:?} is not a number")))?;
        if !v.is_finite() {
            return Err(Error::parse("point", format!("{which} coordinate {t:?} is not finite")));
        }
        Ok(v)
    };
    Ok(Point2::new(coord(x, "x")?, coord(y, "y")?))
}

impl From<[f64; 2]> for Point2 {
    fn from(v: [f64; 2]) -> Self {
        Point2::new(v[0], v[1])
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// Axis-aligned box `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox {
    pub min: Point2,
    pub max: Point2,
}

impl BBox {
    pub fn new(min: Point2, max: Point2) -> Self {
        BBox { min, max }
    }

    pub fn empty() -> Self {
        BBox {
            min: Point2::new(f64::INFINITY, f64::INFINITY),
            max: Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    pub fn include(&mut self, p: Point2) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
    }

    pub fn union(mut self, o: BBox) -> BBox {
        self.include(o.min);
        self.include(o.max);
        self
    }

    pub fn overlaps(&self, o: &BBox) -> bool {
        self.min.x <= o.max.x && o.min.x <= self.max.x && self.min.y <= o.max.y && o.min.y <= self.max.y
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn diagonal(&self) -> f64 {
        (self.max - self.min).norm()
    }

    pub fn is_finite(&self) -> bool {
        self.min.is_finite() && self.max.is_finite()
    }
}

/// Distance from `p` to the closed segment `[a, b]`.
pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len_sq).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// Whether the closed segments `[p1, p2]` and `[q1, q2]` share a point.
pub fn segments_touch(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> bool {
    let r = p2 - p1;
    let s = q2 - q1;
    let denom = r.cross(s);
    let qp = q1 - p1;
    let scale = r.norm() * s.norm();
    if denom.abs() <= 1e-14 * scale {
        // parallel: touching only if collinear and overlapping
        if qp.cross(r).abs() > 1e-14 * (r.norm() * qp.norm()).max(f64::MIN_POSITIVE) && r.norm() > 0.0 {
            return false;
        }
        if r.norm_sq() == 0.0 {
            return point_segment_distance(p1, q1, q2) == 0.0;
        }
        let rr = r.norm_sq();
        let t0 = qp.dot(r) / rr;
        let t1 = (q2 - p1).dot(r) / rr;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        return hi >= -PARAM_EPS && lo <= 1.0 + PARAM_EPS;
    }
    let t = qp.cross(s) / denom;
    let u = qp.cross(r) / denom;
    (-PARAM_EPS..=1.0 + PARAM_EPS).contains(&t) && (-PARAM_EPS..=1.0 + PARAM_EPS).contains(&u)
}

/// Parameters `t` in `[0, 1]` where `a + t (b - a)` meets the circle `|z - c| = r`.
fn segment_circle_params(a: Point2, b: Point2, c: Point2, r: f64) -> Vec<f64> {
    let d = b - a;
    let f = a - c;
    let qa = d.norm_sq();
    if qa == 0.0 {
        return if (f.norm() - r).abs() <= 1e-14 * r.max(1.0) { vec![0.0] } else { vec![] };
    }
    let qb = 2.0 * f.dot(d);
    let qc = f.norm_sq() - r * r;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        // tangency lost to rounding
        if disc > -1e-14 * qb * qb {
            let t = -qb / (2.0 * qa);
            return if (-PARAM_EPS..=1.0 + PARAM_EPS).contains(&t) { vec![t.clamp(0.0, 1.0)] } else { vec![] };
        }
        return vec![];
    }
    let sq = disc.sqrt();
    // numerically stable root pair
    let qq = -0.5 * (qb + qb.signum() * sq);
    let mut roots = if qq != 0.0 {
        vec![qq / qa, qc / qq]
    } else {
        vec![(-qb + sq) / (2.0 * qa), (-qb - sq) / (2.0 * qa)]
    };
    roots.retain(|t| (-PARAM_EPS..=1.0 + PARAM_EPS).contains(t));
    roots.iter_mut().for_each(|t| *t = t.clamp(0.0, 1.0));
    roots
}

/// Circular arc from angle `start` sweeping counter-clockwise by `sweep` radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub center: Point2,
    pub radius: f64,
    pub start: f64,
    pub sweep: f64,
}

impl Arc {
    pub fn circle(center: Point2, radius: f64) -> Self {
        Arc {
            center,
            radius,
            start: 0.0,
            sweep: TAU,
        }
    }

    pub fn is_full(&self) -> bool {
        self.sweep >= TAU
    }

    /// Counter-clockwise offset of `theta` from the arc start, in `[0, 2π)`.
    fn offset(&self, theta: f64) -> f64 {
        (theta - self.start).rem_euclid(TAU)
    }

    fn covers_angle(&self, theta: f64) -> bool {
        if self.is_full() {
            return true;
        }
        let off = self.offset(theta);
        off <= self.sweep * (1.0 + 1e-12) || TAU - off <= 1e-12
    }

    fn param_of(&self, q: Point2) -> f64 {
        let off = self.offset((q - self.center).angle());
        if self.is_full() {
            off / TAU
        } else if off > self.sweep {
            // wrap-around rounding near the start
            if TAU - off < off - self.sweep {
                0.0
            } else {
                1.0
            }
        } else {
            off / self.sweep
        }
    }

    pub fn point_at_angle(&self, theta: f64) -> Point2 {
        self.center + Point2::from_polar(self.radius, theta)
    }
}

/// One piece of a domain boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Curve {
    Segment(Point2, Point2),
    Arc(Arc),
}

impl Curve {
    pub fn point_at(&self, s: f64) -> Point2 {
        match *self {
            Curve::Segment(a, b) => a.lerp(b, s),
            Curve::Arc(arc) => arc.point_at_angle(arc.start + s * arc.sweep),
        }
    }

    pub fn midpoint(&self) -> Point2 {
        self.point_at(0.5)
    }

    pub fn length(&self) -> f64 {
        match *self {
            Curve::Segment(a, b) => a.dist(b),
            Curve::Arc(arc) => arc.radius * arc.sweep,
        }
    }

    /// Sub-curve between parameters `s0 < s1`.
    pub fn sub(&self, s0: f64, s1: f64) -> Curve {
        match *self {
            Curve::Segment(..) => Curve::Segment(self.point_at(s0), self.point_at(s1)),
            Curve::Arc(arc) => Curve::Arc(Arc {
                start: arc.start + s0 * arc.sweep,
                sweep: (s1 - s0) * arc.sweep,
                ..arc
            }),
        }
    }

    pub fn distance(&self, p: Point2) -> f64 {
        match *self {
            Curve::Segment(a, b) => point_segment_distance(p, a, b),
            Curve::Arc(arc) => {
                let v = p - arc.center;
                let r = v.norm();
                if r == 0.0 || arc.covers_angle(v.angle()) {
                    (r - arc.radius).abs()
                } else {
                    p.dist(self.point_at(0.0)).min(p.dist(self.point_at(1.0)))
                }
            }
        }
    }

    pub fn bbox(&self) -> BBox {
        let mut bb = BBox::empty();
        match *self {
            Curve::Segment(a, b) => {
                bb.include(a);
                bb.include(b);
            }
            Curve::Arc(arc) => {
                bb.include(self.point_at(0.0));
                bb.include(self.point_at(1.0));
                for k in 0..4 {
                    let theta = k as f64 * std::f64::consts::FRAC_PI_2;
                    if arc.covers_angle(theta) {
                        bb.include(arc.point_at_angle(theta));
                    }
                }
            }
        }
        bb
    }

    /// Whether the closed segment `[a, b]` shares a point with this curve.
    pub fn touches_segment(&self, a: Point2, b: Point2) -> bool {
        match *self {
            Curve::Segment(p, q) => segments_touch(a, b, p, q),
            Curve::Arc(arc) => segment_circle_params(a, b, arc.center, arc.radius)
                .into_iter()
                .any(|t| arc.covers_angle((a.lerp(b, t) - arc.center).angle())),
        }
    }

    /// Parameters on `self` (in `[0, 1]`) where it meets `other`.
    pub fn intersection_params(&self, other: &Curve) -> Vec<f64> {
        match (*self, *other) {
            (Curve::Segment(a, b), Curve::Segment(p, q)) => seg_seg_params(a, b, p, q),
            (Curve::Segment(a, b), Curve::Arc(arc)) => segment_circle_params(a, b, arc.center, arc.radius)
                .into_iter()
                .filter(|&t| arc.covers_angle((a.lerp(b, t) - arc.center).angle()))
                .collect(),
            (Curve::Arc(arc), Curve::Segment(p, q)) => segment_circle_params(p, q, arc.center, arc.radius)
                .into_iter()
                .map(|u| p.lerp(q, u))
                .filter(|&z| arc.covers_angle((z - arc.center).angle()))
                .map(|z| arc.param_of(z))
                .collect(),
            (Curve::Arc(a1), Curve::Arc(a2)) => arc_arc_params(&a1, &a2),
        }
    }
}

fn seg_seg_params(a: Point2, b: Point2, p: Point2, q: Point2) -> Vec<f64> {
    let r = b - a;
    let s = q - p;
    let denom = r.cross(s);
    let ap = p - a;
    let rr = r.norm_sq();
    if rr == 0.0 {
        return vec![];
    }
    if denom.abs() <= 1e-14 * r.norm() * s.norm() {
        if ap.cross(r).abs() > 1e-12 * r.norm() * ap.norm().max(1e-300) {
            return vec![];
        }
        // collinear overlap: report the other segment's endpoints that land on self
        return [ap.dot(r) / rr, (q - a).dot(r) / rr]
            .into_iter()
            .filter(|t| (-PARAM_EPS..=1.0 + PARAM_EPS).contains(t))
            .map(|t| t.clamp(0.0, 1.0))
            .collect();
    }
    let t = ap.cross(s) / denom;
    let u = ap.cross(r) / denom;
    if (-PARAM_EPS..=1.0 + PARAM_EPS).contains(&t) && (-PARAM_EPS..=1.0 + PARAM_EPS).contains(&u) {
        vec![t.clamp(0.0, 1.0)]
    } else {
        vec![]
    }
}

fn arc_arc_params(a1: &Arc, a2: &Arc) -> Vec<f64> {
    let d_vec = a2.center - a1.center;
    let d = d_vec.norm();
    let (r1, r2) = (a1.radius, a2.radius);
    if d == 0.0 {
        if (r1 - r2).abs() > 1e-14 * r1.max(r2) {
            return vec![];
        }
        let ends = [a2.point_at_angle(a2.start), a2.point_at_angle(a2.start + a2.sweep)];
        return ends
            .into_iter()
            .filter(|&z| a1.covers_angle((z - a1.center).angle()))
            .map(|z| a1.param_of(z))
            .collect();
    }
    if d > r1 + r2 || d < (r1 - r2).abs() {
        return vec![];
    }
    let along = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    let h = (r1 * r1 - along * along).max(0.0).sqrt();
    let base = a1.center + d_vec * (along / d);
    let perp = Point2::new(-d_vec.y, d_vec.x) * (h / d);
    let mut pts = vec![base + perp];
    if h > 0.0 {
        pts.push(base - perp);
    }
    pts.into_iter()
        .filter(|&z| a1.covers_angle((z - a1.center).angle()) && a2.covers_angle((z - a2.center).angle()))
        .map(|z| a1.param_of(z))
        .collect()
}
