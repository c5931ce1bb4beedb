//! Declarative planar domains compiled to membership and boundary-distance
//! evaluators.
//!
//! A [`DomainSpec`] is a tree of primitives (disks, rectangles, polygons) and
//! combinators (union, difference, slits), plus two generated families: the
//! foot-with-fingers domain and the comb. [`compile`] turns a spec into a
//! [`Domain`] whose boundary is an explicit list of clipped segments and arcs,
//! so `boundary_distance` is exact up to floating point.

mod json;
mod layouts;

use std::f64::consts::{FRAC_PI_6, PI, TAU};

pub use json::{parse_domain, point_from_value, spec_from_value, spec_to_value};
pub use layouts::{
    comb_teeth, foot_layout, make_foot_fingers, Finger, FootLayout, FOOT_CENTER, FOOT_CHORD_Y,
    FOOT_RADIUS,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{point_segment_distance, Arc, BBox, Curve, Point2};

pub const DEFAULT_COMB_TEETH: u32 = 8;
const MAX_COMB_TEETH: u32 = 40;
/// Side of the coarse probe grid used by [`compile`] to detect empty domains.
const PROBE_GRID: usize = 64;
/// Distances at or below this are treated as "on the boundary".
const ON_BOUNDARY: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FootFingersParams {
    pub alpha: f64,
    pub beta: f64,
    pub m_max: u32,
    pub r0: f64,
    pub decay: f64,
}

impl Default for FootFingersParams {
    fn default() -> Self {
        FootFingersParams {
            alpha: 2.25,
            beta: 1.0,
            m_max: 3,
            r0: 0.125,
            decay: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DomainSpec {
    Disk { center: Point2, radius: f64 },
    Rect { min: Point2, max: Point2 },
    /// Simple, counter-clockwise polygon.
    Polygon { vertices: Vec<Point2> },
    Union { parts: Vec<DomainSpec> },
    Difference { base: Box<DomainSpec>, holes: Vec<DomainSpec> },
    /// Base domain with zero-width slits removed.
    SlitSet { base: Box<DomainSpec>, slits: Vec<(Point2, Point2)> },
    FootFingers(FootFingersParams),
    /// Unit square minus `teeth` vertical segments at `x = 2^-j`.
    Comb { teeth: u32 },
}

impl DomainSpec {
    pub fn unit_disk() -> Self {
        DomainSpec::Disk {
            center: Point2::ORIGIN,
            radius: 1.0,
        }
    }

    pub fn unit_square() -> Self {
        DomainSpec::Rect {
            min: Point2::ORIGIN,
            max: Point2::new(1.0, 1.0),
        }
    }

    /// Unit disk slit along `[0, 1) x {0}`.
    pub fn slit_disk() -> Self {
        DomainSpec::SlitSet {
            base: Box::new(DomainSpec::unit_disk()),
            slits: vec![(Point2::ORIGIN, Point2::new(1.0, 0.0))],
        }
    }

    pub fn to_json(&self) -> String {
        spec_to_value(self).to_string()
    }

    /// Checks the structural invariants of every node.
    pub fn validate(&self) -> Result<()> {
        match self {
            DomainSpec::Disk { center, radius } => {
                if !center.is_finite() || !(radius.is_finite() && *radius > 0.0) {
                    return Err(Error::Constraint(format!("disk radius must be positive (got {radius})")));
                }
            }
            DomainSpec::Rect { min, max } => {
                if !(min.is_finite() && max.is_finite() && min.x < max.x && min.y < max.y) {
                    return Err(Error::Constraint("rect requires min < max in both coordinates".into()));
                }
            }
            DomainSpec::Polygon { vertices } => validate_polygon(vertices)?,
            DomainSpec::Union { parts } => {
                if parts.is_empty() {
                    return Err(Error::Constraint("union needs at least one part".into()));
                }
                parts.iter().try_for_each(DomainSpec::validate)?;
            }
            DomainSpec::Difference { base, holes } => {
                base.validate()?;
                holes.iter().try_for_each(DomainSpec::validate)?;
            }
            DomainSpec::SlitSet { base, slits } => {
                base.validate()?;
                for (a, b) in slits {
                    if !(a.is_finite() && b.is_finite()) || a == b {
                        return Err(Error::Constraint("slit endpoints must be finite and distinct".into()));
                    }
                }
            }
            DomainSpec::FootFingers(p) => layouts::check_foot_params(p)?,
            DomainSpec::Comb { teeth } => {
                if *teeth == 0 || *teeth > MAX_COMB_TEETH {
                    return Err(Error::Constraint(format!("comb teeth must be in 1..={MAX_COMB_TEETH}")));
                }
            }
        }
        Ok(())
    }
}

fn validate_polygon(vertices: &[Point2]) -> Result<()> {
    if vertices.len() < 3 {
        return Err(Error::Constraint("polygon needs at least 3 vertices".into()));
    }
    if vertices.iter().any(|p| !p.is_finite()) {
        return Err(Error::Constraint("polygon vertices must be finite".into()));
    }
    let n = vertices.len();
    let area2: f64 = (0..n).map(|i| vertices[i].cross(vertices[(i + 1) % n])).sum();
    if !(area2 > 0.0) {
        return Err(Error::Constraint("polygon must be counter-clockwise with positive area".into()));
    }
    for i in 0..n {
        let (a, b) = (vertices[i], vertices[(i + 1) % n]);
        if a == b {
            return Err(Error::Constraint(format!("polygon edge {i} is degenerate")));
        }
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                continue;
            }
            let (c, d) = (vertices[j], vertices[(j + 1) % n]);
            if crate::geometry::segments_touch(a, b, c, d) {
                return Err(Error::Constraint(format!("polygon edges {i} and {j} intersect")));
            }
        }
    }
    Ok(())
}

/// A named boundary point (or distinguished interior target) with the
/// direction along which probes approach it.
#[derive(Debug, Clone, PartialEq)]
pub struct Anchor {
    pub name: String,
    pub point: Point2,
    /// Unit vector pointing into the domain.
    pub inward: Point2,
}

impl Anchor {
    fn new(name: impl Into<String>, point: Point2, inward: Point2) -> Self {
        Anchor {
            name: name.into(),
            point,
            inward: inward.normalized(),
        }
    }

    /// Anchor at an arbitrary point, approached along `inward`.
    pub fn at(point: Point2, inward: Point2) -> Self {
        Anchor::new(format!("({}, {})", point.x, point.y), point, inward)
    }
}

#[derive(Debug, Clone)]
enum Shape {
    Disk { center: Point2, radius: f64 },
    Rect { min: Point2, max: Point2 },
    Polygon { vertices: Vec<Point2> },
    /// Disk intersected with the half-plane `y > floor`.
    Cap { center: Point2, radius: f64, floor: f64 },
    Union(Vec<Region>),
    Difference(Box<Region>, Vec<Region>),
    Slits(Box<Region>, Vec<(Point2, Point2)>),
}

/// Compiled node: shape plus its exact (clipped) boundary.
#[derive(Debug, Clone)]
struct Region {
    shape: Shape,
    boundary: Vec<Curve>,
}

impl Region {
    fn new(shape: Shape) -> Region {
        let boundary = match &shape {
            Shape::Disk { center, radius } => vec![Curve::Arc(Arc::circle(*center, *radius))],
            Shape::Rect { min, max } => {
                let c = [*min, Point2::new(max.x, min.y), *max, Point2::new(min.x, max.y)];
                (0..4).map(|i| Curve::Segment(c[i], c[(i + 1) % 4])).collect()
            }
            Shape::Polygon { vertices } => {
                let n = vertices.len();
                (0..n).map(|i| Curve::Segment(vertices[i], vertices[(i + 1) % n])).collect()
            }
            Shape::Cap { center, radius, floor } => {
                let dy = floor - center.y;
                let half = (radius * radius - dy * dy).sqrt();
                let right = Point2::new(center.x + half, *floor);
                let left = Point2::new(center.x - half, *floor);
                let start = (right - *center).angle();
                let end = (left - *center).angle();
                let sweep = (end - start).rem_euclid(TAU);
                vec![
                    Curve::Arc(Arc {
                        center: *center,
                        radius: *radius,
                        start,
                        sweep,
                    }),
                    Curve::Segment(left, right),
                ]
            }
            Shape::Union(parts) => {
                let mut out = Vec::new();
                for (i, part) in parts.iter().enumerate() {
                    let others: Vec<&Region> =
                        parts.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, r)| r).collect();
                    for curve in &part.boundary {
                        for piece in split_curve(curve, others.iter().flat_map(|r| r.boundary.iter())) {
                            let m = piece.midpoint();
                            if !others.iter().any(|r| r.inside(m)) {
                                out.push(piece);
                            }
                        }
                    }
                }
                out
            }
            Shape::Difference(base, holes) => {
                let mut out = Vec::new();
                for curve in &base.boundary {
                    for piece in split_curve(curve, holes.iter().flat_map(|h| h.boundary.iter())) {
                        let m = piece.midpoint();
                        if !holes.iter().any(|h| h.closure_contains(m)) {
                            out.push(piece);
                        }
                    }
                }
                for (i, hole) in holes.iter().enumerate() {
                    let cutters = base
                        .boundary
                        .iter()
                        .chain(holes.iter().enumerate().filter(|(j, _)| *j != i).flat_map(|(_, h)| h.boundary.iter()));
                    for curve in &hole.boundary {
                        for piece in split_curve(curve, cutters.clone()) {
                            let m = piece.midpoint();
                            let covered = holes.iter().enumerate().any(|(j, h)| j != i && h.inside(m));
                            if base.inside(m) && !covered {
                                out.push(piece);
                            }
                        }
                    }
                }
                out
            }
            Shape::Slits(base, slits) => {
                let mut out = base.boundary.clone();
                for &(a, b) in slits {
                    for piece in split_curve(&Curve::Segment(a, b), base.boundary.iter()) {
                        if base.inside(piece.midpoint()) {
                            out.push(piece);
                        }
                    }
                }
                out
            }
        };
        Region { shape, boundary }
    }

    fn boundary_distance(&self, p: Point2) -> f64 {
        self.boundary.iter().map(|c| c.distance(p)).fold(f64::INFINITY, f64::min)
    }

    /// Membership in the open set.
    fn inside(&self, p: Point2) -> bool {
        match &self.shape {
            Shape::Disk { center, radius } => p.dist(*center) < *radius,
            Shape::Rect { min, max } => p.x > min.x && p.x < max.x && p.y > min.y && p.y < max.y,
            Shape::Polygon { vertices } => {
                winding_number(vertices, p) != 0 && self.boundary_distance(p) > ON_BOUNDARY
            }
            Shape::Cap { center, radius, floor } => p.dist(*center) < *radius && p.y > *floor,
            Shape::Union(parts) => parts.iter().any(|r| r.inside(p)),
            Shape::Difference(base, holes) => base.inside(p) && !holes.iter().any(|h| h.closure_contains(p)),
            Shape::Slits(base, slits) => {
                base.inside(p) && slits.iter().all(|&(a, b)| point_segment_distance(p, a, b) > ON_BOUNDARY)
            }
        }
    }

    fn closure_contains(&self, p: Point2) -> bool {
        self.inside(p) || self.boundary_distance(p) <= ON_BOUNDARY
    }
}

fn winding_number(vertices: &[Point2], p: Point2) -> i32 {
    let n = vertices.len();
    let mut wn = 0;
    for i in 0..n {
        let (a, b) = (vertices[i], vertices[(i + 1) % n]);
        let side = (b - a).cross(p - a);
        if a.y <= p.y {
            if b.y > p.y && side > 0.0 {
                wn += 1;
            }
        } else if b.y <= p.y && side < 0.0 {
            wn -= 1;
        }
    }
    wn
}

/// Splits `curve` at every point where it meets one of `cutters`.
fn split_curve<'a>(curve: &Curve, cutters: impl Iterator<Item = &'a Curve>) -> Vec<Curve> {
    let mut params = vec![0.0, 1.0];
    for other in cutters {
        if curve.bbox().overlaps(&other.bbox()) {
            params.extend(curve.intersection_params(other));
        }
    }
    params.sort_by(f64::total_cmp);
    params.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
    params
        .windows(2)
        .filter(|w| w[1] - w[0] > 1e-12)
        .map(|w| curve.sub(w[0], w[1]))
        .collect()
}

/// A compiled, immutable domain.
#[derive(Debug, Clone)]
pub struct Domain {
    spec: DomainSpec,
    region: Region,
    bounding_box: BBox,
    boundary_boxes: Vec<BBox>,
    anchors: Vec<Anchor>,
    foot: Option<FootLayout>,
    warnings: Vec<String>,
}

/// Compiles a spec into a queryable [`Domain`].
pub fn compile(spec: &DomainSpec) -> Result<Domain> {
    spec.validate()?;
    let (region, anchors, foot) = build_region(spec)?;
    if region.boundary.is_empty() {
        return Err(Error::Geometry("domain has no boundary".into()));
    }
    let bounding_box = region
        .boundary
        .iter()
        .map(Curve::bbox)
        .fold(BBox::empty(), BBox::union);
    if !bounding_box.is_finite() {
        return Err(Error::Geometry("domain is unbounded".into()));
    }
    let boundary_boxes = region.boundary.iter().map(Curve::bbox).collect();
    let mut domain = Domain {
        spec: spec.clone(),
        region,
        bounding_box,
        boundary_boxes,
        anchors,
        foot,
        warnings: Vec::new(),
    };
    domain.anchors.retain(|a| a.point.is_finite());
    let components = domain.probe_components();
    if components == 0 {
        return Err(Error::Geometry("empty interior on the probe grid".into()));
    }
    if components > 1 {
        domain.warnings.push(format!(
            "probe grid sees {components} components (passages narrower than the probe spacing are not resolved)"
        ));
    }
    Ok(domain)
}

fn build_region(spec: &DomainSpec) -> Result<(Region, Vec<Anchor>, Option<FootLayout>)> {
    Ok(match spec {
        DomainSpec::Disk { center, radius } => {
            let (c, r) = (*center, *radius);
            let mut anchors = vec![Anchor::new("center", c, Point2::ORIGIN)];
            for (name, theta) in [
                ("east", 0.0),
                ("north", PI / 2.0),
                ("west", PI),
                ("south", -PI / 2.0),
                ("east_upper", FRAC_PI_6),
                ("east_lower", -FRAC_PI_6),
            ] {
                let dir = Point2::from_polar(1.0, theta);
                anchors.push(Anchor::new(name, c + dir * r, -dir));
            }
            (Region::new(Shape::Disk { center: c, radius: r }), anchors, None)
        }
        DomainSpec::Rect { min, max } => {
            let mid = min.midpoint(*max);
            let anchors = vec![
                Anchor::new("center", mid, Point2::ORIGIN),
                Anchor::new("left_mid", Point2::new(min.x, mid.y), Point2::new(1.0, 0.0)),
                Anchor::new("right_mid", Point2::new(max.x, mid.y), Point2::new(-1.0, 0.0)),
                Anchor::new("bottom_mid", Point2::new(mid.x, min.y), Point2::new(0.0, 1.0)),
                Anchor::new("top_mid", Point2::new(mid.x, max.y), Point2::new(0.0, -1.0)),
                Anchor::new("corner_ll", *min, Point2::new(1.0, 1.0)),
                Anchor::new("corner_ur", *max, Point2::new(-1.0, -1.0)),
            ];
            (Region::new(Shape::Rect { min: *min, max: *max }), anchors, None)
        }
        DomainSpec::Polygon { vertices } => {
            let n = vertices.len();
            let mut anchors = Vec::new();
            let centroid = vertices.iter().fold(Point2::ORIGIN, |acc, p| acc + *p) * (1.0 / n as f64);
            anchors.push(Anchor::new("center", centroid, Point2::ORIGIN));
            for i in 0..n {
                let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                let d = b - a;
                anchors.push(Anchor::new(format!("edge_{i}_mid"), a.midpoint(b), Point2::new(-d.y, d.x)));
                let e = a - vertices[(i + n - 1) % n];
                let inward = Point2::new(-e.y, e.x).normalized() + Point2::new(-d.y, d.x).normalized();
                anchors.push(Anchor::new(format!("vertex_{i}"), a, inward));
            }
            (Region::new(Shape::Polygon { vertices: vertices.clone() }), anchors, None)
        }
        DomainSpec::Union { parts } => {
            let mut regions = Vec::new();
            let mut anchors = Vec::new();
            for (i, part) in parts.iter().enumerate() {
                let (region, sub, _) = build_region(part)?;
                anchors.extend(sub.into_iter().map(|a| Anchor {
                    name: format!("part{i}_{}", a.name),
                    ..a
                }));
                regions.push(region);
            }
            (Region::new(Shape::Union(regions)), anchors, None)
        }
        DomainSpec::Difference { base, holes } => {
            let (base_region, mut anchors, _) = build_region(base)?;
            let mut hole_regions = Vec::new();
            for (i, hole) in holes.iter().enumerate() {
                let (region, sub, _) = build_region(hole)?;
                anchors.extend(sub.into_iter().filter(|a| a.name != "center").map(|a| Anchor {
                    name: format!("hole{i}_{}", a.name),
                    inward: -a.inward,
                    ..a
                }));
                hole_regions.push(region);
            }
            (
                Region::new(Shape::Difference(Box::new(base_region), hole_regions)),
                anchors,
                None,
            )
        }
        DomainSpec::SlitSet { base, slits } => {
            let (base_region, mut anchors, _) = build_region(base)?;
            for (i, &(a, b)) in slits.iter().enumerate() {
                let prefix = if i == 0 { "slit".to_string() } else { format!("slit{i}") };
                let d = (b - a).normalized();
                let up = Point2::new(-d.y, d.x);
                let mid = a.midpoint(b);
                // the tip is the endpoint that lies inside the base
                let tip = if base_region.inside(a) || !base_region.inside(b) { a } else { b };
                anchors.push(Anchor::new(format!("{prefix}_tip"), tip, if tip == a { -d } else { d }));
                anchors.push(Anchor::new(format!("{prefix}_mid"), mid, up));
                anchors.push(Anchor::new(format!("{prefix}_mid_top"), mid, up));
                anchors.push(Anchor::new(format!("{prefix}_mid_bottom"), mid, -up));
            }
            (
                Region::new(Shape::Slits(Box::new(base_region), slits.clone())),
                anchors,
                None,
            )
        }
        DomainSpec::FootFingers(params) => {
            let layout = foot_layout(params)?;
            let mut parts = vec![Region::new(Shape::Cap {
                center: FOOT_CENTER,
                radius: FOOT_RADIUS,
                floor: FOOT_CHORD_Y,
            })];
            let mut anchors = vec![
                Anchor::new("center", FOOT_CENTER, Point2::ORIGIN),
                Anchor::new("foot_center", FOOT_CENTER, Point2::ORIGIN),
                Anchor::new("foot_top", FOOT_CENTER + Point2::new(0.0, FOOT_RADIUS), Point2::new(0.0, -1.0)),
                Anchor::new("foot_left", FOOT_CENTER - Point2::new(FOOT_RADIUS, 0.0), Point2::new(1.0, 0.0)),
                Anchor::new("foot_right", FOOT_CENTER + Point2::new(FOOT_RADIUS, 0.0), Point2::new(-1.0, 0.0)),
            ];
            for f in &layout.fingers {
                let (lo, hi) = f.corridor();
                parts.push(Region::new(Shape::Rect { min: lo, max: hi }));
                parts.push(Region::new(Shape::Disk {
                    center: f.toe_center,
                    radius: f.radius,
                }));
                anchors.push(Anchor::new(format!("toe_center_{}", f.index), f.toe_center, Point2::ORIGIN));
                anchors.push(Anchor::new(format!("toe_bottom_{}", f.index), f.toe_bottom(), Point2::new(0.0, 1.0)));
            }
            (Region::new(Shape::Union(parts)), anchors, Some(layout))
        }
        DomainSpec::Comb { teeth } => {
            let square = Region::new(Shape::Rect {
                min: Point2::ORIGIN,
                max: Point2::new(1.0, 1.0),
            });
            let anchors = vec![
                Anchor::new("center", Point2::new(0.75, 0.75), Point2::ORIGIN),
                Anchor::new("comb_left_low", Point2::new(0.0, 0.1), Point2::new(1.0, 0.0)),
                Anchor::new("comb_left_mid", Point2::new(0.0, 0.25), Point2::new(1.0, 0.0)),
                Anchor::new("comb_left_high", Point2::new(0.0, 0.75), Point2::new(1.0, 0.0)),
                Anchor::new("comb_top_mid", Point2::new(0.5, 1.0), Point2::new(0.0, -1.0)),
            ];
            (
                Region::new(Shape::Slits(Box::new(square), comb_teeth(*teeth))),
                anchors,
                None,
            )
        }
    })
}

impl Domain {
    pub fn spec(&self) -> &DomainSpec {
        &self.spec
    }

    pub fn bounding_box(&self) -> BBox {
        self.bounding_box
    }

    /// Clipped segments and arcs covering the topological boundary.
    pub fn boundary_curves(&self) -> &[Curve] {
        &self.region.boundary
    }

    pub fn anchors(&self) -> &[Anchor] {
        &self.anchors
    }

    pub fn foot_layout(&self) -> Option<&FootLayout> {
        self.foot.as_ref()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// True iff `p` lies in the open domain; boundary points are outside.
    pub fn contains(&self, p: Point2) -> bool {
        p.is_finite() && self.region.inside(p) && self.distance_to_boundary(p) > 0.0
    }

    /// Unsigned Euclidean distance from any point to the boundary curves.
    pub fn distance_to_boundary(&self, p: Point2) -> f64 {
        self.region.boundary_distance(p)
    }

    /// `δ(p)`, the distance from an interior point to the boundary.
    pub fn boundary_distance(&self, p: Point2) -> Result<f64> {
        if !self.contains(p) {
            return Err(Error::OutsideDomain { x: p.x, y: p.y });
        }
        Ok(self.distance_to_boundary(p))
    }

    pub fn boundary_anchor(&self, name: &str) -> Result<&Anchor> {
        self.anchors
            .iter()
            .find(|a| a.name == name)
            .ok_or_else(|| Error::UnknownAnchor(name.to_string()))
    }

    /// Whether the closed segment `[a, b]` avoids every boundary curve.
    pub fn segment_is_clear(&self, a: Point2, b: Point2) -> bool {
        let mut bb = BBox::empty();
        bb.include(a);
        bb.include(b);
        self.region
            .boundary
            .iter()
            .zip(&self.boundary_boxes)
            .all(|(c, cb)| !cb.overlaps(&bb) || !c.touches_segment(a, b))
    }

    /// Whether the segment `[a, b]` lies in the open domain.
    pub fn segment_inside(&self, a: Point2, b: Point2) -> bool {
        self.contains(a) && self.contains(b) && self.segment_is_clear(a, b)
    }

    /// Counts connected components of the coarse probe grid.
    fn probe_components(&self) -> usize {
        let bb = self.bounding_box;
        let n = PROBE_GRID;
        let step = Point2::new(bb.width() / n as f64, bb.height() / n as f64);
        let at = |i: usize, j: usize| bb.min + Point2::new((i as f64 + 0.5) * step.x, (j as f64 + 0.5) * step.y);
        let inside: Vec<bool> = (0..n * n).map(|k| self.contains(at(k % n, k / n))).collect();
        let mut label = vec![usize::MAX; n * n];
        let mut components = 0;
        for start in 0..n * n {
            if !inside[start] || label[start] != usize::MAX {
                continue;
            }
            label[start] = components;
            let mut stack = vec![start];
            while let Some(k) = stack.pop() {
                let (i, j) = (k % n, k / n);
                for (di, dj) in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
                    let (ni, nj) = (i as i64 + di, j as i64 + dj);
                    if ni < 0 || nj < 0 || ni >= n as i64 || nj >= n as i64 {
                        continue;
                    }
                    let nk = nj as usize * n + ni as usize;
                    if inside[nk] && label[nk] == usize::MAX && self.segment_is_clear(at(i, j), at(ni as usize, nj as usize)) {
                        label[nk] = components;
                        stack.push(nk);
                    }
                }
            }
            components += 1;
        }
        components
    }
}
