//! Generators for the foot-with-fingers and comb domains.

use super::{DomainSpec, FootFingersParams};
use crate::error::{Error, Result};
use crate::geometry::Point2;

/// Center of the foot disk.
pub const FOOT_CENTER: Point2 = Point2::new(0.0, 0.75);
pub const FOOT_RADIUS: f64 = 1.0;
/// The foot is the part of its disk above this line; fingers hang below it.
pub const FOOT_CHORD_Y: f64 = 0.0;
/// Horizontal spread of finger abscissas: `c_m = 0.55 (1 - 2^(1-m))`.
const FINGER_SPREAD: f64 = 0.55;
/// Toe centers sit this many toe radii below the corridor bottom.
const TOE_DROP: f64 = 0.9;

/// One corridor plus its toe disk.
#[derive(Debug, Clone, PartialEq)]
pub struct Finger {
    pub index: u32,
    pub abscissa: f64,
    /// Toe radius `r_m`.
    pub radius: f64,
    /// Corridor width `r_m^alpha`.
    pub width: f64,
    /// Corridor height `r_m^beta`.
    pub height: f64,
    pub toe_center: Point2,
}

impl Finger {
    /// Corridor rectangle; it overlaps the foot by one corridor width so the
    /// union has no seam along the chord.
    pub fn corridor(&self) -> (Point2, Point2) {
        let half = 0.5 * self.width;
        (
            Point2::new(self.abscissa - half, FOOT_CHORD_Y - self.height),
            Point2::new(self.abscissa + half, FOOT_CHORD_Y + self.width),
        )
    }

    pub fn toe_bottom(&self) -> Point2 {
        self.toe_center - Point2::new(0.0, self.radius)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FootLayout {
    pub fingers: Vec<Finger>,
}

impl FootLayout {
    pub fn chord_half_width() -> f64 {
        let dy = FOOT_CHORD_Y - FOOT_CENTER.y;
        (FOOT_RADIUS * FOOT_RADIUS - dy * dy).sqrt()
    }
}

pub fn check_foot_params(p: &FootFingersParams) -> Result<()> {
    if !(p.beta >= 1.0 && p.alpha > p.beta) {
        return Err(Error::Constraint(format!(
            "foot_fingers requires 1 <= beta < alpha (got alpha={}, beta={})",
            p.alpha, p.beta
        )));
    }
    if !(p.r0 > 0.0 && p.r0 < 1.0) {
        return Err(Error::Constraint(format!("foot_fingers requires 0 < r0 < 1 (got {})", p.r0)));
    }
    if !(p.decay > 0.0 && p.decay < 1.0) {
        return Err(Error::Constraint(format!("foot_fingers requires decay in (0, 1) (got {})", p.decay)));
    }
    if !p.alpha.is_finite() {
        return Err(Error::Constraint("foot_fingers alpha must be finite".into()));
    }
    Ok(())
}

/// Lays out the fingers and verifies they are pairwise disjoint.
pub fn foot_layout(p: &FootFingersParams) -> Result<FootLayout> {
    check_foot_params(p)?;
    let chord = FootLayout::chord_half_width();
    let mut fingers = Vec::with_capacity(p.m_max as usize);
    for m in 1..=p.m_max {
        let r = p.r0 * p.decay.powi(m as i32 - 1);
        let height = r.powf(p.beta);
        let width = r.powf(p.alpha);
        let abscissa = FINGER_SPREAD * (1.0 - 2f64.powi(1 - m as i32));
        let toe_center = Point2::new(abscissa, FOOT_CHORD_Y - height - TOE_DROP * r);
        let finger = Finger {
            index: m,
            abscissa,
            radius: r,
            width,
            height,
            toe_center,
        };
        if abscissa.abs() + 0.5 * width >= chord {
            return Err(Error::Geometry(format!("finger {m} leaves the foot chord; decrease r0 or m_max")));
        }
        // corridor bottom corners must sit strictly inside the toe
        let corner = Point2::new(abscissa + 0.5 * width, FOOT_CHORD_Y - height);
        if corner.dist(toe_center) >= r {
            return Err(Error::Geometry(format!("finger {m} corridor does not reach into its toe")));
        }
        fingers.push(finger);
    }
    for (i, a) in fingers.iter().enumerate() {
        for b in &fingers[i + 1..] {
            if finger_gap(a, b) <= 0.0 {
                return Err(Error::Geometry(format!(
                    "fingers {} and {} overlap; decrease r0 or m_max",
                    a.index, b.index
                )));
            }
        }
    }
    Ok(FootLayout { fingers })
}

/// Conservative separation between two fingers (negative when they may overlap).
fn finger_gap(a: &Finger, b: &Finger) -> f64 {
    let toe_gap = a.toe_center.dist(b.toe_center) - a.radius - b.radius;
    let rect_gap = |f: &Finger, g: &Finger| {
        let (lo, hi) = f.corridor();
        // distance from g's toe disk to f's corridor box, and box-to-box
        let dx = (lo.x - g.toe_center.x).max(g.toe_center.x - hi.x).max(0.0);
        let dy = (lo.y - g.toe_center.y).max(g.toe_center.y - hi.y).max(0.0);
        let toe_to_box = dx.hypot(dy) - g.radius;
        let (glo, ghi) = g.corridor();
        let bx = (lo.x - ghi.x).max(glo.x - hi.x);
        toe_to_box.min(bx)
    };
    toe_gap.min(rect_gap(a, b)).min(rect_gap(b, a))
}

/// Validates the parameters and returns the foot-with-fingers spec.
pub fn make_foot_fingers(alpha: f64, beta: f64, m_max: u32, r0: f64, decay: f64) -> Result<DomainSpec> {
    let params = FootFingersParams {
        alpha,
        beta,
        m_max,
        r0,
        decay,
    };
    foot_layout(&params)?;
    Ok(DomainSpec::FootFingers(params))
}

/// Tooth segments of the comb: `x = 2^-j`, `0 <= y <= 1/2`.
pub fn comb_teeth(teeth: u32) -> Vec<(Point2, Point2)> {
    (1..=teeth)
        .map(|j| {
            let x = 0.5f64.powi(j as i32);
            (Point2::new(x, 0.0), Point2::new(x, 0.5))
        })
        .collect()
}
