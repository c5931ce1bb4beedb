//! Growth functions `φ`, the dominance check `k(x0,x) ≤ φ(δ(x0)/δ(x))` and
//! the integrability condition `∫_0^∞ dt / φ^{-1}(t) < ∞`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::graph::GridGraph;
use crate::sampling;

/// Relative tolerance of the bisection inverse.
pub const INVERSE_RTOL: f64 = 1e-10;
/// Allowed negative margin, absorbing the graph's over-estimate of `k`.
pub const GROWTH_SLACK: f64 = -0.2;
const QUAD_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum GrowthFunction {
    /// `φ(t) = A log t + B`.
    LogAffine { a: f64, b: f64 },
    /// `φ(t) = A t^s`.
    Power { a: f64, s: f64 },
    /// Piecewise-linear interpolation of strictly increasing knots `(t, φ)`.
    Table { knots: Vec<(f64, f64)> },
}

impl GrowthFunction {
    pub fn log_affine(a: f64, b: f64) -> Result<Self> {
        let f = GrowthFunction::LogAffine { a, b };
        f.validate()?;
        Ok(f)
    }

    pub fn power(a: f64, s: f64) -> Result<Self> {
        let f = GrowthFunction::Power { a, s };
        f.validate()?;
        Ok(f)
    }

    pub fn table(knots: Vec<(f64, f64)>) -> Result<Self> {
        let f = GrowthFunction::Table { knots };
        f.validate()?;
        Ok(f)
    }

    /// Strictly increasing table dominating the samples `(t, k)`.
    pub fn upper_envelope(samples: &[(f64, f64)]) -> Result<Self> {
        let mut pts: Vec<(f64, f64)> = samples.iter().copied().filter(|(t, k)| t.is_finite() && k.is_finite()).collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut knots: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
        for (t, k) in pts {
            match knots.last_mut() {
                Some(last) if last.0 == t => last.1 = last.1.max(k),
                _ => knots.push((t, k)),
            }
        }
        let mut level = f64::NEG_INFINITY;
        for knot in &mut knots {
            level = if knot.1 > level { knot.1 } else { level + 1e-9 * (1.0 + level.abs()) };
            knot.1 = level;
        }
        GrowthFunction::table(knots)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            GrowthFunction::LogAffine { a, b } => {
                if !(a.is_finite() && *a > 0.0 && b.is_finite()) {
                    return Err(Error::Function(format!("log_affine needs A > 0 and finite B (got A={a}, B={b})")));
                }
            }
            GrowthFunction::Power { a, s } => {
                if !(a.is_finite() && *a > 0.0 && s.is_finite() && *s > 0.0) {
                    return Err(Error::Function(format!("power needs A > 0 and s > 0 (got A={a}, s={s})")));
                }
            }
            GrowthFunction::Table { knots } => {
                if knots.len() < 2 {
                    return Err(Error::Function("table needs at least two knots".into()));
                }
                if knots.iter().any(|(t, v)| !(t.is_finite() && v.is_finite() && *t > 0.0)) {
                    return Err(Error::Function("table knots must be finite with t > 0".into()));
                }
                if knots.windows(2).any(|w| !(w[1].0 > w[0].0 && w[1].1 > w[0].1)) {
                    return Err(Error::Function("table must be strictly increasing in t and φ".into()));
                }
            }
        }
        Ok(())
    }

    /// Interval of `t` where `φ` is defined.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            GrowthFunction::Table { knots } => (knots[0].0, knots[knots.len() - 1].0),
            _ => (0.0, f64::INFINITY),
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) || t.is_nan() {
            return Err(Error::Function(format!("φ is defined for t > 0 (got {t})")));
        }
        Ok(match self {
            GrowthFunction::LogAffine { a, b } => a * t.ln() + b,
            GrowthFunction::Power { a, s } => a * t.powf(*s),
            GrowthFunction::Table { knots } => {
                let (lo, hi) = self.domain();
                if t < lo || t > hi {
                    return Err(Error::Function(format!("t = {t} is outside the table range [{lo}, {hi}]")));
                }
                let k = knots.partition_point(|(x, _)| *x < t).max(1);
                let (t0, v0) = knots[k - 1];
                let (t1, v1) = knots[k];
                v0 + (v1 - v0) * (t - t0) / (t1 - t0)
            }
        })
    }

    /// `φ^{-1}(y)` by bisection.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        if !y.is_finite() {
            return Err(Error::Function(format!("cannot invert φ at {y}")));
        }
        let (mut lo, mut hi) = match self {
            GrowthFunction::Table { knots } => {
                let (first, last) = (knots[0], knots[knots.len() - 1]);
                if y < first.1 || y > last.1 {
                    return Err(Error::Function(format!("{y} is outside the table's range")));
                }
                (first.0, last.0)
            }
            _ => {
                let (mut lo, mut hi) = (0.5f64, 2.0f64);
                while self.eval(lo)? > y {
                    lo *= 0.5;
                    if lo < 1e-300 {
                        return Err(Error::Function(format!("φ^-1({y}) underflows")));
                    }
                }
                while self.eval(hi)? < y {
                    hi *= 2.0;
                    if hi > 1e300 {
                        return Err(Error::Function(format!("φ^-1({y}) overflows")));
                    }
                }
                (lo, hi)
            }
        };
        for _ in 0..2000 {
            if hi - lo <= INVERSE_RTOL * hi {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.eval(mid)? < y {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Checks strict monotonicity on `t = 2^i` within the domain.
    pub fn check_ladder(&self) -> Result<()> {
        let (lo, hi) = self.domain();
        let mut ladder: Vec<f64> = (-20..=60).map(|i| 2f64.powi(i)).filter(|t| *t >= lo && *t <= hi).collect();
        if let GrowthFunction::Table { knots } = self {
            ladder.extend(knots.iter().map(|k| k.0));
            ladder.sort_by(f64::total_cmp);
            ladder.dedup();
        }
        let mut prev = f64::NEG_INFINITY;
        for t in ladder {
            let v = self.eval(t)?;
            if !(v > prev) {
                return Err(Error::Function(format!("φ is not strictly increasing at t = {t}")));
            }
            prev = v;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        match self {
            GrowthFunction::LogAffine { a, b } => json!({"family": "log_affine", "A": a, "B": b}),
            GrowthFunction::Power { a, s } => json!({"family": "power", "A": a, "s": s}),
            GrowthFunction::Table { knots } => {
                json!({"family": "table", "points": knots.iter().map(|(t, v)| [*t, *v]).collect::<Vec<_>>()})
            }
        }
    }
}

impl Serialize for GrowthFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

fn number(obj: &Map<String, Value>, key: &str) -> Result<f64> {
    let v = obj.get(key).ok_or_else(|| Error::parse(format!("$.{key}"), "missing field"))?;
    v.as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::parse(format!("$.{key}"), "expected a finite number"))
}

fn only_keys(obj: &Map<String, Value>, allowed: &[&str]) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::parse(format!("$.{k}"), "unknown field")),
        None => Ok(()),
    }
}

/// Parses `{"family":"log_affine","A":2,"B":1}`, `{"family":"power","A":1,"s":1}`
/// or `{"family":"table","points":[[t, φ], ...]}`.
pub fn parse_growth_function(text: &str) -> Result<GrowthFunction> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::parse("$", e.to_string()))?;
    let obj = value.as_object().ok_or_else(|| Error::parse("$", "expected an object"))?;
    let family = obj
        .get("family")
        .ok_or_else(|| Error::parse("$.family", "missing field"))?
        .as_str()
        .ok_or_else(|| Error::parse("$.family", "expected a string"))?;
    let f = match family {
        "log_affine" => {
            only_keys(obj, &["family", "A", "B"])?;
            GrowthFunction::LogAffine {
                a: number(obj, "A")?,
                b: number(obj, "B")?,
            }
        }
        "power" => {
            only_keys(obj, &["family", "A", "s"])?;
            GrowthFunction::Power {
                a: number(obj, "A")?,
                s: number(obj, "s")?,
            }
        }
        "table" => {
            only_keys(obj, &["family", "points"])?;
            let pts = obj
                .get("points")
                .ok_or_else(|| Error::parse("$.points", "missing field"))?
                .as_array()
                .ok_or_else(|| Error::parse("$.points", "expected an array"))?;
            let knots = pts
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let pair = p
                        .as_array()
                        .filter(|a| a.len() == 2)
                        .ok_or_else(|| Error::parse(format!("$.points[{i}]"), "expected [t, phi]"))?;
                    let get = |j: usize| {
                        pair[j]
                            .as_f64()
                            .filter(|x| x.is_finite())
                            .ok_or_else(|| Error::parse(format!("$.points[{i}][{j}]"), "expected a finite number"))
                    };
                    Ok((get(0)?, get(1)?))
                })
                .collect::<Result<Vec<_>>>()?;
            GrowthFunction::Table { knots }
        }
        other => return Err(Error::parse("$.family", format!("unknown family '{other}'"))),
    };
    f.validate()?;
    Ok(f)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    pub x0: Point2,
    pub phi: GrowthFunction,
    pub holds: bool,
    pub worst_margin: f64,
    pub worst_point: Point2,
    /// `(δ(x0)/δ(x), k(x0, x))` per sampled node.
    pub samples: Vec<(f64, f64)>,
}

/// Seeded node sample from the component of `x0` with `(δ(x0)/δ(x), k(x0,x))`,
/// stratified by unit bins of `log(δ(x0)/δ(x))`. Each stratum receives an
/// equal share of `n_samples`, drawn without replacement.
pub fn depth_samples(g: &GridGraph, x0: Point2, n_samples: usize, seed: u64) -> Result<Vec<(u32, f64, f64)>> {
    if n_samples == 0 {
        return Err(Error::Sample("n_samples must be at least 1".into()));
    }
    let field = g.dist_field(x0)?;
    let delta0 = field.source().delta;
    let comp = g.component_of(field.source_node());
    let mut strata: BTreeMap<i64, Vec<u32>> = BTreeMap::new();
    for u in 0..g.node_count() as u32 {
        if g.component_of(u) == comp {
            let s = (delta0 / g.node(u).delta).ln();
            strata.entry(s.floor() as i64).or_default().push(u);
        }
    }
    let quota = n_samples.div_ceil(strata.len().max(1));
    let mut rng = sampling::rng(seed);
    let mut out = Vec::with_capacity(quota * strata.len());
    for nodes in strata.values() {
        for i in rand::seq::index::sample(&mut rng, nodes.len(), quota.min(nodes.len())) {
            let u = nodes[i];
            out.push((u, delta0 / g.node(u).delta, field.value(u)));
        }
    }
    Ok(out)
}

/// Checks `k(x0, x) ≤ φ(δ(x0)/δ(x))` on sampled nodes.
pub fn growth_check(g: &GridGraph, x0: Point2, phi: &GrowthFunction, n_samples: usize, seed: u64) -> Result<GrowthReport> {
    phi.validate()?;
    phi.check_ladder()?;
    let samples = depth_samples(g, x0, n_samples, seed)?;
    let mut worst = (f64::INFINITY, x0);
    for &(u, t, k) in &samples {
        let margin = phi.eval(t)? - k;
        if margin < worst.0 {
            worst = (margin, g.node(u).point);
        }
    }
    Ok(GrowthReport {
        x0,
        phi: phi.clone(),
        holds: worst.0 > GROWTH_SLACK,
        worst_margin: worst.0,
        worst_point: worst.1,
        samples: samples.iter().map(|&(_, t, k)| (t, k)).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegralVerdict {
    Converges,
    Diverges,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegralReport {
    pub verdict: IntegralVerdict,
    /// `∫ dt / φ^{-1}(t)` over `[0, t_max]` (the covered part for tables).
    pub head: f64,
    /// Bound on the integral over `[t_max, ∞)`; infinite when it diverges.
    pub tail_estimate: f64,
    pub t_max: f64,
}

impl IntegralReport {
    pub fn converges(&self) -> bool {
        self.verdict == IntegralVerdict::Converges
    }
}

/// Adaptive Simpson quadrature.
fn simpson(f: &dyn Fn(f64) -> Result<f64>, a: f64, b: f64) -> Result<f64> {
    #[allow(clippy::too_many_arguments)]
    fn rec(f: &dyn Fn(f64) -> Result<f64>, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> Result<f64> {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm)?, f(rm)?);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            return Ok(left + right + (left + right - whole) / 15.0);
        }
        Ok(rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)? + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
    }
    if b <= a {
        return Ok(0.0);
    }
    let (fa, fm, fb) = (f(a)?, f(0.5 * (a + b))?, f(b)?);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, QUAD_RTOL * whole.abs().max(1e-300), 40)
}

/// Decides `∫_0^∞ dt / φ^{-1}(t) < ∞` from quadrature up to `t_max` and the
/// family's analytic tail.
pub fn integral_condition(phi: &GrowthFunction, t_max: f64) -> Result<IntegralReport> {
    phi.validate()?;
    if !(t_max >= 10.0) || !t_max.is_finite() {
        return Err(Error::Argument(format!("t_max must be at least 10 (got {t_max})")));
    }
    let integrand = |t: f64| Ok(1.0 / phi.inverse(t)?);
    Ok(match phi {
        GrowthFunction::LogAffine { a, b } => {
            // φ^{-1}(t) = exp((t − B)/A), so the tail is A·exp(−(t_max − B)/A)
            let head = simpson(&integrand, 0.0, t_max)?;
            IntegralReport {
                verdict: IntegralVerdict::Converges,
                head,
                tail_estimate: a * (-(t_max - b) / a).exp(),
                t_max,
            }
        }
        GrowthFunction::Power { a, s } => {
            // 1/φ^{-1}(t) = (A/t)^{1/s}: integrable at 0 iff s > 1, at ∞ iff s < 1
            let p = 1.0 / s;
            let head = if p < 1.0 {
                a.powf(p) * t_max.powf(1.0 - p) / (1.0 - p)
            } else {
                f64::INFINITY
            };
            IntegralReport {
                verdict: IntegralVerdict::Diverges,
                head,
                tail_estimate: if p > 1.0 { a.powf(p) * t_max.powf(1.0 - p) / (p - 1.0) } else { f64::INFINITY },
                t_max,
            }
        }
        GrowthFunction::Table { knots } => {
            let (lo, hi) = (knots[0].1.max(0.0), knots[knots.len() - 1].1.min(t_max));
            let head = if hi > lo { simpson(&integrand, lo, hi)? } else { 0.0 };
            IntegralReport {
                verdict: IntegralVerdict::Inconclusive,
                head,
                tail_estimate: f64::NAN,
                t_max,
            }
        }
    })
}
