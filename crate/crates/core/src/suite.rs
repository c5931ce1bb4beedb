//! Diagnostic suites with pinned grid parameters.
//!
//! Each suite compiles a fixed domain, builds its grid from the shipped
//! `suites.toml` and runs a fixed list of probes. Reports are plain data, so
//! identical configurations serialize to identical bytes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::{
    geometric_scales, gromov_product_boundary_probe, loop_probe, visibility_probe, GromovBoundaryReport, LoopReport,
    Verdict, VisibilityReport,
};
use crate::conditions::{john_center_probe, qhbc_fit, JohnReport, QhbcFit};
use crate::domain::{compile, Domain, DomainSpec, FootFingersParams};
use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::graph::{build_grid, GridGraph, GridParams};
use crate::hyperbolic::{
    bh_quasigeodesic_check, compare_metrics_disk, hyp_distance_disk, hyp_geodesic_disk, hyp_length,
    HypNormalization,
};
use crate::path::check_lower_bound;

/// The shipped suite configuration.
pub const SUITES_TOML: &str = include_str!("../suites.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteName {
    Example8,
    DiskReference,
    Comb,
    Slit,
}

impl SuiteName {
    pub const ALL: [SuiteName; 4] = [SuiteName::Example8, SuiteName::DiskReference, SuiteName::Comb, SuiteName::Slit];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Example8 => "example8",
            SuiteName::DiskReference => "disk_reference",
            SuiteName::Comb => "comb",
            SuiteName::Slit => "slit",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Usage(format!("unknown suite '{s}' (expected example8, disk_reference, comb or slit)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScaleRange {
    pub base: f64,
    pub from: i32,
    pub to: i32,
}

impl ScaleRange {
    pub fn scales(&self) -> Vec<f64> {
        geometric_scales(self.base, self.from, self.to)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Example8Config {
    pub h: f64,
    pub layers: u32,
    pub seed: u64,
    pub foot: FootFingersParams,
    pub x0: String,
    pub john_scales: Vec<f64>,
    pub qhbc_samples: usize,
    pub toe_bound_slack: f64,
    pub visibility: [String; 2],
    pub visibility_scales: ScaleRange,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskReferenceConfig {
    pub h: f64,
    pub layers: u32,
    pub seed: u64,
    pub radii: Vec<f64>,
    pub radial_tolerance: f64,
    pub geodesic_points: usize,
    pub diameter: [Point2; 2],
    pub diameter_tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CombConfig {
    pub h: f64,
    pub layers: u32,
    pub seed: u64,
    pub teeth: u32,
    pub x0: Point2,
    pub anchors: [String; 2],
    pub scales: ScaleRange,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlitConfig {
    pub h: f64,
    pub layers: u32,
    pub seed: u64,
    pub x0: Point2,
    pub visibility: [String; 2],
    pub visibility_scales: ScaleRange,
    pub loop_anchor: String,
    pub loop_arcs: [Point2; 2],
    pub loop_scales: ScaleRange,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub example8: Example8Config,
    pub disk_reference: DiskReferenceConfig,
    pub comb: CombConfig,
    pub slit: SlitConfig,
}

impl SuiteConfig {
    pub fn shipped() -> SuiteConfig {
        Self::from_toml(SUITES_TOML).expect("shipped suites.toml is valid")
    }

    pub fn from_toml(text: &str) -> Result<SuiteConfig> {
        toml::from_str(text).map_err(|e| Error::parse("suites.toml", e.message().to_string()))
    }
}

/// Command-line overrides of the pinned values.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SuiteOverrides {
    pub h: Option<f64>,
    pub layers: Option<u32>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSummary {
    pub h: f64,
    pub layers: u32,
    pub nodes: usize,
    pub edges: usize,
    pub components: usize,
    pub warnings: Vec<String>,
}

impl GridSummary {
    fn of(g: &GridGraph) -> GridSummary {
        GridSummary {
            h: g.params().h,
            layers: g.params().boundary_layer,
            nodes: g.node_count(),
            edges: g.edge_count(),
            components: g.component_count(),
            warnings: g.warnings().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: SuiteName,
    pub seed: u64,
    pub grid: GridSummary,
    pub verdicts: BTreeMap<String, String>,
    pub details: SuiteDetails,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum SuiteDetails {
    Example8(Box<Example8Details>),
    DiskReference(DiskReferenceDetails),
    Comb(Box<CombDetails>),
    Slit(Box<SlitDetails>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToeDistance {
    pub m: u32,
    pub point: Point2,
    pub delta: f64,
    pub k: f64,
    /// `slack · δ^{−(α−β)}`.
    pub bound: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Example8Details {
    pub foot: FootFingersParams,
    pub toe_distances: Vec<ToeDistance>,
    pub john: JohnReport,
    pub qhbc: QhbcFit,
    pub visibility: VisibilityReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub pass: bool,
}

impl Check {
    fn new(name: impl Into<String>, value: f64, lower: f64, upper: f64) -> Check {
        Check {
            name: name.into(),
            value,
            lower,
            upper,
            pass: lower <= value && value <= upper,
        }
    }

    fn relative(name: impl Into<String>, value: f64, expected: f64, tol: f64) -> Check {
        Check::new(name, value, expected * (1.0 - tol), expected * (1.0 + tol))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiskReferenceDetails {
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CombDetails {
    pub teeth: u32,
    pub visibility: VisibilityReport,
    pub gromov_boundary: GromovBoundaryReport,
    /// Not visible exactly when the products are unbounded.
    pub verdicts_agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlitDetails {
    pub visibility: VisibilityReport,
    #[serde(rename = "loop")]
    pub loop_report: LoopReport,
}

fn label<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(e) => e.to_string(),
    }
}

fn grid(domain: &Domain, h: f64, layers: u32, o: &SuiteOverrides) -> Result<GridGraph> {
    build_grid(domain, GridParams::new(o.h.unwrap_or(h), o.layers.unwrap_or(layers)))
}

fn check_series(d: &Domain, endpoints: &[[Point2; 2]], distances: &[f64]) -> Result<()> {
    for (e, &k) in endpoints.iter().zip(distances) {
        check_lower_bound(d, e[0], e[1], k)?;
    }
    Ok(())
}

/// Runs a suite from the shipped configuration.
pub fn run_suite(name: SuiteName, overrides: &SuiteOverrides) -> Result<SuiteReport> {
    run_suite_with(&SuiteConfig::shipped(), name, overrides)
}

pub fn run_suite_with(config: &SuiteConfig, name: SuiteName, overrides: &SuiteOverrides) -> Result<SuiteReport> {
    match name {
        SuiteName::Example8 => example8(&config.example8, overrides),
        SuiteName::DiskReference => disk_reference(&config.disk_reference, overrides),
        SuiteName::Comb => comb(&config.comb, overrides),
        SuiteName::Slit => slit(&config.slit, overrides),
    }
}

fn example8(c: &Example8Config, o: &SuiteOverrides) -> Result<SuiteReport> {
    let seed = o.seed.unwrap_or(c.seed);
    let d = compile(&DomainSpec::FootFingers(c.foot))?;
    let g = grid(&d, c.h, c.layers, o)?;
    let x0 = d.boundary_anchor(&c.x0)?.point;
    let field = g.dist_field(x0)?;
    let exponent = c.foot.alpha - c.foot.beta;
    let mut toes = Vec::new();
    let mut targets = Vec::new();
    for m in 1..=c.foot.m_max {
        let center = d.boundary_anchor(&format!("toe_center_{m}"))?.point;
        let k = field.distance_to(&g, center)?;
        check_lower_bound(&d, x0, center, k)?;
        let delta = d.boundary_distance(center)?;
        let bound = c.toe_bound_slack * delta.powf(-exponent);
        toes.push(ToeDistance {
            m,
            point: center,
            delta,
            k,
            bound,
            holds: k >= bound,
        });
        targets.push(d.boundary_anchor(&format!("toe_bottom_{m}"))?.clone());
    }
    let john = john_center_probe(&g, x0, &targets, &c.john_scales)?;
    let qhbc = qhbc_fit(&g, x0, c.qhbc_samples, seed)?;
    let (p, q) = (d.boundary_anchor(&c.visibility[0])?, d.boundary_anchor(&c.visibility[1])?);
    let visibility = visibility_probe(&g, p, q, x0, &c.visibility_scales.scales())?;
    check_series(&d, &visibility.endpoints, &visibility.pair_distances)?;
    let verdicts = BTreeMap::from([
        ("john".to_string(), label(&john.verdict)),
        ("qhbc".to_string(), label(&qhbc.verdict)),
        ("visibility".to_string(), label(&visibility.verdict)),
    ]);
    Ok(SuiteReport {
        suite: SuiteName::Example8,
        seed,
        grid: GridSummary::of(&g),
        verdicts,
        details: SuiteDetails::Example8(Box::new(Example8Details {
            foot: c.foot,
            toe_distances: toes,
            john,
            qhbc,
            visibility,
        })),
    })
}

fn disk_reference(c: &DiskReferenceConfig, o: &SuiteOverrides) -> Result<SuiteReport> {
    let seed = o.seed.unwrap_or(c.seed);
    let d = compile(&DomainSpec::unit_disk())?;
    let g = grid(&d, c.h, c.layers, o)?;
    let n = HypNormalization::MinusOne;
    let origin = Point2::ORIGIN;
    let mut checks = Vec::new();
    for &r in &c.radii {
        let z = Point2::new(r, 0.0);
        let k = g.qh_distance(origin, z)?;
        check_lower_bound(&d, origin, z, k)?;
        checks.push(Check::relative(format!("radial_k_{r}"), k, (1.0 / (1.0 - r)).ln(), c.radial_tolerance));
    }
    for (r, h_exact) in [(0.5, 3f64.ln()), (0.9, 19f64.ln())] {
        let z = Point2::new(r, 0.0);
        let h = hyp_distance_disk(origin, z, n)?;
        checks.push(Check::relative(format!("hyp_distance_{r}"), h, h_exact, 1e-12));
        let cmp = compare_metrics_disk(&g, &[(origin, z)], n)?;
        let row = &cmp.rows[0];
        checks.push(Check::new(
            format!("ball_comparison_{r}"),
            row.h,
            row.k * (1.0 - cmp.slack),
            2.0 * row.k * (1.0 + cmp.slack),
        ));
    }
    let (a, b) = (Point2::new(0.9, 0.0), Point2::new(0.0, 0.9));
    let arc = hyp_length(&hyp_geodesic_disk(a, b, c.geodesic_points)?, n)?;
    checks.push(Check::relative("hyp_geodesic_length", arc, hyp_distance_disk(a, b, n)?, 1e-3));
    let [x, y] = c.diameter;
    let bh = bh_quasigeodesic_check(&g, &[(x, y)], n)?;
    let tol = c.diameter_tolerance;
    checks.push(Check::new("diameter_k_ratio", bh.k_hat, 1.0 - tol, 1.0 + tol));
    checks.push(Check::new("diameter_h_ratio", bh.h_hat, 1.0 - tol, 1.0 + tol));
    let all = checks.iter().all(|c| c.pass);
    Ok(SuiteReport {
        suite: SuiteName::DiskReference,
        seed,
        grid: GridSummary::of(&g),
        verdicts: BTreeMap::from([("closed_forms".to_string(), if all { "pass" } else { "fail" }.to_string())]),
        details: SuiteDetails::DiskReference(DiskReferenceDetails { checks }),
    })
}

fn comb(c: &CombConfig, o: &SuiteOverrides) -> Result<SuiteReport> {
    let seed = o.seed.unwrap_or(c.seed);
    let d = compile(&DomainSpec::Comb { teeth: c.teeth })?;
    let g = grid(&d, c.h, c.layers, o)?;
    let (p, q) = (d.boundary_anchor(&c.anchors[0])?, d.boundary_anchor(&c.anchors[1])?);
    let scales = c.scales.scales();
    let visibility = visibility_probe(&g, p, q, c.x0, &scales)?;
    check_series(&d, &visibility.endpoints, &visibility.pair_distances)?;
    let gromov_boundary = gromov_product_boundary_probe(&g, p, q, c.x0, &scales)?;
    let unbounded = gromov_boundary.verdict == crate::analysis::Boundedness::Unbounded;
    let verdicts_agree = match visibility.verdict {
        Verdict::NotVisible => unbounded,
        Verdict::Visible => !unbounded,
        Verdict::Inconclusive => false,
    };
    let verdicts = BTreeMap::from([
        ("gromov_boundary".to_string(), label(&gromov_boundary.verdict)),
        ("visibility".to_string(), label(&visibility.verdict)),
    ]);
    Ok(SuiteReport {
        suite: SuiteName::Comb,
        seed,
        grid: GridSummary::of(&g),
        verdicts,
        details: SuiteDetails::Comb(Box::new(CombDetails {
            teeth: c.teeth,
            visibility,
            gromov_boundary,
            verdicts_agree,
        })),
    })
}

fn slit(c: &SlitConfig, o: &SuiteOverrides) -> Result<SuiteReport> {
    let seed = o.seed.unwrap_or(c.seed);
    let d = compile(&DomainSpec::slit_disk())?;
    let g = grid(&d, c.h, c.layers, o)?;
    let (p, q) = (d.boundary_anchor(&c.visibility[0])?, d.boundary_anchor(&c.visibility[1])?);
    let visibility = visibility_probe(&g, p, q, c.x0, &c.visibility_scales.scales())?;
    check_series(&d, &visibility.endpoints, &visibility.pair_distances)?;
    let anchor = d.boundary_anchor(&c.loop_anchor)?;
    let loop_report = loop_probe(&g, anchor, c.x0, &c.loop_scales.scales(), c.loop_arcs)?;
    check_series(&d, &loop_report.endpoints, &loop_report.pair_distances)?;
    let verdicts = BTreeMap::from([
        ("loop".to_string(), label(&loop_report.verdict)),
        ("visibility".to_string(), label(&visibility.verdict)),
    ]);
    Ok(SuiteReport {
        suite: SuiteName::Slit,
        seed,
        grid: GridSummary::of(&g),
        verdicts,
        details: SuiteDetails::Slit(Box::new(SlitDetails { visibility, loop_report })),
    })
}

/// Pretty JSON of a report, newline terminated.
pub fn report_json(report: &SuiteReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_config_parses() {
        let c = SuiteConfig::shipped();
        assert_eq!(c.example8.foot, FootFingersParams::default());
        assert_eq!(c.comb.scales.scales().len(), 5);
        assert_eq!(c.slit.loop_arcs[1], Point2::new(0.0, -1.0));
    }

    #[test]
    fn names_round_trip() {
        for n in SuiteName::ALL {
            assert_eq!(n.as_str().parse::<SuiteName>().unwrap(), n);
        }
        assert!(matches!("example9".parse::<SuiteName>(), Err(Error::Usage(_))));
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = SUITES_TOML.replace("teeth = 8", "teeth = 8\nbristles = 3");
        assert!(matches!(SuiteConfig::from_toml(&text), Err(Error::Parse { .. })));
    }
}
