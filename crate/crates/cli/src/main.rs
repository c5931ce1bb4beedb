#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qhgeo::analysis::{geometric_scales, visibility_probe, Verdict, VisibilityReport};
use qhgeo::graph::{build_grid, GridGraph, GridParams};
use qhgeo::hyperbolic::{hyp_cumulative, HypNormalization};
use qhgeo::path::{check_lower_bound, format_sig, geodesic_csv, qh_lower_bound};
use qhgeo::suite::{report_json, run_suite, SuiteName, SuiteOverrides};
use qhgeo::{compile, parse_domain, parse_point, Domain, DomainSpec, Error, Point2};

/// Relative agreement required between a printed geodesic and its distance,
/// on top of the rounding of the 9 printed significant digits.
const CSV_CONSISTENCY: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "qhgeo", version, about = "Quasihyperbolic distances, geodesics and diagnostic suites")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunConfig {
    /// Domain JSON file, or builtin:disk|square|slit|comb|foot.
    #[arg(long, global = true)]
    domain: Option<String>,
    /// Base grid cell size.
    #[arg(long, global = true)]
    h: Option<f64>,
    /// Levels of grid refinement near the boundary.
    #[arg(long, global = true)]
    layers: Option<u32>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Exit with status 4 when a verdict is inconclusive.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Quasihyperbolic distance between two points.
    Dist {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Quasihyperbolic geodesic polyline between two points.
    Geodesic {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        /// Add a hyperbolic arc-length column (unit disk only).
        #[arg(long)]
        hyp: bool,
    },
    /// Visibility probe between two named boundary anchors.
    Visibility {
        p_anchor: String,
        q_anchor: String,
        /// Probe scales; defaults to 2^-1 .. 2^-6.
        scales: Vec<f64>,
        /// Base point, defaults to the domain's center anchor.
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<String>,
    },
    /// Run a pinned diagnostic suite: example8, disk_reference, comb or slit.
    Suite { name: String },
}

const DEFAULT_H: f64 = 1.0 / 64.0;
const DEFAULT_LAYERS: u32 = 3;
const DEFAULT_SEED: u64 = 42;

enum Failure {
    Lib(Error),
    Inconclusive,
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Unreachable(_) => 3,
        Error::Invariant(_) => 5,
        _ => 2,
    }
}

fn load_domain(config: &RunConfig) -> Result<Domain, Error> {
    let name = config
        .domain
        .as_deref()
        .ok_or_else(|| Error::Usage("--domain is required for this command".into()))?;
    let spec = match name.strip_prefix("builtin:") {
        Some("disk") => DomainSpec::unit_disk(),
        Some("square") => DomainSpec::unit_square(),
        Some("slit") => DomainSpec::slit_disk(),
        Some("comb") => DomainSpec::Comb { teeth: 8 },
        Some("foot") => DomainSpec::FootFingers(Default::default()),
        Some(other) => return Err(Error::Usage(format!("unknown builtin domain '{other}'"))),
        None => {
            let text = fs::read_to_string(name).map_err(|e| Error::Usage(format!("cannot read {name}: {e}")))?;
            parse_domain(&text)?
        }
    };
    compile(&spec)
}

fn build(config: &RunConfig, domain: &Domain) -> Result<GridGraph, Error> {
    let h = config.h.unwrap_or(DEFAULT_H);
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::Usage(format!("--h must be positive (got {h})")));
    }
    let g = build_grid(domain, GridParams::new(h, config.layers.unwrap_or(DEFAULT_LAYERS)))?;
    for w in g.warnings() {
        eprintln!("warning: {w}");
    }
    Ok(g)
}

fn emit(config: &RunConfig, text: &str) -> Result<(), Failure> {
    match &config.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Io(e.to_string()))
        }
    }
}

fn json_line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct DistReport {
    k: f64,
    lower_bound_qh_eq_1: f64,
    bound_satisfied: bool,
}

fn cmd_dist(config: &RunConfig, x: &str, y: &str) -> Result<(), Failure> {
    let (x, y) = (parse_point(x)?, parse_point(y)?);
    let d = load_domain(config)?;
    let g = build(config, &d)?;
    let k = g.qh_distance(x, y)?;
    let bound = qh_lower_bound(&d, x, y)?;
    let report = DistReport {
        k,
        lower_bound_qh_eq_1: bound,
        bound_satisfied: k >= bound - qhgeo::path::LOWER_BOUND_TOL,
    };
    let text = match config.format.unwrap_or(Format::Json) {
        Format::Json => json_line(&report),
        Format::Csv => format!(
            "k,lower_bound_qh_eq_1,bound_satisfied\n{},{},{}\n",
            format_sig(k, 12),
            format_sig(bound, 12),
            report.bound_satisfied
        ),
    };
    emit(config, &text)?;
    check_lower_bound(&d, x, y, k)?;
    Ok(())
}

#[derive(Serialize)]
struct GeodesicReport {
    k: f64,
    euclidean_length: f64,
    points: Vec<Point2>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hyp_cum_length: Option<Vec<f64>>,
}

fn cmd_geodesic(config: &RunConfig, x: &str, y: &str, hyp: bool) -> Result<(), Failure> {
    let (x, y) = (parse_point(x)?, parse_point(y)?);
    let d = load_domain(config)?;
    let is_unit_disk = matches!(d.spec(), DomainSpec::Disk { center, radius } if *center == Point2::ORIGIN && *radius == 1.0);
    if hyp && !is_unit_disk {
        return Err(Error::Usage("--hyp needs the unit disk domain".into()).into());
    }
    let g = build(config, &d)?;
    let path = g.qh_geodesic(x, y)?;
    let k = path.graph_qh_length().unwrap_or(0.0);
    check_lower_bound(&d, x, y, k)?;
    let hyp_cum = if hyp {
        Some(hyp_cumulative(&path, HypNormalization::MinusOne)?)
    } else {
        None
    };
    let csv = geodesic_csv(&d, &path, hyp_cum.as_deref());
    let last_qh: f64 = csv
        .lines()
        .last()
        .and_then(|l| l.split(',').nth(3))
        .and_then(|v| v.parse().ok())
        .unwrap_or(f64::NAN);
    let rounding = if k > 0.0 { 0.5 * 10f64.powi(k.log10().floor() as i32 - 8) } else { 0.0 };
    if !((last_qh - k).abs() <= rounding + CSV_CONSISTENCY * k.max(1.0)) {
        return Err(Error::Invariant(format!("geodesic length {last_qh} disagrees with k = {k}")).into());
    }
    let text = match config.format.unwrap_or(Format::Csv) {
        Format::Csv => csv,
        Format::Json => json_line(&GeodesicReport {
            k,
            euclidean_length: path.euclidean_length(),
            points: path.points().to_vec(),
            hyp_cum_length: hyp_cum,
        }),
    };
    emit(config, &text)
}

fn visibility_csv(r: &VisibilityReport) -> String {
    let mut out = String::from("scale,m,clearance,gromov_product,pair_distance\n");
    for i in 0..r.scales.len() {
        let row = [r.scales[i], r.m[i], r.clearance[i], r.gromov_products[i], r.pair_distances[i]]
            .map(|v| format_sig(v, 9))
            .join(",");
        out.push_str(&row);
        out.push('\n');
    }
    out
}

fn cmd_visibility(
    config: &RunConfig,
    p_anchor: &str,
    q_anchor: &str,
    scales: &[f64],
    x0: Option<&str>,
) -> Result<(), Failure> {
    let d = load_domain(config)?;
    let (p, q) = (d.boundary_anchor(p_anchor)?.clone(), d.boundary_anchor(q_anchor)?.clone());
    let x0 = match x0 {
        Some(s) => parse_point(s)?,
        None => d.boundary_anchor("center")?.point,
    };
    let scales = if scales.is_empty() {
        geometric_scales(0.5, 1, 6)
    } else {
        scales.to_vec()
    };
    let g = build(config, &d)?;
    let report = visibility_probe(&g, &p, &q, x0, &scales)?;
    for (e, &k) in report.endpoints.iter().zip(&report.pair_distances) {
        check_lower_bound(&d, e[0], e[1], k)?;
    }
    let text = match config.format.unwrap_or(Format::Json) {
        Format::Json => json_line(&report),
        Format::Csv => visibility_csv(&report),
    };
    emit(config, &text)?;
    if config.strict && report.verdict == Verdict::Inconclusive {
        return Err(Failure::Inconclusive);
    }
    Ok(())
}

fn cmd_suite(config: &RunConfig, name: &str) -> Result<(), Failure> {
    let name: SuiteName = name.parse()?;
    if config.format == Some(Format::Csv) {
        return Err(Error::Usage("suite reports are JSON only".into()).into());
    }
    let overrides = SuiteOverrides {
        h: config.h,
        layers: config.layers,
        seed: Some(config.seed.unwrap_or(DEFAULT_SEED)),
    };
    let report = run_suite(name, &overrides)?;
    for w in &report.grid.warnings {
        eprintln!("warning: {w}");
    }
    emit(config, &report_json(&report))?;
    if config.strict && report.verdicts.values().any(|v| v == "inconclusive") {
        return Err(Failure::Inconclusive);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let c = &cli.config;
    let result = match &cli.command {
        Command::Dist { x, y } => cmd_dist(c, x, y),
        Command::Geodesic { x, y, hyp } => cmd_geodesic(c, x, y, *hyp),
        Command::Visibility {
            p_anchor,
            q_anchor,
            scales,
            x0,
        } => cmd_visibility(c, p_anchor, q_anchor, scales, x0.as_deref()),
        Command::Suite { name } => cmd_suite(c, name),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Inconclusive) => {
            eprintln!("error: verdict is inconclusive (--strict)");
            ExitCode::from(4)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
