use std::sync::LazyLock;

use proptest::prelude::*;
use qhgeo::analysis::geometric_scales;
use qhgeo::conditions::{
    ball_separation_check, center_cone_constant, cone_arc_constant, gehring_hayman_ratio, growth_check,
    integral_condition, john_center_probe, parse_growth_function, qhbc_fit, ClassVerdict, GrowthFunction,
    IntegralVerdict,
};
use qhgeo::graph::{build_grid, GridGraph, GridParams};
use qhgeo::path::PathPolyline;
use qhgeo::{compile, Anchor, DomainSpec, Error, Point2};

fn graph(spec: DomainSpec, h: f64, layers: u32) -> GridGraph {
    build_grid(&compile(&spec).unwrap(), GridParams::new(h, layers)).unwrap()
}

static DISK: LazyLock<GridGraph> = LazyLock::new(|| graph(DomainSpec::unit_disk(), 1.0 / 64.0, 3));
static SQUARE: LazyLock<GridGraph> = LazyLock::new(|| graph(DomainSpec::unit_square(), 1.0 / 64.0, 3));
static SLIT: LazyLock<GridGraph> = LazyLock::new(|| graph(DomainSpec::slit_disk(), 1.0 / 64.0, 3));

fn polyline(pts: &[(f64, f64)]) -> PathPolyline {
    PathPolyline::new(pts.iter().map(|&(x, y)| Point2::new(x, y)).collect()).unwrap()
}

fn subdivided(path: &PathPolyline, at: &[f64]) -> PathPolyline {
    let mut out = vec![path.first()];
    for (w, &s) in path.points().windows(2).zip(at.iter().cycle()) {
        out.push(w[0].lerp(w[1], s));
        out.push(w[1]);
    }
    PathPolyline::new(out).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cone_constant_ignores_orientation_and_subdivision(
        pts in prop::collection::vec((0.0..0.95f64, 0.0..std::f64::consts::TAU), 2..6),
        cuts in prop::collection::vec(0.05..0.95f64, 1..4),
    ) {
        let points: Vec<Point2> = pts.iter().map(|&(r, t)| Point2::from_polar(r, t)).collect();
        prop_assume!(points.windows(2).all(|w| w[0].dist(w[1]) > 1e-6));
        let path = PathPolyline::new(points).unwrap();
        let d = DISK.domain();
        let b = cone_arc_constant(d, &path).unwrap().b_hat;
        let rev = cone_arc_constant(d, &path.reversed()).unwrap().b_hat;
        let fine = cone_arc_constant(d, &subdivided(&path, &cuts)).unwrap().b_hat;
        prop_assert_eq!(b, rev);
        prop_assert!((b - fine).abs() <= 1e-9 * b.max(1.0), "{} vs {}", b, fine);
    }

    #[test]
    fn log_affine_integrals_converge(a in 0.1..10.0f64, b in -5.0..5.0f64, t_max in 10.0..100.0f64) {
        let r = integral_condition(&GrowthFunction::log_affine(a, b).unwrap(), t_max).unwrap();
        prop_assert_eq!(r.verdict, IntegralVerdict::Converges);
        // ∫_{t_max}^∞ e^{-(t-b)/a} dt = a e^{-(t_max-b)/a}
        prop_assert!(r.tail_estimate <= a * (-(t_max - b) / a).exp() * (1.0 + 1e-9));
    }

    #[test]
    fn power_integrals_diverge(a in 0.1..10.0f64, s in 0.05..1.0f64) {
        let r = integral_condition(&GrowthFunction::power(a, s).unwrap(), 10.0).unwrap();
        prop_assert_eq!(r.verdict, IntegralVerdict::Diverges);
        prop_assert!(!r.converges());
    }

    #[test]
    fn growth_inverse_round_trips(a in 0.1..5.0f64, b in -3.0..3.0f64, t in 1.0..1e6f64) {
        let phi = GrowthFunction::log_affine(a, b).unwrap();
        let back = phi.inverse(phi.eval(t).unwrap()).unwrap();
        prop_assert!((back - t).abs() <= 1e-9 * t);
        let text = phi.to_json().to_string();
        prop_assert_eq!(parse_growth_function(&text).unwrap(), phi);
    }

    #[test]
    fn growth_parser_never_panics(text in "\\PC{0,48}") {
        let _ = parse_growth_function(&text);
    }
}

#[test]
fn cone_constant_examples() {
    let d = DISK.domain();
    let diameter = cone_arc_constant(d, &polyline(&[(-0.9, 0.0), (0.9, 0.0)])).unwrap();
    assert!((diameter.b_hat - 0.9).abs() < 1e-9);
    assert!(diameter.argmax_point.norm() < 1e-9);
    // brute force over discretized z
    let brute = (0..=18000)
        .map(|i| -0.9 + 1.8 * i as f64 / 18000.0)
        .map(|t: f64| (t + 0.9).min(0.9 - t) / (1.0 - t.abs()))
        .fold(0.0, f64::max);
    assert!((diameter.b_hat - brute).abs() < 1e-6);
    let short = cone_arc_constant(d, &polyline(&[(0.0, 0.0), (1e-4, 0.0)])).unwrap();
    assert!(short.b_hat < 1e-4);
    let radial = polyline(&[(0.0, 0.0), (0.9, 0.0)]);
    assert!((center_cone_constant(d, &radial.reversed()).unwrap() - 0.9).abs() < 1e-9);
    assert!((cone_arc_constant(d, &radial).unwrap().b_hat - 9.0 / 11.0).abs() < 1e-9);
    let exits = cone_arc_constant(d, &polyline(&[(0.0, 0.0), (1.5, 0.0)]));
    assert!(matches!(exits, Err(Error::Geometry(_))));
}

#[test]
fn john_probe_on_convex_domains() {
    let g = &*DISK;
    let east = g.domain().boundary_anchor("east").unwrap().clone();
    let r = john_center_probe(g, Point2::ORIGIN, &[east], &geometric_scales(0.5, 2, 6)).unwrap();
    assert!(r.growth[0] <= 1.05, "{:?}", r.targets);
    assert_eq!(r.verdict, ClassVerdict::Holds);

    let g = &*SQUARE;
    let names = ["left_mid", "top_mid", "corner_ll", "corner_ur"];
    let targets: Vec<Anchor> = names.iter().map(|n| g.domain().boundary_anchor(n).unwrap().clone()).collect();
    let r = john_center_probe(g, Point2::new(0.5, 0.5), &targets, &geometric_scales(0.5, 2, 6)).unwrap();
    assert_eq!(r.verdict, ClassVerdict::Holds, "{:?}", r.growth);
}

#[test]
fn qhbc_is_stable_under_basepoint_moves() {
    let g = &*DISK;
    let (x0, x1) = (Point2::ORIGIN, Point2::new(0.3, 0.2));
    let a = qhbc_fit(g, x0, 4000, 42).unwrap();
    let b = qhbc_fit(g, x1, 4000, 42).unwrap();
    assert_eq!(a.verdict, ClassVerdict::Holds);
    assert_eq!(b.verdict, ClassVerdict::Holds);
    assert!((a.slope - b.slope).abs() <= 0.1 * a.slope, "{} vs {}", a.slope, b.slope);
    // rebasing the depth axis shifts it by log(δ(x0)/δ(x1)) as well
    let d = g.domain();
    let rebase = a.slope * (d.distance_to_boundary(x0) / d.distance_to_boundary(x1)).ln().abs();
    let noise = 0.1;
    let shift = (a.intercept - b.intercept).abs();
    assert!(shift <= g.qh_distance(x0, x1).unwrap() + rebase + noise, "{shift}");
    assert!((a.slope - 1.0).abs() < 0.15 && a.intercept.abs() < 0.1, "{} {}", a.slope, a.intercept);
}

#[test]
fn qhbc_implies_growth() {
    for (g, x0) in [(&*DISK, Point2::ORIGIN), (&*SQUARE, Point2::new(0.5, 0.5))] {
        let fit = qhbc_fit(g, x0, 4000, 42).unwrap();
        assert_eq!(fit.verdict, ClassVerdict::Holds);
        let phi = GrowthFunction::log_affine(fit.slope, fit.intercept + 1.0).unwrap();
        assert!(growth_check(g, x0, &phi, 4000, 43).unwrap().holds);
    }
}

#[test]
fn growth_check_examples() {
    let g = &*DISK;
    let generous = growth_check(g, Point2::ORIGIN, &GrowthFunction::log_affine(2.0, 1.0).unwrap(), 2000, 1).unwrap();
    assert!(generous.holds && generous.worst_margin > 0.0);
    let tight = growth_check(g, Point2::ORIGIN, &GrowthFunction::log_affine(0.5, 0.0).unwrap(), 2000, 1).unwrap();
    assert!(!tight.holds);
    // failure sits deeper than δ0 e^-2
    let t = tight.samples.iter().map(|s| s.0).fold(0.0, f64::max);
    assert!(t > 2f64.exp());

    for (g, x0) in [(&*SLIT, Point2::new(-0.5, 0.0)), (&*SQUARE, Point2::new(0.5, 0.5))] {
        let base = growth_check(g, x0, &GrowthFunction::log_affine(2.0, 1.0).unwrap(), 2000, 5).unwrap();
        let own = GrowthFunction::upper_envelope(&base.samples).unwrap();
        let r = growth_check(g, x0, &own, 2000, 5).unwrap();
        assert!(r.holds && r.worst_margin >= 0.0, "{}", r.worst_margin);
    }
}

#[test]
fn integral_examples() {
    let log = integral_condition(&GrowthFunction::log_affine(1.0, 0.0).unwrap(), 20.0).unwrap();
    assert!(log.converges() && log.tail_estimate <= (-20f64).exp() * (1.0 + 1e-9));
    let linear = integral_condition(&GrowthFunction::power(1.0, 1.0).unwrap(), 20.0).unwrap();
    assert!(!linear.converges());
    let r = integral_condition(&GrowthFunction::log_affine(2.0, 1.0).unwrap(), 30.0).unwrap();
    assert!(r.converges());
    assert!((r.tail_estimate - 2.0 * (-(30.0f64 - 1.0) / 2.0).exp()).abs() < 1e-9);
    // whole-line value ∫_0^∞ e^{-(t-1)/2} dt = 2e^{1/2}
    assert!((r.head + r.tail_estimate - 2.0 * 0.5f64.exp()).abs() < 1e-6);
    assert!(integral_condition(&GrowthFunction::log_affine(1.0, 0.0).unwrap(), 5.0).is_err());
}

#[test]
fn growth_function_errors() {
    for text in [
        "{}",
        r#"{"family":"cubic"}"#,
        r#"{"family":"log_affine","A":1}"#,
        r#"{"family":"log_affine","A":-1,"B":0}"#,
        r#"{"family":"power","A":1,"s":1,"extra":0}"#,
        r#"{"family":"table","points":[[1,2],[2,1]]}"#,
        r#"{"family":"table","points":[[1]]}"#,
    ] {
        assert!(parse_growth_function(text).is_err(), "{text}");
    }
    let msg = parse_growth_function(r#"{"family":"table","points":[[1,1],["a",2]]}"#).unwrap_err().to_string();
    assert!(msg.contains("points[1][0]"), "{msg}");
}

#[test]
fn gehring_hayman_examples() {
    let disk = graph(DomainSpec::unit_disk(), 1.0 / 128.0, 1);
    let p = (Point2::new(0.5, 0.0), Point2::new(-0.5, 0.0));
    let r = gehring_hayman_ratio(&disk, &[p, (p.0, p.0)]).unwrap();
    assert!((r.rows[0].ratio - 1.0).abs() <= 0.05);
    assert_eq!(r.rows[1].ratio, 1.0);
    // the qh geodesic loops round the tip at radius about |x| while the
    // inner path hugs it, so the ratio approaches that of the loop
    let x = Point2::new(0.5, 0.05);
    let r = gehring_hayman_ratio(&SLIT, &[(x, Point2::new(x.x, -x.y))]).unwrap();
    let lam = 2.0 * x.norm();
    let loop_len = (std::f64::consts::TAU - 2.0 * x.y.atan2(x.x)) * x.norm();
    assert!((r.max_ratio - loop_len / lam).abs() <= 0.1 * loop_len / lam, "{}", r.max_ratio);
}

#[test]
fn ball_separation_examples() {
    let g = &*DISK;
    let line = (Point2::new(-0.5, 0.0), Point2::new(0.5, 0.0));
    assert!(ball_separation_check(g, line, 0.1).unwrap().holds);
    let pair = (Point2::from_polar(0.95, 0.4), Point2::from_polar(0.95, -0.4));
    let loose = ball_separation_check(g, pair, 5.0).unwrap();
    assert!(loose.holds, "{}", loose.worst_ratio);
    let tight = ball_separation_check(g, pair, 0.01).unwrap();
    assert!(!tight.holds);
    // the worst vertex sits on the geodesic's innermost stretch
    let inner = g.qh_geodesic(pair.0, pair.1).unwrap().points().iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
    assert!(tight.worst_z.x <= inner + g.params().h && tight.worst_z.y.abs() < 0.2, "{:?}", tight.worst_z);
    assert!(ball_separation_check(g, pair, 0.0).is_err());
}
