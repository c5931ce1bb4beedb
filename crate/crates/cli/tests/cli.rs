use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn qhgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhgeo")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    assert_eq!(code(o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn rows(o: &Output) -> (String, Vec<Vec<f64>>) {
    assert_eq!(code(o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout.clone()).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let rows = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

const DISK_FINE: [&str; 6] = ["--domain", "builtin:disk", "--h", "0.00390625", "--layers", "1"];

#[test]
fn dist_on_the_disk() {
    let mut args = DISK_FINE.to_vec();
    args.extend(["dist", "0,0", "0.5,0"]);
    let v = json(&qhgeo(&args));
    let k = v["k"].as_f64().unwrap();
    assert!((k - 2f64.ln()).abs() < 0.02 * 2f64.ln());
    assert!((v["lower_bound_qh_eq_1"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-12);
    assert_eq!(v["bound_satisfied"], true);
}

#[test]
fn dist_formats_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("dist.csv");
    let o = qhgeo(&["--domain", "builtin:square", "--format", "csv", "--out", out.to_str().unwrap(), "dist", "0.5,0.5", "0.2,0.5"]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,lower_bound_qh_eq_1,bound_satisfied"));
    let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(fields[2], "true");
    assert!(fields[0].parse::<f64>().unwrap() >= fields[1].parse::<f64>().unwrap());
}

#[test]
fn dist_errors() {
    let o = qhgeo(&["--domain", "builtin:disk", "dist", "0;0", "0.5,0"]);
    assert_eq!(code(&o), 2);
    assert!(!o.stderr.is_empty());
    assert_eq!(code(&qhgeo(&["--domain", "builtin:disk", "dist", "0,0", "2,0"])), 2);
    assert_eq!(code(&qhgeo(&["--domain", "builtin:nowhere", "dist", "0,0", "0.1,0"])), 2);
    assert_eq!(code(&qhgeo(&["dist", "0,0", "0.1,0"])), 2);
    assert_eq!(code(&qhgeo(&["--domain", "builtin:disk", "--h", "-1", "dist", "0,0", "0.1,0"])), 2);

    let dir = tempfile::tempdir().unwrap();
    let split = dir.path().join("split.json");
    fs::write(
        &split,
        r#"{"type":"difference","base":{"type":"rect","min":[0,0],"max":[2,1]},
            "holes":[{"type":"rect","min":[0.9,-0.5],"max":[1.1,1.5]}]}"#,
    )
    .unwrap();
    let o = qhgeo(&["--domain", split.to_str().unwrap(), "--h", "0.0625", "dist", "0.5,0.5", "1.5,0.5"]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"type":"disk","radius":-1}"#).unwrap();
    assert_eq!(code(&qhgeo(&["--domain", bad.to_str().unwrap(), "dist", "0,0", "0.1,0"])), 2);
}

#[test]
fn radial_geodesic_csv() {
    let o = qhgeo(&["--domain", "builtin:disk", "geodesic", "0,0", "0.7,0"]);
    let (header, rows) = rows(&o);
    assert_eq!(header, "x,y,delta,cum_qh_length,cum_euc_length");
    assert!(rows.windows(2).all(|w| w[1][3] >= w[0][3] && w[1][4] >= w[0][4]));
    let dist = json(&qhgeo(&["--domain", "builtin:disk", "dist", "0,0", "0.7,0"]));
    let k = dist["k"].as_f64().unwrap();
    let last = rows.last().unwrap();
    assert!((last[3] - k).abs() <= 1e-8 * k);
    assert_eq!((last[0], last[1]), (0.7, 0.0));
    for r in &rows {
        assert!((r[2] - (1.0 - r[0].hypot(r[1]))).abs() < 1e-8);
    }
}

#[test]
fn geodesic_hyp_column_and_json() {
    let (header, rows) = rows(&qhgeo(&["--domain", "builtin:disk", "geodesic", "--hyp", "0,0", "0.5,0"]));
    assert_eq!(header, "x,y,delta,cum_qh_length,cum_euc_length,hyp_cum_length");
    // no curve is shorter than the hyperbolic geodesic; lattice zigzag adds a few percent
    let hyp = rows.last().unwrap()[5];
    assert!(hyp >= 3f64.ln() - 1e-6 && hyp <= 1.05 * 3f64.ln(), "{hyp}");
    assert_eq!(code(&qhgeo(&["--domain", "builtin:square", "geodesic", "--hyp", "0.5,0.5", "0.2,0.5"])), 2);
    let v = json(&qhgeo(&["--domain", "builtin:disk", "--format", "json", "geodesic", "0,0", "0.5,0"]));
    assert!(v["points"].as_array().unwrap().len() >= 2);
}

#[test]
fn slit_geodesic_avoids_the_slit() {
    let (_, rows) = rows(&qhgeo(&["--domain", "builtin:slit", "geodesic", "0.5,0.05", "0.5,-0.05"]));
    for r in &rows {
        assert!(!(r[1] == 0.0 && (0.0..=1.0).contains(&r[0])), "{r:?}");
        assert!(r[2] > 0.0);
    }
    // the path changes sides only to the left of the tip
    for w in rows.windows(2) {
        if w[0][1].signum() != w[1][1].signum() {
            assert!(w[0][0] < 0.0 && w[1][0] < 0.0, "{w:?}");
        }
    }
}

#[test]
fn visibility_verdicts() {
    let comb = json(&qhgeo(&[
        "--domain", "builtin:comb", "visibility", "comb_left_mid", "comb_left_low",
        "0.5", "0.25", "0.125", "0.0625", "0.03125", "--x0", "0.75,0.75",
    ]));
    assert_eq!(comb["verdict"], "not_visible");
    let disk = json(&qhgeo(&["--domain", "builtin:disk", "visibility", "east", "west", "--x0", "0,0"]));
    assert_eq!(disk["verdict"], "visible");
    assert_eq!(code(&qhgeo(&["--domain", "builtin:disk", "visibility", "east", "nowhere"])), 2);

    let o = qhgeo(&["--domain", "builtin:disk", "--format", "csv", "visibility", "east", "west", "0.5", "0.25", "0.125"]);
    let (header, rows) = rows(&o);
    assert_eq!(header, "scale,m,clearance,gromov_product,pair_distance");
    assert_eq!(rows.len(), 3);
}

#[test]
fn strict_inconclusive_exits_four() {
    let args = ["--domain", "builtin:disk", "visibility", "east", "west", "0.5"];
    assert_eq!(json(&qhgeo(&args))["verdict"], "inconclusive");
    let mut strict = vec!["--strict"];
    strict.extend(args);
    assert_eq!(code(&qhgeo(&strict)), 4);
}

#[test]
fn suites() {
    let disk = json(&qhgeo(&["suite", "disk_reference"]));
    assert_eq!(disk["verdicts"]["closed_forms"], "pass");
    assert_eq!(code(&qhgeo(&["suite", "example9"])), 2);
    assert_eq!(code(&qhgeo(&["--format", "csv", "suite", "comb"])), 2);

    let first = qhgeo(&["suite", "slit"]);
    let v = json(&first);
    assert_eq!(v["verdicts"]["loop"], "loop_suspected");
    assert_eq!(v["verdicts"]["visibility"], "visible");
    let second = qhgeo(&["suite", "slit"]);
    assert_eq!(first.stdout, second.stdout);
}
