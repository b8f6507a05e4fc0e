mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::*;
use unitdisk::boundary::BoundarySamples;
use unitdisk::io;
use unitdisk::LaurentCoefficients;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unitdisk")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn series(terms: &[(i64, C)]) -> LaurentCoefficients<f64> {
    LaurentCoefficients::from_terms(terms.iter().copied()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn extend_constant_and_real_part() {
    let dir = tempfile::tempdir().unwrap();
    let five = BoundarySamples::<f64>::new(vec![c(5.0, 0.0); 64]).unwrap();
    let b = write(dir.path(), "five.csv", &io::boundary_to_csv(&five));
    let pts = write(dir.path(), "pts.csv", "re,im\n0.3,0\n0.5,0\n");
    let out_path = dir.path().join("ext.csv");
    let out = run(&["extend", "--in", s(&b), "--points", s(&pts), "--out", s(&out_path)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = fs::read_to_string(&out_path).unwrap();
    assert!(text.starts_with("re,im,h_re,h_im,resolution_flag\n"));
    let rows = csv_rows(&text);
    let h: f64 = rows[0][2].parse().unwrap();
    assert!((h - 5.0).abs() < 1e-12);

    let re = BoundarySamples::<f64>::from_fn(64, |z| c(z.value().re, 0.0)).unwrap();
    let b = write(dir.path(), "re.csv", &io::boundary_to_csv(&re));
    let out = run(&["extend", "--in", s(&b), "--points", s(&pts), "--out", s(&out_path)]);
    assert_eq!(code(&out), 0);
    let rows = csv_rows(&fs::read_to_string(&out_path).unwrap());
    let h: f64 = rows[1][2].parse().unwrap();
    assert!((h - 0.5).abs() < 1e-12, "{h}");
    let flag = &rows[1][4];
    assert!(flag == "true" || flag == "false");
}

#[test]
fn extend_errors() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.csv");
    let pts = write(dir.path(), "pts.csv", "re,im\n0.3,0\n");
    let out = run(&["extend", "--in", s(&missing), "--points", s(&pts)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("nope.csv"));

    let b = write(dir.path(), "b.csv", "k,theta,re,im\n0,0,1,0\n1,1.5,oops,0\n");
    let out = run(&["extend", "--in", s(&b), "--points", s(&pts)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("row 2"), "{}", stderr(&out));

    let good = write(dir.path(), "g.csv", &io::boundary_to_csv(&BoundarySamples::<f64>::new(vec![c(1.0, 0.0); 8]).unwrap()));
    let bad_pts = write(dir.path(), "bad.csv", "re,im\n0.1,0\n0.2,0.1\n1.0,0\n");
    let out = run(&["extend", "--in", s(&good), "--points", s(&bad_pts)]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("row 3"), "{}", stderr(&out));
}

#[test]
fn coeffs_and_project() {
    let dir = tempfile::tempdir().unwrap();
    let a = series(&[(-2, c(1.0, 0.0)), (1, c(3.0, 0.0))]);
    let b = write(dir.path(), "b.csv", &io::boundary_to_csv(&BoundarySamples::from_series(&a, 16).unwrap()));
    let out_path = dir.path().join("c.json");
    let out = run(&["coeffs", "--in", s(&b), "--nmax", "4", "--out", s(&out_path)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let back = io::coefficients_from_json::<f64>(&fs::read_to_string(&out_path).unwrap(), "c.json").unwrap();
    assert_eq!((back.n_min(), back.n_max()), (-4, 4));
    assert!(max_abs_diff(&a, &back) < 1e-14);

    let out = run(&["coeffs", "--in", s(&b), "--nmax", "8"]);
    assert_eq!(code(&out), 2);

    let p = write(dir.path(), "p.json", r#"{"terms": [{"j": 1, "k": 2, "re": 1.0, "im": 0.0}, {"j": 0, "k": 1, "re": 2.0, "im": 0.0}]}"#);
    let out = run(&["project", "--in", s(&p), "--out", s(&out_path)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let h = io::coefficients_from_json::<f64>(&fs::read_to_string(&out_path).unwrap(), "c.json").unwrap();
    assert_eq!(h.get(-1), c(3.0, 0.0));
}

#[test]
fn coeffs_at_radius_warns_when_ill_conditioned() {
    let dir = tempfile::tempdir().unwrap();
    let a = series(&[(1, c(1.0, 0.0))]);
    let samples = BoundarySamples::from_series_at_radius(&a, 0.01, 64).unwrap();
    let b = write(dir.path(), "b.csv", &io::boundary_to_csv(&samples));
    let out = run(&["coeffs", "--in", s(&b), "--nmax", "8", "--radius", "0.01"]);
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("ill-conditioned"));
}

#[test]
fn means_rows_and_validation() {
    let dir = tempfile::tempdir().unwrap();
    let z = write(dir.path(), "z.json", &io::coefficients_to_json(&series(&[(1, c(1.0, 0.0))])));
    let out = run(&["means", "--in", s(&z), "--gauge", "power:2", "--radii", "0.25,0.5,0.75"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    let values = io::mean_table_values_from_csv(&text, "stdout").unwrap();
    for ((_, got), want) in values.iter().zip([0.0625, 0.25, 0.5625]) {
        assert!((got - want).abs() < 1e-15);
    }
    assert!(text.ends_with("monotone: true\n"));

    let k = write(dir.path(), "k.json", &io::coefficients_to_json(&series(&[(0, c(3.0, 0.0))])));
    let out = run(&["means", "--in", s(&k), "--gauge", "exp:1.5", "--radii", "0.1,0.5,0.9"]);
    assert_eq!(code(&out), 0);
    let values = io::mean_table_values_from_csv(&String::from_utf8(out.stdout).unwrap(), "stdout").unwrap();
    assert!(values.iter().all(|(_, v)| *v == values[0].1));

    let zbar = write(dir.path(), "zbar.json", &io::coefficients_to_json(&series(&[(-1, c(1.0, 0.0))])));
    let out = run(&["means", "--in", s(&zbar), "--gauge", "power:0.5"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("holomorphic"), "{}", stderr(&out));

    let out = run(&["means", "--in", s(&z), "--gauge", "power:0.5", "--radii", "0.25,0.64"]);
    assert_eq!(code(&out), 0);

    let gauge = write(dir.path(), "g.json", r#"{"knots": [0.0, 1.0, 2.0], "values": [0.0, 1.0, 3.0]}"#);
    let spec = format!("file:{}", s(&gauge));
    let out = run(&["means", "--in", s(&z), "--gauge", &spec]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let out = run(&["means", "--in", s(&z), "--gauge", "cosh:1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn supmeans_rows() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", &io::coefficients_to_json(&series(&[(0, c(1.0, 0.0)), (1, c(1.0, 0.0))])));
    let out = run(&["supmeans", "--in", s(&a), "--radii", "0.5"]);
    assert_eq!(code(&out), 0);
    let values = io::mean_table_values_from_csv(&String::from_utf8(out.stdout).unwrap(), "stdout").unwrap();
    assert!((values[0].1 - 1.5).abs() < 1e-15);
}

#[test]
fn vn_sweep_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("vn.csv");
    let out = run(&["vn-sweep", "--trials", "0", "--out", s(&out_path)]);
    assert_eq!(code(&out), 0);
    assert_eq!(fs::read_to_string(&out_path).unwrap(), "trial,lhs,rhs,margin,holds\n");

    let out = run(&["vn-sweep", "--seed", "0", "--trials", "100", "--dim", "6", "--degree", "8", "--out", s(&out_path)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let rows = csv_rows(&fs::read_to_string(&out_path).unwrap());
    assert_eq!(rows.len(), 100);
    assert!(rows.iter().all(|r| r[4] == "true"));

    let out = run(&["vn-sweep", "--trials", "3", "--corrupt-norm", "1.5", "--out", s(&out_path)]);
    assert_eq!(code(&out), 4);
    let rows = csv_rows(&fs::read_to_string(&out_path).unwrap());
    let lhs: f64 = rows[0][1].parse().unwrap();
    let rhs: f64 = rows[0][2].parse().unwrap();
    assert!((lhs - 1.5).abs() < 1e-9 && (rhs - 1.0).abs() < 1e-12);
    let dump: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("vn.csv.failure.json")).unwrap()).unwrap();
    assert_eq!(dump["trial"], 0);
    assert!(dump["matrix"]["entries"].is_array());
    assert_eq!(dump["polynomial"]["coeffs"].as_array().unwrap().len(), 2);
}

#[test]
fn parseval_and_normality_tables() {
    let dir = tempfile::tempdir().unwrap();
    let a = series(&[(-2, c(0.5, 1.0)), (0, c(1.0, 0.0)), (3, c(-1.0, 0.25))]);
    let f = write(dir.path(), "a.json", &io::coefficients_to_json(&a));
    let out = run(&["parseval", "--in", s(&f), "--radii", "0.3,0.7,1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("r,quadrature,coefficient_sum,abs_diff\n"));
    for row in csv_rows(&text) {
        let d: f64 = row[3].parse().unwrap();
        assert!(d <= 1e-12);
    }

    let fam = write(
        dir.path(),
        "fam.json",
        &io::family_to_json(&[series(&[(0, c(3.0, 0.0))]), series(&[(1, c(1.0, 0.0))])]),
    );
    let out = run(&["normality", "--in", s(&fam), "--radii", "0.5"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let rows = csv_rows(&String::from_utf8(out.stdout).unwrap());
    let v: Vec<f64> = rows[0].iter().map(|x| x.parse().unwrap()).collect();
    assert!((v[1] - 3.0).abs() < 1e-14 && (v[2] - 3.0).abs() < 1e-12);
    assert!(v[1] <= v[3] + 1e-10);
}

#[test]
fn extract_alternating() {
    let dir = tempfile::tempdir().unwrap();
    let p = series(&[(-1, c(0.0, 0.0)), (0, c(1.0, 0.0)), (1, c(0.0, 0.0))]);
    let q = series(&[(-1, c(0.0, 0.0)), (0, c(-1.0, 0.0)), (1, c(0.0, 0.0))]);
    let seq: Vec<_> = (0..10).map(|j| if j % 2 == 0 { p.clone() } else { q.clone() }).collect();
    let fam = write(dir.path(), "seq.json", &io::family_to_json(&seq));
    let out = run(&["extract", "--in", s(&fam), "--tol", "0.1"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["indices"], serde_json::json!([1, 3, 5, 7, 9]));
    assert_eq!(v["degenerate"], false);

    let out = run(&["extract", "--in", s(&fam)]);
    assert_eq!(code(&out), 2);
}

#[test]
fn unknown_command_is_input_error() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["means", "--grid", "many"])), 2);
}
