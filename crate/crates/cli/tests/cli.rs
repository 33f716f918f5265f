use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn slicespace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slicespace"))
        .args(args)
        .current_dir(golden_dir())
        .output()
        .expect("binary runs")
}

/// Compares stdout with a stored report; `UPDATE_GOLDEN=1` rewrites it.
fn assert_golden(name: &str, out: &Output) {
    let path = golden_dir().join(name);
    let actual = String::from_utf8(out.stdout.clone()).unwrap();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {name}"));
    assert_eq!(actual, expected, "report differs from {name}");
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn norm_reports_match_golden_files() {
    let cases: [(&str, &[&str]); 5] = [
        ("norm_dirichlet.json", &["norm", "dirichlet_example.series.json", "--space", "dirichlet"]),
        ("norm_bloch.json", &["norm", "identity.series.json", "--space", "bloch", "--sphere-samples", "8"]),
        ("norm_hinf.json", &["norm", "mixed.series.json", "--space", "hinf", "--sphere-samples", "4"]),
        (
            "norm_bergman.json",
            &["norm", "mixed.series.json", "--space", "bergman", "--p", "1.5", "--alpha", "0.5", "--sphere-samples", "4"],
        ),
        ("norm_besov.json", &["norm", "mixed.series.json", "--space", "besov", "--p", "2", "--sphere-samples", "4"]),
    ];
    for (golden, args) in cases {
        let out = slicespace(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_golden(golden, &out);
    }
}

#[test]
fn norm_values() {
    let out = slicespace(&["norm", "dirichlet_example.series.json", "--space", "dirichlet"]);
    let v = json(&out)["value"].as_f64().unwrap();
    assert!((v - (3.0 * std::f64::consts::PI).sqrt()).abs() < 1e-10, "{v}");

    let out = slicespace(&["norm", "identity.series.json", "--space", "bloch", "--sphere-samples", "8"]);
    assert!((json(&out)["value"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn check_suite_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let run = |path: &Path, threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_slicespace"))
            .args(["check", "--suite", "dirichlet", "--seed", "7", "--out"])
            .arg(path)
            .env("SLICESPACE_THREADS", threads)
            .status()
            .unwrap()
    };
    assert_eq!(run(&a, "1").code(), Some(0));
    assert_eq!(run(&b, "4").code(), Some(0));
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);

    let out = slicespace(&["check", "--suite", "dirichlet", "--seed", "7"]);
    assert_eq!(out.stdout, a);
    assert_golden("check_dirichlet_seed7.json", &out);
}

#[test]
fn check_report_shape() {
    let out = slicespace(&["check", "--suite", "kernels", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["suite"], "kernels");
    assert_eq!(report["seed"], 1);
    assert_eq!(report["passed"], true);
    let checks = report["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    let mut names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    let total = names.len();
    names.dedup();
    assert_eq!(names.len(), total, "one entry per invariant");
    for c in checks {
        assert!(c["passed"].is_boolean() && c["worst"].is_number() && c["limit"].is_number());
        assert!(c["samples"].as_u64().unwrap() > 0);
    }
}

#[test]
fn exit_code_contract() {
    let code = |args: &[&str]| slicespace(args).status.code();
    // check failure: the clip radius biases sup estimates by ~1e-5
    assert_eq!(code(&["check", "--suite", "bloch", "--seed", "1", "--tol", "1e-16"]), Some(1));
    // malformed input
    assert_eq!(code(&["norm", "malformed.series.json", "--space", "bloch"]), Some(2));
    assert_eq!(code(&["norm", "no_such_file.json", "--space", "bloch"]), Some(2));
    assert_eq!(code(&["profile", "malformed.series.json"]), Some(2));
    assert_eq!(code(&["check", "--suite", "unknown"]), Some(2));
    // parameter domain
    assert_eq!(code(&["norm", "identity.series.json", "--space", "bergman", "--p", "-1"]), Some(3));
    assert_eq!(code(&["norm", "identity.series.json", "--space", "bergman", "--alpha", "-1"]), Some(3));
    assert_eq!(code(&["norm", "identity.series.json", "--space", "besov", "--p", "0.4", "--n", "2"]), Some(3));
    assert_eq!(code(&["norm", "identity.series.json", "--space", "dirichlet", "--clip", "1.5"]), Some(3));
}

#[test]
fn tampered_tolerance_names_the_biased_check() {
    let out = slicespace(&["check", "--suite", "bloch", "--seed", "1", "--tol", "1e-16"]);
    let report = json(&out);
    assert_eq!(report["passed"], false);
    let failing: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failing.contains(&"hinf_calibration"), "{failing:?}");
}

#[test]
fn profiles() {
    let dir = TempDir::new().unwrap();
    let constant = dir.path().join("c.json");
    std::fs::write(&constant, r#"{"coeffs": [[2, 0, 1, 0]]}"#).unwrap();
    let out = slicespace(&["profile", constant.to_str().unwrap(), "--radial", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,derivative_profile,circle_mean"));
    for line in lines {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cols[1], 0.0);
        assert!((cols[2] - 5.0).abs() < 1e-12);
    }

    let out = slicespace(&["profile", "identity.series.json", "--radial", "8"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<f64>> =
        text.lines().skip(1).map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    for r in &rows {
        assert!((r[1] - (1.0 - r[0] * r[0])).abs() < 1e-12);
    }
    // polynomials: the little-Bloch profile decays towards the boundary
    let out = slicespace(&["profile", "mixed.series.json", "--radial", "8", "--sphere-samples", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let tail: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    let n = tail.len();
    assert!(tail[n - 5..].windows(2).all(|w| w[1] < w[0]), "{tail:?}");
}

#[test]
fn kernel_grid_reproduces_the_series() {
    let out = slicespace(&["grid", "mixed.series.json", "--alpha", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let z = report["z"].as_array().unwrap();
    let v = report["value"].as_array().unwrap();
    assert_eq!(z.len(), v.len());
    // on C(e₁): 1 + z·0.5e₁ + z²·0.25e₃
    for (z, v) in z.iter().zip(v) {
        let (x, y) = (z[0].as_f64().unwrap(), z[1].as_f64().unwrap());
        let q: Vec<f64> = v.as_array().unwrap().iter().map(|c| c.as_f64().unwrap()).collect();
        let (z2r, z2i) = (x * x - y * y, 2.0 * x * y);
        // (a + b e₁)·e₁ = −b + a e₁ ; (a + b e₁)·e₃ = a e₃ − b e₂
        let expect = [1.0 - 0.5 * y, 0.5 * x, -0.25 * z2i, 0.25 * z2r];
        // beyond |z| ≈ 0.6 the 128-angle rule leaves a tail of order |z|¹²⁸
        let tol = if x.hypot(y) <= 0.6 { 1e-12 } else { 1e-4 };
        for (a, b) in q.iter().zip(expect) {
            assert!((a - b).abs() < tol, "{q:?} vs {expect:?}");
        }
    }
}
