//! End-to-end tests of the `gabor` binary: JSON shapes and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn gabor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gabor")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("gabor-cli-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn classify_reports_regime_and_items() {
    let out = gabor(&["classify", "4", "2", "7"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["dependence_class"], "always_dependent");
    assert_eq!(v["frame_exists"], true);
    assert!(v["paper_items"].as_array().unwrap().iter().any(|s| s == "corollary"));

    let out = gabor(&["classify", "1", "3", "2"]);
    assert_eq!(stdout_json(&out)["dependence_class"], "always_independent");
}

#[test]
fn classify_rejects_zero_parameter() {
    let out = gabor(&["classify", "0", "1", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_json_dense_window() {
    let file = temp_file("dense.json", r#"{"offset": 1, "coeffs": [[1,0],[1,0]]}"#);
    let out = gabor(&["bounds", file.to_str().unwrap(), "--M", "2", "--N", "2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert!((v["A"].as_f64().unwrap() - 2.0).abs() < 1e-6);
    assert!((v["B"].as_f64().unwrap() - 2.0).abs() < 1e-6);
    assert_eq!(v["verdict"], "frame");
}

#[test]
fn bounds_csv_has_header_and_rows() {
    let file = temp_file("csv.json", r#"{"offset": 0, "coeffs": [[1,0]]}"#);
    let out =
        gabor(&["bounds", file.to_str().unwrap(), "--M", "2", "--N", "1", "--format", "csv", "--grid", "16"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "omega,sigma_min,sigma_max");
    assert_eq!(lines.len(), 17);
}

#[test]
fn bounds_exit_codes() {
    let zero = temp_file("zero.json", r#"{"offset": 0, "coeffs": [[0,0]]}"#);
    let out = gabor(&["bounds", zero.to_str().unwrap(), "--M", "2", "--N", "1"]);
    assert_eq!(out.status.code(), Some(3));

    let bad = temp_file("bad.json", "not json");
    let out = gabor(&["bounds", bad.to_str().unwrap(), "--M", "2", "--N", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn depend_comb_is_exact() {
    let file = temp_file("comb.json", r#"{"offset": 2, "coeffs": [[1,0],[0,0],[1,0]]}"#);
    let out = gabor(&["depend", file.to_str().unwrap(), "--M", "2", "--N", "1"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["kind"], "comb_exact");
    assert!(v["residual"].as_f64().unwrap() < 1e-14);
    assert_eq!(v["enumeration_order"], "n-major");
}

#[test]
fn depend_both_possible_exits_4() {
    let file = temp_file("dense12.json", r#"{"offset": 1, "coeffs": [[1,0],[1,0]]}"#);
    let out = gabor(&["depend", file.to_str().unwrap(), "--M", "2", "--N", "3"]);
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("both dependent and independent"), "stderr: {err}");
}

#[test]
fn construct_bspline_values() {
    let out = gabor(&["construct", "bspline", "3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let coeffs = v["window"]["coeffs"].as_array().unwrap();
    let expect = [1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0];
    for (c, e) in coeffs.iter().zip(expect) {
        assert!((c[0].as_f64().unwrap() - e).abs() < 1e-15);
    }
}

#[test]
fn construct_writes_window_file() {
    let path = std::env::temp_dir().join(format!("gabor-cli-out-{}.json", std::process::id()));
    let out = gabor(&["construct", "comb", "--M", "2", "--K", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let window: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(window["offset"], 2);
    assert_eq!(window["coeffs"].as_array().unwrap().len(), 3);
}

#[test]
fn construct_gaussian_reports_truncation() {
    let out = gabor(&["construct", "gaussian", "--tau", "1e-16"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["window"]["coeffs"].as_array().unwrap().len(), 15);
    assert!(v["truncation_error"].as_f64().unwrap() > 0.0);
}

#[test]
fn verify_paper_small_scale_passes() {
    let out = gabor(&["verify-paper", "--max", "2", "--seed", "1"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 11);
}
