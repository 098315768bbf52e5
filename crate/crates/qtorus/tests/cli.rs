//! End-to-end checks of the binary: report shapes, exit codes, and the
//! text renderer. Heavier numerical behavior lives in `acceptance.rs`.

use std::process::{Command, Output};

use serde_json::Value;

const LINE_FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/line_n1.json");
const COS_FIXTURE: &str = concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/../../fixtures/two_plus_cos_n1.json"
);

fn qtorus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtorus"))
        .args(args)
        .output()
        .expect("spawn qtorus")
}

#[test]
fn structured_reports_are_single_json_objects() {
    let out = qtorus(&[
        "algebra",
        "check",
        "--fixture",
        LINE_FIXTURE,
        "--output",
        "structured",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1, "one JSON object per run");
    let record: Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(record["status"], "pass");
    assert_eq!(record["command"], "algebra check");
    assert!(record["result"]["max_defect"].is_number());
}

#[test]
fn norm_report_carries_a_certified_interval() {
    let out = qtorus(&[
        "norm",
        "--fixture",
        LINE_FIXTURE,
        "--output",
        "structured",
    ]);
    assert!(out.status.success());
    let record: Value = serde_json::from_slice(&out.stdout).unwrap();
    let lower = record["result"]["lower"].as_f64().unwrap();
    let upper = record["result"]["upper"].as_f64().unwrap();
    assert!(lower <= upper);
    assert!((lower - 2.0).abs() <= 1e-9, "|1 + u_1| is exactly 2");
}

#[test]
fn text_reports_include_wall_time() {
    let out = qtorus(&["norm", "--fixture", LINE_FIXTURE]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("wall time"));
    assert!(text.contains("status"));
}

#[test]
fn missing_fixture_flag_is_a_usage_error() {
    let out = qtorus(&["norm"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unreadable_fixture_is_an_input_error() {
    let out = qtorus(&["norm", "--fixture", "/no/such/fixture.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fixture_without_metric_is_an_input_error() {
    let out = qtorus(&["metric", "validate", "--fixture", LINE_FIXTURE]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_norm_name_is_a_usage_error() {
    let out = qtorus(&["norm", "--fixture", LINE_FIXTURE, "--norm", "l3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unreachable_inversion_tolerance_is_a_compute_error() {
    let out = qtorus(&[
        "connection",
        "check",
        "--fixture",
        COS_FIXTURE,
        "--radius",
        "4",
        "--tol",
        "1e-12",
    ]);
    assert_eq!(out.status.code(), Some(1));
}
