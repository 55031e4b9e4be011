//! End-to-end runs of the `logmin` binary against the checked-in fixtures.
//!
//! Reports are compared with `fixtures/golden/*.json`; set `UPDATE_GOLDEN=1`
//! to rewrite them.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

fn logmin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logmin"))
        .current_dir(root())
        .args(args)
        .output()
        .unwrap()
}

/// (golden name, command words, fixture, expected exit code)
const CASES: &[(&str, &[&str], &str, i32)] = &[
    ("cusp_check", &["monoid", "check"], "cusp.json", 0),
    ("cusp_saturate", &["monoid", "saturate"], "cusp.json", 0),
    ("torsion_n3_check", &["monoid", "check"], "torsion_n3.json", 0),
    ("diagonal_check", &["monoid", "check"], "diagonal.json", 0),
    ("double_check", &["monoid", "check"], "double.json", 0),
    ("diagonal_split", &["monoid", "split"], "diagonal.json", 1),
    ("axis_split", &["monoid", "split"], "axis.json", 0),
    ("diagonal_cokernel", &["monoid", "cokernel"], "diagonal.json", 0),
    (
        "diagonal_pushout",
        &["monoid", "pushout"],
        "diagonal_along_double.json",
        0,
    ),
    ("collapsed_point_basic", &["point", "basic"], "collapsed_point.json", 0),
    ("node_classify", &["curve", "classify"], "node_point.json", 0),
    ("marked_classify", &["curve", "classify"], "marked_point.json", 0),
    ("two_nodes_classify", &["curve", "classify"], "two_nodes.json", 0),
    ("sch_point_validate", &["cat", "validate"], "sch_point.json", 0),
    ("log_point_minimal", &["cat", "minimal"], "log_point.json", 0),
    ("log_point_b1b2", &["cat", "b1b2"], "log_point.json", 0),
    ("log_point_cartesian", &["cat", "cartesian"], "log_point.json", 0),
    ("log_point_descent", &["descent", "run"], "log_point.json", 0),
    ("logcfg_seed0_descent", &["descent", "run"], "logcfg_seed0.json", 0),
];

#[test]
fn fixture_reports_match_golden() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatched = Vec::new();
    for &(name, words, fixture, code) in CASES {
        let input = format!("fixtures/{fixture}");
        let mut args = words.to_vec();
        args.extend(["--input", &input]);
        let out = logmin(&args);
        assert_eq!(
            out.status.code(),
            Some(code),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let golden = root().join("fixtures/golden").join(format!("{name}.json"));
        if update {
            std::fs::write(&golden, &out.stdout).unwrap();
        } else if std::fs::read(&golden).unwrap_or_default() != out.stdout {
            mismatched.push(name);
        }
    }
    assert!(
        mismatched.is_empty(),
        "reports differ from golden files: {mismatched:?}"
    );
}

#[test]
fn missing_input_is_invalid() {
    let out = logmin(&["monoid", "check", "--input", "fixtures/does_not_exist.json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "invalid_input");
    assert_eq!(v["error"]["location"], "fixtures/does_not_exist.json");
}

#[test]
fn malformed_input_reports_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"ambient\": {\"rank\": 1,\n}").unwrap();
    let out = logmin(&["monoid", "check", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let location = v["error"]["location"].as_str().unwrap();
    assert!(location.ends_with(":3:1"), "{location}");
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(logmin(&["monoid", "frobnicate"]).status.code(), Some(2));
    assert_eq!(logmin(&["--help"]).status.code(), Some(0));
}

#[test]
fn counterexample_replays_to_the_same_failure() {
    let out = logmin(&["monoid", "split", "--input", "fixtures/diagonal.json"]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let failing: Vec<&Value> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .collect();
    assert!(!failing.is_empty());
    let dir = tempfile::tempdir().unwrap();
    for check in failing {
        let cx = &check["counterexample"];
        let path = dir.path().join("replay.json");
        std::fs::write(&path, serde_json::to_vec(&cx["fixture"]).unwrap()).unwrap();
        let mut args: Vec<&str> = cx["replay"].as_str().unwrap().split_whitespace().collect();
        args.extend(["--input", path.to_str().unwrap()]);
        let again = logmin(&args);
        assert_eq!(again.status.code(), Some(1));
        let replayed: Value = serde_json::from_slice(&again.stdout).unwrap();
        let same = replayed["checks"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["name"] == check["name"])
            .unwrap();
        assert_eq!(same["status"], "fail");
        assert_eq!(same["detail"], check["detail"]);
    }
}

#[test]
fn generated_fixture_round_trips_through_the_cli() {
    let out = logmin(&["generate", "--kind", "logcfg-tower", "--seed", "5", "--count", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let generated: Value = serde_json::from_slice(&out.stdout).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(&path, serde_json::to_vec(&generated[0]).unwrap()).unwrap();
    let run = logmin(&["descent", "run", "--input", path.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stdout));
}

#[test]
fn suite_is_deterministic_and_passes() {
    let a = logmin(&["suite", "run", "--seed", "3", "--count", "4"]);
    let b = logmin(&["suite", "run", "--seed", "3", "--count", "4", "--threads", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("elapsed"));
}
