use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lefschetz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim().to_string()
}

#[test]
fn eval_prints_canonical_form() {
    let out = run(&["eval", "([X] - [Y]) * L^6"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "(L^6)·[X] + (-L^6)·[Y]");
}

#[test]
fn eval_specializes() {
    let out = run(&["eval", "[P(6)]*(L^4+L^2+1)", "--at", "2"]);
    assert_eq!(stdout(&out), "2667");
    let out = run(&["eval", "G(2,7) - P(6)*(L^4+L^2+1)"]);
    assert_eq!(stdout(&out), "0");
}

#[test]
fn eval_normal_form_kills_weaker_annihilator() {
    let out = run(&["eval", "([X]-[Y])*(L^2-1)*(L-1)*L^7", "--normal-form"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0");
}

#[test]
fn eval_errors_exit_nonzero() {
    let out = run(&["eval", "L^-1"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 3"));

    assert!(!run(&["eval", "[X]", "--at", "2"]).status.success());
    assert!(!run(&["eval", "[X]*[Y]"]).status.success());
}

#[test]
fn class_command() {
    assert_eq!(stdout(&run(&["class", "G", "2", "7", "--at", "2"])), "2667");
    assert_eq!(stdout(&run(&["class", "P", "2"])), "L^2 + L + 1");
    assert_eq!(stdout(&run(&["class", "A", "3"])), "L^3");
    assert_eq!(stdout(&run(&["class", "P", "-1"])), "0");
    assert!(!run(&["class", "G", "2"]).status.success());
    assert!(!run(&["class", "P", "-2"]).status.success());
}

#[test]
fn verify_symbolic_exits_zero() {
    let out = run(&["verify", "symbolic"]);
    assert!(out.status.success());
    assert!(!stdout(&out).contains("FAIL"));
}

#[test]
fn verify_census_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.json");
    let out = run(&[
        "verify", "census", "--prime", "2", "--seeds", "1,2", "--json",
        path.to_str().unwrap(), "--threads", "2",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let reports = doc.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["prime"], 2);
    assert_eq!(reports[1]["seed"], 2);
    assert_eq!(reports[0]["counts"]["grassmannian"], 2667);
    assert_eq!(reports[0]["checks"]["fiber_rank4"], "pass");
}

#[test]
fn census_gating() {
    assert!(!run(&["verify", "census", "--prime", "5", "--seeds", "1"]).status.success());
    assert!(!run(&["verify", "census", "--prime", "7", "--seeds", "1"]).status.success());
    assert!(!run(&["verify", "census", "--prime", "4", "--seeds", "1"]).status.success());
}

#[test]
fn combined_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["report", "--json", path.to_str().unwrap(), "--prime", "2", "--seeds", "1"]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["symbolic"]["checks"]["theorem"], "pass");
    assert_eq!(doc["census"][0]["prime"], 2);
}
