use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture(name: &str) -> PathBuf {
    corpus().join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_singcurve"))
        .args(args)
        .env_remove("SINGCURVE_PRECISION_CAP")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn shipped_corpus_passes() {
    let out = run(&["verify", corpus().to_str().unwrap()]);
    let text = stdout(&out);
    assert_eq!(code(&out), 0, "{text}");
    assert!(!text.contains("FAIL"));
    assert!(text.contains("PASS curve_tacnode: curve: alexander_vs_poincare"));
}

#[test]
fn corpus_flag_and_json_summary() {
    let out = run(&["verify", "--corpus", corpus().to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["failed"], 0);
    let names: Vec<&str> = v["fixtures"].as_array().unwrap().iter().map(|f| f["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn invalid_corpus_fails() {
    let out = run(&["verify", fixture("invalid").to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("FAIL graph_not_negative_definite: graph [malformed_graph"));
    assert!(text.contains("FAIL graph_mismatch: curve: alexander_vs_poincare"));
}

#[test]
fn empty_directory_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["verify", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let out = run(&["verify", dir.path().join("missing").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn malformed_graph_exits_three() {
    let out = run(&["graph", fixture("invalid/graph_not_negative_definite.json").to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not negative definite"));
}

#[test]
fn branch_report_for_the_cusp() {
    let out = run(&["branch", fixture("branch_2_3.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("generators: 2, 3"));
    assert!(text.contains("(1 - t^[2])^-1 * (1 - t^[3])^-1 * (1 - t^[6])^1"));
    assert!(text.contains("PASS poincare = zeta up to t^100"));
}

#[test]
fn branch_with_two_pairs() {
    let out = run(&["branch", fixture("branch_4_6_7.json").to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["generators"], serde_json::json!([4, 6, 13]));
    assert_eq!(v["conductor"], 16);
}

#[test]
fn graph_reports() {
    let out = run(&["graph", fixture("curve_node.json").to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["alexander"], "1");
    assert_eq!(v["zeta"], "[1, [0]]");
    let out = run(&["graph", fixture("curve_cusp.json").to_str().unwrap(), "--format", "json"]);
    assert_eq!(json(&out)["zeta"], "[1, [0]] * (1 - t^[2])^-1 * (1 - t^[3])^-1 * (1 - t^[6])^1");
}

#[test]
fn curve_reports() {
    let out = run(&["curve", fixture("curve_node.json").to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["poincare"], "1");
    assert_eq!(v["euler"], "1");
    let out = run(&["curve", fixture("curve_tacnode.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("P_C: 1 + 1*t1^1*t2^1"));
    assert!(text.contains("X_C: 1 + 1*t1^1*t2^1"));
}

#[test]
fn explicit_window() {
    let f = fixture("curve_cusp.json");
    let out = run(&["curve", f.to_str().unwrap(), "--window", "-2..12", "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["window_hi"], serde_json::json!([12]));
    let out = run(&["curve", f.to_str().unwrap(), "--window", "-2..x"]);
    assert_eq!(code(&out), 2);
    let out = run(&["curve", f.to_str().unwrap(), "--window", "-2..5,-2..5"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn precision_cap_exits_four() {
    let f = fixture("curve_cusp.json");
    let out = run(&["curve", f.to_str().unwrap(), "--jet-cap", "16"]);
    assert_eq!(code(&out), 4, "{}", stdout(&out));
    assert!(stdout(&out).contains("ladder exhausted"));
    let out = Command::new(env!("CARGO_BIN_EXE_singcurve"))
        .args(["curve", f.to_str().unwrap()])
        .env("SINGCURVE_PRECISION_CAP", "16")
        .output()
        .unwrap();
    assert_eq!(code(&out), 4);
}

#[test]
fn infinity_reports() {
    let out = run(&["infinity", fixture("infinity_4_6_13.json").to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["conductor"], 16);
    assert_eq!(v["passed"], true);
    let out = run(&["infinity", fixture("infinity_1.json").to_str().unwrap(), "--bound", "5"]);
    assert!(stdout(&out).contains("product form: [1, [0]] * (1 - t^[1])^-1"));
}

#[test]
fn non_cofinite_delta_sequence_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"name":"bad","delta_sequence":[2,4]}"#).unwrap();
    assert_eq!(code(&run(&["infinity", path.to_str().unwrap()])), 3);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(code(&run(&["branch", fixture("missing.json").to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["branch", fixture("infinity_1.json").to_str().unwrap()])), 2);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    std::fs::write(&path, r#"{"name":"nothing"}"#).unwrap();
    assert_eq!(code(&run(&["curve", path.to_str().unwrap()])), 2);
    std::fs::write(&path, "{not json").unwrap();
    assert_eq!(code(&run(&["graph", path.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn output_is_byte_stable() {
    let dir = corpus();
    let args = ["verify", dir.to_str().unwrap(), "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
