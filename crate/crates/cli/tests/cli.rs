use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn workspace() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn lieform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lieform"))
        .args(args)
        .current_dir(workspace())
        .output()
        .expect("run lieform")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lieform-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn sl2_table() -> Value {
    let spec = scratch("sl2-spec.json", r#"{"construct": "sl2"}"#);
    let out = lieform(&["build", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    stdout_json(&out)
}

#[test]
fn validate_accepts_built_table() {
    let path = scratch("sl2.json", &sl2_table().to_string());
    let out = lieform(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn validate_rejects_corrupted_table() {
    let mut table = sl2_table();
    // [h,f] = e instead of f breaks Jacobi and the grading
    table["products"][2]["out"] = json!([0]);
    let path = scratch("corrupt.json", &table.to_string());
    let out = lieform(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_input_exits_with_two() {
    let path = scratch("broken.json", "{\"dim\": 3, ");
    assert_eq!(lieform(&["validate", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(lieform(&["validate", "/nonexistent/table.json"]).status.code(), Some(2));
    let spec = scratch("unknown.json", r#"{"construct": "no_such_algebra"}"#);
    assert_eq!(lieform(&["build", spec.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn cohomology_of_sl2() {
    let spec = scratch("sl2-coh.json", r#"{"construct": "sl2"}"#);
    let out = lieform(&["cohomology", spec.to_str().unwrap(), "--module", "adjoint", "--degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["dimH"], json!(2));
    assert_eq!(v["by_weight"], json!({"-2": 1, "2": 1}));
    let out = lieform(&["cohomology", spec.to_str().unwrap(), "--module", "adjoint", "--degree", "2", "--weight", "-2"]);
    assert_eq!(stdout_json(&out)["dimH"], json!(1));
}

#[test]
fn verify_selected_checks() {
    let report = std::env::temp_dir().join(format!("lieform-report-{}.json", std::process::id()));
    let out = lieform(&[
        "verify-paper",
        "--filter",
        "s-adjoint-h[0-3]",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(written["report"]["total"], json!(4));
    assert_eq!(written["report"]["passed"], json!(4));
}

#[test]
fn verify_reports_failures_with_exit_one() {
    let out = lieform(&["verify-paper", "--filter", "extension-positive-h2-u01"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["report"]["checks"][0]["actual"], json!({"direct": 4, "formula": 3}));
}

#[test]
fn deform_evaluates_parameters() {
    let valid = scratch(
        "deform.json",
        r#"{"n": 2, "u": [0, 1], "params": {"v": [], "w": [], "xi": [3], "lambda": [[], [], [0], [1]]}}"#,
    );
    let out = lieform(&["deform", valid.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["jacobi_ok"], json!(true));

    let invalid = scratch(
        "deform-bad.json",
        r#"{"n": 2, "u": [0, 1], "params": {"v": [3], "w": [], "xi": [3], "lambda": [[], [], [0], [1]]}}"#,
    );
    let out = lieform(&["deform", invalid.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["jacobi_ok"], json!(false));
    assert_eq!(v["constraints"]["eq33_ok"], json!(false));
}

#[test]
fn output_is_deterministic() {
    let spec = scratch("det.json", r#"{"construct": "extension", "n": 2, "u": [0, 1]}"#);
    let run = || {
        let out = lieform(&["cohomology", spec.to_str().unwrap(), "--module", "adjoint", "--degree", "2", "--positive"]);
        let mut v = stdout_json(&out);
        v["meta"] = Value::Null;
        v
    };
    assert_eq!(run(), run());
}
