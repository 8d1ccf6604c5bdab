use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn torinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torinv")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = torinv(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("torinv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn help_lists_subcommands() {
    let out = torinv(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for cmd in ["field", "invariants", "check", "gl2", "sl2", "rootsys", "grun", "theorem", "verify"] {
        assert!(text.contains(cmd), "missing {cmd}");
    }
}

#[test]
fn gl2_landmarks_json() {
    let (code, v) = json(&["gl2", "landmarks", "--p", "3", "--r", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["first_positive_degree"], 3);
    assert_eq!(v["results"]["first_dim"], 1);
    assert_eq!(v["pass"], true);
}

#[test]
fn quillen_check_passes() {
    assert_eq!(torinv(&["check", "quillen", "--p", "3", "--r", "1"]).status.code(), Some(0));
}

#[test]
fn essential_kernel_exit_codes() {
    let (code, v) = json(&["grun", "essential", "--n", "6", "--p", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["kernel_dim"], 0);
    let (code, v) = json(&["grun", "essential", "--n", "3", "--p", "5"]);
    assert_eq!(code, 1);
    assert_eq!(v["results"]["discrepancy"], true);
    assert!(!v["results"]["kernel_basis"].as_array().unwrap().is_empty());
}

#[test]
fn invalid_input_exits_2() {
    assert_eq!(torinv(&["field", "info", "--p", "4"]).status.code(), Some(2));
    assert_eq!(torinv(&["grun", "commuting", "--n", "4", "--p", "3"]).status.code(), Some(2));
    assert_eq!(torinv(&["rootsys", "bound", "--type", "E8", "--r", "2"]).status.code(), Some(2));
    assert_eq!(torinv(&["gl2", "landmarks"]).status.code(), Some(2));
    assert_eq!(torinv(&["--format", "xml", "gl2", "landmarks", "--p", "3"]).status.code(), Some(2));
    let bad = scratch("singular.json", r#"{"kind": "custom", "basis": [[1, 0], [2, 0]]}"#);
    let out = torinv(&["rootsys", "exponent", "--type", "A2", "--lattice", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resource_guard_exits_3() {
    assert_eq!(torinv(&["check", "exponent", "--n", "6", "--p", "7", "--r", "2"]).status.code(), Some(3));
}

#[test]
fn missing_file_exits_4() {
    let out = torinv(&["invariants", "run", "--spec", "/nonexistent/spec.json", "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn csv_series_has_header() {
    let out = torinv(&["gl2", "series", "--p", "5", "--max-degree", "8", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "degree,dim");
    assert_eq!(lines.len(), 10);
    assert_eq!(lines[8], "7,1");
}

#[test]
fn runs_are_byte_identical() {
    let args = ["grun", "detect", "--n", "4", "--p", "3", "--format", "json"];
    assert_eq!(torinv(&args).stdout, torinv(&args).stdout);
    let args = ["check", "exponent", "--n", "4", "--p", "3", "--samples", "200", "--seed", "9", "--format", "json"];
    let a = torinv(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, torinv(&args).stdout);
}

#[test]
fn invariants_from_spec_file() {
    let out = torinv(&["gl2", "algebra", "--p", "5", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let spec = scratch("gl2-5.json", &v["results"]["spec"].to_string());
    let spec = spec.to_str().unwrap();
    let (code, v) = json(&["invariants", "run", "--spec", spec, "--max-degree", "8", "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["dims"], serde_json::json!([1, 0, 0, 0, 0, 0, 0, 1, 1]));
    assert_eq!(v["results"]["oracle_agrees"], true);
    let (_, v) = json(&["invariants", "list", "--spec", spec, "--degree", "7"]);
    assert_eq!(v["results"]["monomials"], serde_json::json!([{"exps": {"x_0": 1, "y_0": 3}}]));
    let (_, v) = json(&["invariants", "weight", "--spec", spec, "--monomial", "x_0=1,y_0=3"]);
    assert_eq!(v["results"]["invariant"], true);
    let out = torinv(&["invariants", "weight", "--spec", spec, "--monomial", "z_9=1"]);
    assert_eq!(out.status.code(), Some(2));
    let family = scratch("family.json", r#"[["y_0"]]"#);
    let (_, v) = json(&["invariants", "detect", "--spec", spec, "--degree", "8", "--family", family.to_str().unwrap()]);
    assert_eq!(v["results"]["kernel_dim"], 0);
}

#[test]
fn rootsys_commands() {
    let (code, v) = json(&["rootsys", "info", "--type", "E", "--rank", "8"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["coxeter_numbers"][0]["h"], 30);
    let (_, v) = json(&["rootsys", "exponent", "--type", "A3", "--lattice", "sc"]);
    assert_eq!(v["results"]["exponent"], 4);
    let (_, v) = json(&["rootsys", "bound", "--type", "A2", "--lattice", "sc", "--r", "2"]);
    assert_eq!(v["results"]["bound_display"], "2/3");
    let (_, v) = json(&["rootsys", "action-index", "--type", "C2", "--lattice", "sc", "--root", "0,1", "--q", "9"]);
    assert_eq!(v["results"]["index"], 2);
}

#[test]
fn theorem_reporters_carry_ingredients() {
    let (code, v) = json(&["theorem", "lowest-gl", "--n", "4", "--p", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["dimension"], 1);
    let ing = v["ingredients"].as_array().unwrap();
    assert!(ing.iter().any(|g| g["status"] == "cited"));
    assert!(ing.iter().all(|g| g["status"] == "computed" || g["status"] == "cited"));
    let (code, v) = json(&["theorem", "borel2", "--n", "4", "--r", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["dimension"], 3);
}

#[test]
fn verify_small_grid_and_out_file() {
    let grid = scratch("grid.json", r#"{"gl2": [[3, 1]], "chern": [[2, 5]]}"#);
    let out_path = std::env::temp_dir().join(format!("torinv-cli-{}-out.json", std::process::id()));
    let out = torinv(&[
        "verify",
        "all",
        "--grid",
        grid.to_str().unwrap(),
        "--format",
        "json",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["reports"].as_array().unwrap().len(), 4);
}
