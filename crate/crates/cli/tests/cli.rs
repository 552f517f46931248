use std::process::{Command, Output};

use nichols_w3::freefield::FieldExpr;
use serde_json::Value;

fn bin(name: &str) -> Command {
    let path = match name {
        "nichols" => env!("CARGO_BIN_EXE_nichols"),
        "ydmod" => env!("CARGO_BIN_EXE_ydmod"),
        _ => env!("CARGO_BIN_EXE_cft"),
    };
    let mut c = Command::new(path);
    c.env_remove(nichols_w3_cli::OUT_DIR_ENV);
    c
}

fn run(name: &str, args: &[&str]) -> Output {
    bin(name).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn every_document_is_versioned() {
    let cases: [(&str, &[&str], &str); 5] = [
        ("nichols", &["table", "--p", "2", "--op", "concat"], "nichols-table"),
        ("nichols", &["verify", "--p", "2", "--samples", "50"], "nichols-verify"),
        ("ydmod", &["dims", "--p", "2", "--range", "3"], "ydmod-dims"),
        ("cft", &["verify", "--p", "2"], "cft-verify"),
        ("cft", &["singvec", "--p", "3", "--m", "2", "--n", "2", "--max", "5"], "cft-singvec"),
    ];
    for (name, args, kind) in cases {
        let v = json(&run(name, args));
        assert_eq!(v["schema"], "v1", "{kind}");
        assert_eq!(v["kind"], kind);
    }
}

#[test]
fn concat_table_has_the_q_commutator() {
    let v = json(&run("nichols", &["table", "--p", "2", "--op", "concat"]));
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 64);
    // F2·F1 = q^{-1} F1F2 + F3
    let e = entries
        .iter()
        .find(|e| e["left"] == serde_json::json!([0, 0, 1]) && e["right"] == serde_json::json!([1, 0, 0]))
        .unwrap();
    let terms = e["product"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    let f3 = terms.iter().find(|t| t["t"] == 1).unwrap();
    assert_eq!(f3["coeff"], serde_json::json!({"p": 2, "coeffs": [[1, 1], [0, 1]]}));
}

#[test]
fn dims_table_matches_formula() {
    let v = json(&run("ydmod", &["dims", "--p", "3", "--range", "6"]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 36);
    assert!(rows.iter().all(|r| r["computed"] == r["formula"]));
    let r22 = rows.iter().find(|r| r["n1"] == 2 && r["n2"] == 2).unwrap();
    assert_eq!(r22["computed"], 7);
    assert_eq!(v["passed"], true);
}

#[test]
fn cft_verify_reports_central_charge() {
    let v = json(&run("cft", &["verify", "--p", "3"]));
    assert_eq!(v["central_charge"], serde_json::json!([-30, 1]));
    assert_eq!(v["passed"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["passed"] == true && c["anchor"].is_string()));
}

#[test]
fn octuplet_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("oct.json");
    let out = run("cft", &["octuplet", "--p", "2", "--out", file.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(v["schema"], "v1");
    let fields = v["fields"].as_array().unwrap();
    assert_eq!(fields.len(), 8);
    for f in fields {
        let e = FieldExpr::from_json(&f["field"]).unwrap();
        assert!(!e.is_zero());
        assert_eq!(e.to_json(), f["field"]);
    }
    assert_eq!(fields[0]["field"]["terms"][0]["momentum"], serde_json::json!([[2, 1], [2, 1]]));
}

#[test]
fn env_var_sets_default_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin("cft")
        .args(["verify", "--p", "2", "--format", "csv"])
        .env(nichols_w3_cli::OUT_DIR_ENV, dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("cft-verify-p2.csv")).unwrap();
    assert!(text.starts_with("name,anchor,passed,detail\n"));
}

#[test]
fn output_is_deterministic() {
    let a = run("cft", &["singvec", "--p", "4", "--m", "-1", "--n", "-1", "--max", "10"]);
    let b = run("cft", &["singvec", "--p", "4", "--m", "-1", "--n", "-1", "--max", "10"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run("nichols", &["table", "--p", "3", "--op", "shuffle", "--format", "csv"]);
    let b = run("nichols", &["table", "--p", "3", "--op", "shuffle", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_nonzero() {
    assert_eq!(run("cft", &["verify"]).status.code(), Some(2));
    assert_eq!(run("nichols", &["table", "--p", "2", "--op", "bogus"]).status.code(), Some(2));
    let out = run("ydmod", &["dims", "--p", "1"]);
    assert_eq!(out.status.code(), Some(nichols_w3_cli::EXIT_ERROR));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at least 2"));
}

#[test]
fn rational_parameters_are_accepted() {
    let v = json(&run("cft", &["singvec", "--p", "3", "--m", "1/2", "--n", "3", "--max", "4"]));
    assert_eq!(v["params"], serde_json::json!([[1, 2], [3, 1]]));
    // no integer rule applies to m = 1/2
    assert!(v["singular_vectors"]
        .as_array()
        .unwrap()
        .iter()
        .all(|s| s["rule"] == "y" || s["representative"][0] != serde_json::json!([1, 2])));
}
