use std::process::{Command, Output};

use serde_json::Value;

fn rowfin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rowfin")).args(args).env_remove("ROWFIN_BOUND").output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn default_runs_pass() {
    for sub in ["two-gen", "maltsev", "sandwich", "witness", "fear", "simple-full"] {
        let out = rowfin(&[sub]);
        assert_eq!(out.status.code(), Some(0), "{sub}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(report(&out)["status"], "pass");
    }
}

#[test]
fn classify_verdicts() {
    for (rho, verdict) in [("le", "EClass"), ("ge", "DClass"), ("diag", "DClass"), ("mod:2:(1,0)", "EClass")] {
        let out = rowfin(&["classify", "--preorder", rho]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(report(&out)["summary"]["verdict"], verdict, "{rho}");
    }
    assert_eq!(rowfin(&["classify"]).status.code(), Some(2));
}

#[test]
fn random_sandwich() {
    let out = rowfin(&["sandwich", "--ring", "GF:5", "--window", "20", "--random-Y", "seed=7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["status"], "pass");
}

#[test]
fn corruptions_fail() {
    let cases: [&[&str]; 8] = [
        &["two-gen", "--corrupt", "f3"],
        &["maltsev", "--corrupt", "f3"],
        &["sandwich", "--corrupt", "x"],
        &["classify", "--preorder", "le", "--corrupt", "tag"],
        &["witness", "--corrupt", "h"],
        &["fear", "--corrupt", "escape"],
        &["simple-full", "--corrupt", "unclosed"],
        &["oracle", "--x1", "1", "--x2", "2", "--gen", "s=shift", "--corrupt", "witness"],
    ];
    for args in cases {
        let out = rowfin(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let r = report(&out);
        assert_eq!(r["status"], "fail");
        assert!(r["checks"].as_array().unwrap().iter().any(|c| c["verdict"] == "fail"));
    }
}

#[test]
fn usage_errors() {
    assert_eq!(rowfin(&["two-gen", "--ring", "GF:4"]).status.code(), Some(2));
    assert_eq!(rowfin(&["sandwich", "--corrupt", "nonsense"]).status.code(), Some(2));
    assert_eq!(rowfin(&["classify", "--preorder", "mod:0"]).status.code(), Some(2));
}

#[test]
fn bound_exceeded_is_not_failure() {
    let out = rowfin(&["simple-full", "--n", "3", "--p", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["status"], "bound_exceeded");

    let out = Command::new(env!("CARGO_BIN_EXE_rowfin"))
        .args(["oracle", "--x1", "1", "--x2", "6", "--gen", "s=shift", "--radius", "6"])
        .env("ROWFIN_BOUND", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["status"], "bound_exceeded");
}

#[test]
fn out_file_and_sparse_input() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = dir.path().join("u.txt");
    std::fs::write(&matrix, "ring GF:3\n1 2 1\n3 5 2\n").unwrap();
    let json = dir.path().join("report.json");
    let out = rowfin(&[
        "two-gen",
        "--in",
        matrix.to_str().unwrap(),
        "--out",
        json.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(r["subcommand"], "two-gen");
    assert_eq!(r["status"], "pass");

    std::fs::write(&matrix, "ring GF:3\n1 x 1\n").unwrap();
    assert_eq!(rowfin(&["two-gen", "--in", matrix.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn empty_family_passes() {
    let out = rowfin(&["two-gen", "--family", "empty"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["status"], "pass");
}

#[test]
fn oracle_reports_proximity() {
    let out = rowfin(&["oracle", "--ring", "Zmod:5", "--x1", "1", "--x2", "3:2", "--gen", "s=shift", "--radius", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["summary"]["proximity"], 3);
}

#[test]
fn reports_are_deterministic() {
    let args = ["witness", "--seed", "5", "--count", "4"];
    assert_eq!(rowfin(&args).stdout, rowfin(&args).stdout);
}
