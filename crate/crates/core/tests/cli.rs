//! Exit codes, error reporting and file handling of the command-line front end.

mod common;

use std::process::Command;

use common::*;
use otforge::cli::{run_with, EXIT_EXHAUSTED, EXIT_FAILURE, EXIT_OK, EXIT_PARSE, EXIT_UNKNOWN};
use serde_json::Value;

fn run(rest: &[&str]) -> otforge::cli::Outcome {
    let owned: Vec<String> = rest.iter().map(|s| s.to_string()).collect();
    run_with(args(&owned), Some(2))
}

fn data_of(out: &otforge::cli::Outcome) -> Value {
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    v["data"].clone()
}

#[test]
fn classify_exit_codes() {
    let cases = [
        ("j1", EXIT_OK, "type-j1"),
        ("j", EXIT_OK, "type-j"),
        ("rotation", EXIT_FAILURE, "not-type-j"),
        ("unwitnessed", EXIT_UNKNOWN, "unknown"),
        ("inoue", EXIT_OK, "type-j1"),
    ];
    for (ex, code, status) in cases {
        let out = run(&["classify", &data_str(&format!("{ex}_matrix.json")), &data_str(&format!("{ex}_factorization.json"))]);
        assert_eq!(out.code, code, "{ex}: {}", out.stderr);
        assert_eq!(data_of(&out)["status"], status, "{ex}");
    }
}

#[test]
fn exhausted_unit_search_exits_with_hint() {
    let out = run(&["dirichlet", &data_str("hard_units_matrix.json"), &data_str("hard_units_factorization.json")]);
    assert_eq!(out.code, EXIT_EXHAUSTED);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.contains("--coeff-bound"), "{}", out.stderr);
}

#[test]
fn malformed_json_reports_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "[\n  [\"1\", \"0\"],\n  [\"0\" \"1\"]\n]\n").unwrap();
    let out = run(&["classify", bad.to_str().unwrap(), &data_str("j1_factorization.json")]);
    assert_eq!(out.code, EXIT_PARSE);
    assert!(out.stderr.contains("bad.json:3:8"), "{}", out.stderr);

    let missing = dir.path().join("missing.json");
    std::fs::write(&missing, "{\n  \"b0\": [\"1\", \"0\", \"1\"]\n}").unwrap();
    let out = run(&["classify", &data_str("j1_matrix.json"), missing.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_PARSE);
    assert!(out.stderr.contains("missing.json:3:1") && out.stderr.contains("factors"), "{}", out.stderr);

    let out = run(&["classify", &dir.path().join("absent.json").to_string_lossy(), &data_str("j1_factorization.json")]);
    assert_eq!(out.code, EXIT_PARSE);
}

#[test]
fn integers_must_be_decimal_strings() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("poly.json");
    std::fs::write(&f, "[1, 0, 1]").unwrap();
    let out = run(&["ot-compare", f.to_str().unwrap(), &data_str("xi_units.json")]);
    assert_eq!(out.code, EXIT_PARSE, "{}", out.stderr);
}

#[test]
fn invalid_budgets_are_rejected() {
    let out = run(&["--coeff-bound", "0", "classify", &data_str("j1_matrix.json"), &data_str("j1_factorization.json")]);
    assert_eq!(out.code, EXIT_PARSE);
    let out = run(&["frobnicate"]);
    assert_eq!(out.code, EXIT_PARSE);
}

#[test]
fn factorization_must_match_the_matrix() {
    let out = run(&["classify", &data_str("j1_matrix.json"), &data_str("j_factorization.json")]);
    assert_eq!(out.code, EXIT_FAILURE, "{}", out.stderr);
}

#[test]
fn pipeline_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("family.json");
    let man = dir.path().join("manifold.json");
    let (m, f) = (data_str("j1_matrix.json"), data_str("j1_factorization.json"));

    let out = run(&["--output", fam.to_str().unwrap(), "dirichlet", "--primary", &m, &f]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.is_empty());
    let family: Value = serde_json::from_str(&std::fs::read_to_string(&fam).unwrap()).unwrap();
    assert_eq!(family["kind"], "dirichlet-family");
    assert_eq!(family["data"]["polys"].as_array().unwrap().len(), 2);

    let out = run(&["--output", man.to_str().unwrap(), "build", &m, &f, fam.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);

    let out = run(&["invariants", man.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let report = data_of(&out);
    assert_eq!(report["b1"], 2);
    assert_eq!(report["verdict_lck"], "inconclusive");

    // A family document is not a manifold.
    let out = run(&["invariants", fam.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_PARSE);
}

#[test]
fn custom_and_external_families() {
    let dir = tempfile::tempdir().unwrap();
    let (m, f) = (data_str("j1_matrix.json"), data_str("j1_factorization.json"));
    let residues = dir.path().join("residues.json");
    std::fs::write(&residues, r#"[["-1"]]"#).unwrap();
    let out = run(&["dirichlet", "--custom", residues.to_str().unwrap(), &m, &f]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let family = data_of(&out);
    assert_eq!(family["mode"]["kind"], "custom");

    // Bare polynomial lists are verified before use.
    let bare = dir.path().join("bare.json");
    std::fs::write(&bare, serde_json::to_string(&family["polys"]).unwrap()).unwrap();
    let out = run(&["build", &m, &f, bare.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(data_of(&out)["family"]["mode"]["kind"], "external");

    let negated: Vec<Vec<String>> = family["polys"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p.as_array().unwrap().iter().map(|c| negate(c.as_str().unwrap())).collect())
        .collect();
    std::fs::write(&bare, serde_json::to_string(&negated).unwrap()).unwrap();
    let out = run(&["build", &m, &f, bare.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_FAILURE, "{}", out.stderr);
    assert!(out.stderr.contains("Δ2"), "{}", out.stderr);

    let not_invertible = dir.path().join("residue2.json");
    std::fs::write(&not_invertible, r#"[["2"]]"#).unwrap();
    let out = run(&["dirichlet", "--custom", not_invertible.to_str().unwrap(), &m, &f]);
    assert_eq!(out.code, EXIT_FAILURE, "{}", out.stderr);
}

fn negate(c: &str) -> String {
    match c.strip_prefix('-') {
        Some(rest) => rest.to_string(),
        None if c == "0" => c.to_string(),
        None => format!("-{c}"),
    }
}

#[test]
fn ot_compare_rejects_non_units() {
    let dir = tempfile::tempdir().unwrap();
    let units = dir.path().join("units.json");
    std::fs::write(&units, r#"[["2", "1"], ["1", "2", "1"]]"#).unwrap();
    let out = run(&["ot-compare", &data_str("xi_poly.json"), units.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_FAILURE, "{}", out.stderr);
    let out = run(&["ot-compare", &data_str("xi_poly.json"), &data_str("xi_units.json")]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(data_of(&out)["checks"].as_array().unwrap().iter().all(|c| c["holds"] == true));
}

#[test]
fn binary_honours_thread_cap_and_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_otforge");
    let (m, f) = (data_str("j1_matrix.json"), data_str("j1_factorization.json"));
    let one = Command::new(bin).env("OTFORGE_THREADS", "1").args(["dirichlet", &m, &f]).output().unwrap();
    let four = Command::new(bin).env("OTFORGE_THREADS", "4").args(["dirichlet", &m, &f]).output().unwrap();
    assert_eq!(one.status.code(), Some(EXIT_OK));
    assert_eq!(one.stdout, four.stdout);

    let rot = Command::new(bin)
        .args(["classify", &data_str("rotation_matrix.json"), &data_str("rotation_factorization.json")])
        .output()
        .unwrap();
    assert_eq!(rot.status.code(), Some(EXIT_FAILURE));
}
