//! End-to-end tests driving the compiled binary: exit codes, JSON output,
//! script checking, translation piping, and corpus filtering.

use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join("corpus")
}

fn ecumene(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecumene"))
        .args(args)
        .env("ECUMENE_CORPUS", corpus_dir())
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn prove_theorem_exits_zero_and_emits_script() {
    let out = ecumene(&["prove", "--system", "labek", "|- x: dia_c a_i <->i ~box ~a_i"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.starts_with("proved"));
    assert!(text.contains("\"system\": \"labek\""));
}

#[test]
fn prove_non_theorem_exits_one() {
    let out = ecumene(&["prove", "--system", "leci", "|- a_i \\/i ~a_i"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("saturated: true"));
}

#[test]
fn prove_with_t_extension() {
    let out = ecumene(&[
        "prove",
        "--system",
        "labek",
        "--ext",
        "T",
        "x R x |- x: box a_i ->i a_i",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn prove_parse_error_exits_two_with_span() {
    let out = ecumene(&["prove", "--system", "leci", "|- a ->i"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("parse error at"), "{err}");
}

#[test]
fn prove_json_countermodel() {
    let out = ecumene(&[
        "prove",
        "--system",
        "labek",
        "--json",
        "--countermodel",
        "--max-worlds",
        "4",
        "|- x: ~dia_i ~a_i ->i box a_i",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["outcome"], "refuted");
    assert!(v["countermodel"]["worlds"].as_array().unwrap().len() <= 4);
}

#[test]
fn check_corpus_script_ok() {
    let script = corpus_dir().join("scripts/axiom_k4.json");
    let out = ecumene(&["check", script.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).starts_with("ok:"));
}

#[test]
fn check_collapse_script_needs_cut_header() {
    // The header already allows cut, so plain checking passes...
    let script = corpus_dir().join("scripts/collapse.json");
    let out = ecumene(&["check", script.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    // ... and a stripped header fails without --allow-cut.
    let text = std::fs::read_to_string(&script).unwrap();
    let stripped = text.replace("\"allow_cut\": true,", "");
    let tmp = std::env::temp_dir().join("ecumene-collapse-stripped.json");
    std::fs::write(&tmp, stripped).unwrap();
    let out = ecumene(&["check", tmp.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let out = ecumene(&["check", "--allow-cut", tmp.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn check_corrupted_rule_reports_error() {
    let script = corpus_dir().join("scripts/axiom_k.json");
    let text = std::fs::read_to_string(&script).unwrap();
    let corrupted = text.replacen("\"box_l\"", "\"box_q\"", 1);
    let tmp = std::env::temp_dir().join("ecumene-corrupted.json");
    std::fs::write(&tmp, corrupted).unwrap();
    let out = ecumene(&["check", tmp.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("box_q"));
}

#[test]
fn translate_std_matches_expected_text() {
    let out = ecumene(&["translate", "--mode", "std", "--var", "x", "box a_i"]);
    assert_eq!(stdout(&out).trim(), "forall w1. (R(x,w1) ->i a_i(w1))");
    let out = ecumene(&["translate", "--mode", "ik", "a_c"]);
    assert_eq!(stdout(&out).trim(), "~~a_i");
    let out = ecumene(&["translate", "--mode", "seq", "x R y, x: box a_i |- y: a_i"]);
    assert_eq!(
        stdout(&out).trim(),
        "R(x,y), forall w1. (R(x,w1) ->i a_i(w1)) |- a_i(y)"
    );
}

#[test]
fn translate_proof_output_passes_check() {
    let script = corpus_dir().join("scripts/axiom_k.json");
    let out = ecumene(&["translate", "--mode", "proof", script.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let tmp = std::env::temp_dir().join("ecumene-translated-k.json");
    std::fs::write(&tmp, stdout(&out)).unwrap();
    let out = ecumene(&["check", tmp.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn corpus_filter_runs_subset() {
    let out = ecumene(&["corpus", "--filter", "labek_axiom_k*"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("labek_axiom_k1"));
    assert!(!text.contains("leci_classical_em"));
    assert!(text.contains("5 passed, 0 failed, 5 total"));
}

#[test]
fn corpus_json_reports_every_entry() {
    let out = ecumene(&["corpus", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let results = v.as_array().unwrap();
    assert!(results.len() >= 40);
    assert!(results.iter().all(|r| r["passed"] == true));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "prove",
        "--system",
        "labek",
        "|- x: box a_c <->i ~dia_c ~a_c",
    ];
    let first = stdout(&ecumene(&args));
    let second = stdout(&ecumene(&args));
    assert_eq!(first, second);
}

#[test]
fn corpus_env_var_sets_directory() {
    let out = Command::new(env!("CARGO_BIN_EXE_ecumene"))
        .args(["corpus", "--filter", "leci_classical_em"])
        .env("ECUMENE_CORPUS", corpus_dir())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}
