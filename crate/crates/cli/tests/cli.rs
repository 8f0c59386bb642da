use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use herbrand_cli::{run, Outcome, EXIT_INPUT, EXIT_OK, EXIT_REJECTED};
use serde_json::Value;
use tempfile::TempDir;

const DRINKER: &str = "rel P/1\nfun c/0\n|- exists x. (~P(x) \\/ forall y. P(y))\n";

const TWO_COPY_CERT: &str = r#"{
  "format_version": 1,
  "expansion": ["(exists x1. (~P(x1) \\/ forall y1. P(y1))) \\/ (exists x2. (~P(x2) \\/ forall y2. P(y2)))"],
  "prefix": [
    {"q": "exists", "var": "x1"},
    {"q": "forall", "var": "y1"},
    {"q": "exists", "var": "x2"},
    {"q": "forall", "var": "y2"}
  ],
  "matrix": "~P(x1) \\/ P(y1) \\/ (~P(x2) \\/ P(y2))",
  "witness": ["c", "y1"]
}"#;

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn herbrand(args: &[&str]) -> Outcome {
    run(std::iter::once("herbrand").chain(args.iter().copied()))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn field<'a>(o: &'a Outcome, key: &str) -> &'a str {
    o.report.get(key).and_then(Value::as_str).unwrap_or_else(|| panic!("no `{key}` in\n{}", o.output))
}

#[test]
fn demo_buss_separates_the_policies() {
    let o = herbrand(&["demo", "buss"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.output);
    assert_eq!(field(&o, "restricted"), "exhausted");
    assert_eq!(field(&o, "full"), "proved");
    assert_eq!(field(&o, "check-herbrand"), "accepted");
    assert!(o.output.starts_with("sequent: |- (forall x. A(x)) /\\ (forall x. B(x)), "));
}

#[test]
fn demo_drinker() {
    let o = herbrand(&["demo", "drinker"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.output);
    assert_eq!(field(&o, "result"), "ok");
}

#[test]
fn two_copy_drinker_certificate_is_accepted() {
    let dir = TempDir::new().unwrap();
    let seq = file(&dir, "drinker.seq", DRINKER);
    let cert = file(&dir, "drinker.cert", TWO_COPY_CERT);
    let o = herbrand(&["check-herbrand", s(&seq), s(&cert)]);
    assert_eq!(o.code, EXIT_OK, "{}", o.output);
    assert_eq!(o.output.lines().next(), Some("result: accepted"));
}

#[test]
fn bad_witness_is_rejected_with_a_reason() {
    let dir = TempDir::new().unwrap();
    let seq = file(&dir, "drinker.seq", DRINKER);
    let cert = file(&dir, "bad.cert", &TWO_COPY_CERT.replace(r#"["c", "y1"]"#, r#"["c", "c"]"#));
    let o = herbrand(&["check-herbrand", s(&seq), s(&cert)]);
    assert_eq!(o.code, EXIT_REJECTED);
    assert_eq!(field(&o, "result"), "rejected");
    assert_eq!(field(&o, "reason"), "matrix-not-tautology");
}

#[test]
fn invalid_sequent_search_is_exhausted() {
    let dir = TempDir::new().unwrap();
    let seq = file(&dir, "invalid.seq", "rel P/1\nfun c/0\n|- P(c)\n");
    let o = herbrand(&["search", s(&seq), "--depth", "6", "--terms", "2", "--policy", "full"]);
    assert_eq!(o.code, EXIT_REJECTED);
    assert_eq!(field(&o, "reason"), "exhausted");
    assert!(o.output.contains("reason: exhausted\n"));
}

#[test]
fn search_translate_check_pipeline() {
    let dir = TempDir::new().unwrap();
    let seq = file(&dir, "drinker.seq", DRINKER);
    let proof = dir.path().join("drinker.gs.json");
    let cert = dir.path().join("drinker.cert.json");

    let o = herbrand(&["search", s(&seq), "--depth", "8", "--terms", "1", "-o", s(&proof)]);
    assert_eq!(o.code, EXIT_OK, "{}", o.output);
    assert_eq!(field(&o, "result"), "proved");

    let o = herbrand(&["check-gs", s(&proof)]);
    assert_eq!(o.code, EXIT_OK, "{}", o.output);

    let o = herbrand(&["translate", s(&proof), "-o", s(&cert)]);
    assert_eq!(o.code, EXIT_OK, "{}", o.output);

    let o = herbrand(&["check-herbrand", s(&seq), s(&cert)]);
    assert_eq!(o.code, EXIT_OK, "{}", o.output);
}

#[test]
fn restricted_search_on_buss_is_exhausted() {
    let dir = TempDir::new().unwrap();
    let seq = file(&dir, "buss.seq", herbrand_cli::BUSS_DOCUMENT);
    let o = herbrand(&["search", s(&seq), "--depth", "12", "--terms", "1", "--policy", "restricted"]);
    assert_eq!(o.code, EXIT_REJECTED);
    let o = herbrand(&["search", s(&seq), "--depth", "12", "--terms", "1", "--policy", "full"]);
    assert_eq!(o.code, EXIT_OK);
}

#[test]
fn broken_proof_is_rejected() {
    let dir = TempDir::new().unwrap();
    let proof = file(
        &dir,
        "bad.gs.json",
        r#"{
  "format_version": 1,
  "signature": {"relations": [{"name": "P", "arity": 1}], "functions": [{"name": "c", "arity": 0}]},
  "proof": {"conclusion": ["P(c)", "~P(c)"], "rule": "weaken",
            "children": [{"conclusion": ["P(c)"], "rule": "ax"}]}
}"#,
    );
    let o = herbrand(&["check-gs", s(&proof)]);
    assert_eq!(o.code, EXIT_REJECTED, "{}", o.output);
    assert_eq!(field(&o, "reason"), "rule-mismatch");
    let o = herbrand(&["translate", s(&proof), "-o", s(&dir.path().join("x.cert"))]);
    assert_eq!(o.code, EXIT_REJECTED);
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let seq = file(&dir, "bad.seq", "rel P/1\nrel Q/1\nfun c/0\n|- ~(P(c) /\\ Q(c))\n");
    let o = herbrand(&["search", s(&seq), "--depth", "3", "--terms", "0"]);
    assert_eq!(o.code, EXIT_INPUT);
    assert_eq!(field(&o, "reason"), "negation-not-atomic");
    assert_eq!(o.report.get("line"), Some(&Value::from(4)));
    assert_eq!(o.report.get("column"), Some(&Value::from(4)));

    let o = herbrand(&["check-gs", s(&dir.path().join("missing.json"))]);
    assert_eq!(o.code, EXIT_INPUT);
    assert_eq!(field(&o, "reason"), "io-error");

    let garbage = file(&dir, "garbage.json", "{ not json");
    assert_eq!(herbrand(&["check-gs", s(&garbage)]).code, EXIT_INPUT);
    let cert = file(&dir, "v2.cert", &TWO_COPY_CERT.replace("\"format_version\": 1", "\"format_version\": 2"));
    let good = file(&dir, "drinker.seq", DRINKER);
    assert_eq!(herbrand(&["check-herbrand", s(&good), s(&cert)]).code, EXIT_INPUT);

    let o = herbrand(&["search"]);
    assert_eq!(o.code, EXIT_INPUT);
    assert_eq!(field(&o, "reason"), "usage");
    assert_eq!(herbrand(&["demo", "nonsense"]).code, EXIT_INPUT);
}

#[test]
fn json_output() {
    let o = herbrand(&["--json", "demo", "drinker"]);
    assert_eq!(o.code, EXIT_OK);
    let v: Value = serde_json::from_str(&o.output).unwrap();
    assert_eq!(v["result"], "ok");
    assert_eq!(v["valid-up-to-2"], true);

    let dir = TempDir::new().unwrap();
    let seq = file(&dir, "invalid.seq", "rel P/1\nfun c/0\n|- P(c)\n");
    let o = herbrand(&["search", s(&seq), "--depth", "2", "--terms", "0", "--json"]);
    let v: Value = serde_json::from_str(&o.output).unwrap();
    assert_eq!(v["reason"], "exhausted");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_herbrand");
    let dir = TempDir::new().unwrap();
    let seq = file(&dir, "invalid.seq", "rel P/1\nfun c/0\n|- P(c)\n");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();

    let out = status(&["demo", "buss"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("restricted: exhausted"));
    let out = status(&["search", s(&seq), "--depth", "6", "--terms", "2", "--policy", "full"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("reason: exhausted"));
    assert_eq!(status(&["check-gs", "/nonexistent/proof.json"]).status.code(), Some(2));
}
