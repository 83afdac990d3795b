use std::path::PathBuf;
use std::process::Command;

use jsonschema::JSONSchema;
use serde_json::Value;
use skew_capelli::cli::{run, Outcome};

fn capelli(args: &[&str]) -> Outcome {
    run(std::iter::once("capelli").chain(args.iter().copied()))
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn schema(name: &str) -> JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    JSONSchema::compile(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(name: &str, value: &Value) {
    let compiled = schema(name);
    let msgs: Vec<String> = match compiled.validate(value) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{name}: {msgs:?}\n{value:#}");
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = capelli(&full);
    let value = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", out.stdout));
    (out.code, value)
}

#[test]
fn verify_output_matches_schema() {
    for backend in ["full", "restricted", "forms"] {
        let (code, v) = json_of(&["verify", "--n", "3", "--backend", backend]);
        assert_eq!(code, 0);
        assert_eq!(v["pass"], Value::Bool(true));
        assert_valid("verify", &v);
    }
}

#[test]
fn gamma_output_matches_schema() {
    let (code, v) = json_of(&["gamma", "--n", "4", "--k", "2"]);
    assert_eq!(code, 0);
    assert_valid("gamma", &v);
    assert_valid("weyl_element", &v["element"]);
    assert_eq!(v["terms"], serde_json::json!(v["element"]["terms"].as_array().unwrap().len()));
}

#[test]
fn hermite_output_matches_schema() {
    for m in [0, 1, 5] {
        let (code, v) = json_of(&["hermite", "--m", &m.to_string()]);
        assert_eq!(code, 0);
        assert_valid("hermite", &v);
        assert_valid("upoly", &v["a"]);
    }
}

#[test]
fn symbol_output_matches_schema() {
    let (code, v) = json_of(&["symbol", "--n", "3"]);
    assert_eq!(code, 0);
    assert_valid("symbol", &v);
}

#[test]
fn pfaffian_output_matches_schema() {
    let (code, v) = json_of(&["pfaffian", &fixture("phi_n2.txt")]);
    assert_eq!(code, 0);
    assert_eq!(v["expect_matches"], Value::Bool(true));
    assert_valid("pfaffian", &v);
}

#[test]
fn suite_output_matches_schema_and_repeats() {
    let (code, a) = json_of(&["suite", "--seed", "7"]);
    let (_, b) = json_of(&["suite", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_valid("suite", &a);
    assert_eq!(a, b);
    let text_a = capelli(&["suite", "--seed", "3"]).stdout;
    let text_b = capelli(&["suite", "--seed", "3"]).stdout;
    assert_eq!(text_a, text_b);
}

#[test]
fn bench_output_matches_schema() {
    let (code, v) = json_of(&["bench", "--n-min", "1", "--n", "2"]);
    assert_eq!(code, 0);
    assert_valid("bench", &v);
}

#[test]
fn exit_codes() {
    assert_eq!(capelli(&["pfaffian", &fixture("phi_n2.txt")]).code, 0);
    assert_eq!(capelli(&["pfaffian", &fixture("wrong_expect.txt")]).code, 1);
    let malformed = capelli(&["pfaffian", &fixture("malformed.txt")]);
    assert_eq!(malformed.code, 2);
    assert!(malformed.stderr.contains(":3:18:"), "{}", malformed.stderr);
    assert_eq!(capelli(&["verify", "--n", "0"]).code, 2);
    assert_eq!(capelli(&["verify"]).code, 2);
    assert_eq!(capelli(&["no-such-command"]).code, 2);
    assert_eq!(capelli(&["pfaffian", "/nonexistent/matrix.txt"]).code, 2);
}

#[test]
fn malformed_inputs_report_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("odd.txt", "dim 3\n1 2 u\n"),
        ("range.txt", "dim 2\n1 5 u\n"),
        ("entry.txt", "dim 2\n1 2 x[1,9]\n"),
        ("garbage.txt", "dim 2\nhello\n"),
    ];
    for (name, body) in cases {
        let path = dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        let out = capelli(&["pfaffian", path.to_str().unwrap()]);
        assert_eq!(out.code, 2, "{name}: {}", out.stdout);
        assert!(out.stderr.starts_with("error:"), "{name}: {}", out.stderr);
    }
}

#[test]
fn binary_propagates_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_capelli");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["verify", "--n", "2"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("pass"));
    assert_eq!(status(&["pfaffian", &fixture("wrong_expect.txt")]).status.code(), Some(1));
    let bad = status(&["pfaffian", &fixture("malformed.txt")]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).ends_with('\n'));
}

#[test]
fn schemas_reject_malformed_reports() {
    let (_, mut v) = json_of(&["verify", "--n", "2"]);
    v["backend"] = Value::from("commutative");
    assert!(!schema("verify").is_valid(&v));
    let (_, mut h) = json_of(&["hermite", "--m", "2"]);
    h["a"] = serde_json::json!({"2": "1.5"});
    assert!(!schema("hermite").is_valid(&h));
}
