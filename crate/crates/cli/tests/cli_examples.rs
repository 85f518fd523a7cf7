use std::path::Path;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn osp12(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_osp12")).args(args).output().expect("binary runs")
}

fn schema(name: &str) -> JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schema").join(name);
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    JSONSchema::compile(&raw).expect("schema compiles")
}

fn assert_valid(schema: &JSONSchema, out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    if let Err(errs) = schema.validate(&v) {
        let msgs: Vec<String> = errs.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("schema violations: {msgs:?}");
    }
    v
}

fn status_of<'a>(report: &'a Value, name: &str) -> &'a str {
    report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap()["status"].as_str().unwrap()
}

#[test]
fn theorem1_json_is_schema_valid_and_eta_flag_is_default() {
    let s = schema("report.schema.json");
    let default = osp12(&["--report", "json", "verify-theorem1"]);
    let explicit = osp12(&["--report", "json", "verify-theorem1", "--eta", "-1"]);
    assert_eq!(default.stdout, explicit.stdout);
    assert_eq!(default.status.code(), explicit.status.code());
    let v = assert_valid(&s, &default);
    assert!(v["checks"].as_array().unwrap().len() >= 40);
    // the displayed X^2YZ^2 reduction does not hold; its sign-corrected variant does
    assert_eq!(default.status.code(), Some(1));
    assert_eq!(v["summary"]["fail"], 1);
    assert_eq!(status_of(&v, "reduction X^2YZ^2"), "fail");
    assert_eq!(status_of(&v, "reduction X^2YZ^2 with -2XZ^2 in the (w+4)/3 bracket"), "pass");
    assert_eq!(status_of(&v, "dim <X,Y> = 15"), "pass");
}

#[test]
fn corollary_passes() {
    let out = osp12(&["--report", "json", "verify-corollary"]);
    assert_eq!(out.status.code(), Some(0));
    let v = assert_valid(&schema("report.schema.json"), &out);
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(status_of(&v, "sum of squared multiplicities"), "pass");
    assert_eq!(status_of(&v, "centralizing commutators"), "pass");
}

#[test]
fn rep_suite_passes_with_timings() {
    let out = osp12(&["--report", "json", "--timings", "rep", "--max-two-j", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = assert_valid(&schema("report.schema.json"), &out);
    assert_eq!(v["checks"].as_array().unwrap().len(), 10);
    assert!(v["checks"][0]["millis"].is_u64());
}

#[test]
fn conjecture_full_at_one() {
    let out = osp12(&["--report", "json", "verify-conjecture", "--two-j", "2", "--level", "full"]);
    let v = assert_valid(&schema("report.schema.json"), &out);
    assert_eq!(status_of(&v, "closure-dimension"), "pass");
    assert_eq!(status_of(&v, "conj2-w-roots"), "pass");
    assert_eq!(status_of(&v, "closed-form-edges-rescaled"), "pass");
    // printed closed forms only fit the j = 1/2 tower
    assert_eq!(status_of(&v, "closed-form-edges"), "fail");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn conjecture_at_half_reproduces_corollary() {
    let out = osp12(&["verify-conjecture", "--two-j", "1", "--level", "full"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("closure-dimension               dimension 15"));
    assert!(text.contains("status: verified"));
}

#[test]
fn zero_budget_aborts_with_code_two() {
    let out = osp12(&["--time-budget", "0", "verify-conjecture", "--two-j", "2", "--level", "full", "--mode", "exact"]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("aborted"));
    assert!(text.contains("status: incomplete"));
}

#[test]
fn bratteli_exports() {
    let s = schema("bratteli.schema.json");
    let out = osp12(&["bratteli", "--two-j", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = assert_valid(&s, &out);
    assert_eq!(v["j"], "1");
    let top: Vec<u64> = v["levels"][2].as_array().unwrap().iter().map(|n| n["mult"].as_u64().unwrap()).collect();
    assert_eq!(top, [1, 2, 3, 4, 5, 3, 1]);
    let hex: u64 =
        v["edges"].as_array().unwrap().iter().filter(|e| e["level"] == 1).map(|e| e["mult"].as_u64().unwrap()).sum();
    assert_eq!(hex, 19);

    let zero = assert_valid(&s, &osp12(&["bratteli", "--two-j", "0", "--format", "json"]));
    assert_eq!(zero["edges"].as_array().unwrap().len(), 2);

    let dot = String::from_utf8(osp12(&["bratteli", "--two-j", "1"]).stdout).unwrap();
    assert!(dot.starts_with("digraph bratteli"));
    assert_eq!(dot.matches("rank=same").count(), 3);
    assert_eq!(dot.matches("->").count(), 3 + 7);
}

#[test]
fn bratteli_out_writes_file_and_reports_bad_path() {
    let dir = std::env::temp_dir().join(format!("osp12-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig.dot");
    let out = osp12(&["--out", path.to_str().unwrap(), "bratteli", "--two-j", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(&path).unwrap().contains("L2_0m"));
    let bad = dir.join("missing").join("fig.dot");
    let out = osp12(&["--out", bad.to_str().unwrap(), "bratteli", "--two-j", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("missing"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(osp12(&["verify-theorem1", "--eta", "x/0"]).status.code(), Some(2));
    assert_eq!(osp12(&["bratteli"]).status.code(), Some(2));
}

#[test]
fn reports_identical_across_threads_and_seeds() {
    for cmd in [
        &["--report", "json", "verify-corollary"][..],
        &["--report", "json", "verify-conjecture", "--two-j", "2", "--level", "full", "--mode", "modular"][..],
        &["verify-theorem1"][..],
        &["bratteli", "--two-j", "3", "--format", "json"][..],
    ] {
        let a = osp12(&[&["--threads", "1", "--seed", "0"][..], cmd].concat());
        let b = osp12(&[&["--threads", "4", "--seed", "977"][..], cmd].concat());
        assert_eq!(a.stdout, b.stdout, "{cmd:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
