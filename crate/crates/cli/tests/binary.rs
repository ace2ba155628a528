use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planecode"))
        .args(args)
        .env("PLANECODE_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn record(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON record")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("planecode-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn build_construct_analyze_pipeline() {
    let plane = tmp("pipe-plane.txt");
    let word = tmp("pipe-word.txt");
    let p = plane.to_str().unwrap();
    let w = word.to_str().unwrap();
    assert!(bin(&["plane", "build", "--field", "3^2", "--out", p]).status.success());
    let out = bin(&["construct", "baer-diff", "--plane", p, "--out", w]);
    assert!(out.status.success());
    let rec = record(&out);
    assert_eq!(rec["outcome"]["weight"], 15);
    assert_eq!(rec["outcome"]["dual"], true);
    assert!(rec["inputs"][p].as_str().unwrap().len() == 64);
    let out = bin(&["analyze", "--word", w, "--plane", p]);
    let rec = record(&out);
    assert!(out.status.success());
    assert_eq!(rec["outcome"]["classification"], "baer");
    assert_eq!(rec["outcome"]["extraction"]["kind"], "baer");
    let checks = rec["outcome"]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] != "fail"));
}

#[test]
fn constructed_words_lead_with_one() {
    let word = tmp("lead-word.txt");
    let w = word.to_str().unwrap();
    assert!(bin(&["construct", "line-diff", "--plane", "5", "--l", "2", "--m", "3", "--out", w]).status.success());
    let text = std::fs::read_to_string(&word).unwrap();
    let first = text.lines().nth(1).unwrap();
    assert!(first.ends_with(":1"), "{first}");
}

#[test]
fn embed_exit_codes() {
    let yes = bin(&["embed", "--pls", "builtin:mk", "--plane", "7"]);
    assert!(yes.status.success());
    assert_eq!(record(&yes)["outcome"]["status"], "found");
    let no = bin(&["embed", "--pls", "builtin:mk", "--plane", "5"]);
    assert!(no.status.success());
    assert_eq!(record(&no)["outcome"]["status"], "exhausted-none");
    let cut = bin(&["embed", "--pls", "builtin:ap3", "--plane", "9", "--budget", "1"]);
    assert_eq!(cut.status.code(), Some(1));
    assert_eq!(record(&cut)["outcome"]["status"], "budget-exceeded");
}

#[test]
fn usage_and_domain_errors() {
    let usage = bin(&["code", "frobnicate"]);
    assert_eq!(usage.status.code(), Some(2));
    assert_eq!(record(&usage)["error"]["kind"], "usage");
    let domain = bin(&["code", "dim", "--plane", "6"]);
    assert_eq!(domain.status.code(), Some(1));
    let rec = record(&domain);
    assert_eq!(rec["ok"], false);
    assert_eq!(rec["error"]["kind"], "field");
    let missing = bin(&["analyze", "--word", "/nonexistent/w.txt", "--plane", "3"]);
    assert_eq!(missing.status.code(), Some(1));
    assert_eq!(record(&missing)["error"]["kind"], "io");
}

#[test]
fn record_flag_writes_file() {
    let path = tmp("rec.json");
    let out = bin(&["code", "dim", "--plane", "2^2", "--record", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let rec: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rec["outcome"]["dimension"], 10);
}

#[test]
fn records_are_deterministic() {
    let args = ["construct", "subplane-diff", "--plane", "3^2", "--second", "moved:7"];
    let a = record(&bin(&args));
    let b = record(&bin(&args));
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("wall_time_ms");
        v
    };
    assert_eq!(strip(a), strip(b));
}

#[test]
fn antipodal_files() {
    let path = tmp("ap.txt");
    let p = path.to_str().unwrap();
    assert!(bin(&["antipodal", "build", "--order", "2", "--out", p]).status.success());
    let out = bin(&["antipodal", "validate", "--file", p]);
    assert!(out.status.success());
    assert_eq!(record(&out)["outcome"]["order"], 2);
    std::fs::write(&path, "pls points=7 lines=7\n0 1 2\n0 3 4\n0 5 6\n1 3 5\n1 4 6\n2 3 6\n2 4 5\n").unwrap();
    let out = bin(&["antipodal", "validate", "--file", p]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(record(&out)["error"]["kind"], "antipodal");
}
