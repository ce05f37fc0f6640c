use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn g2syms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2syms")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn catalog_list_shows_the_sweep() {
    let o = g2syms(&["catalog", "--list"]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("F1 a=(2,0) t=1/2  dim 10"));
    assert!(out.contains("F2b  dim 9"));
}

#[test]
fn build_then_certify_passes() {
    let dir = tempfile::tempdir().unwrap();
    let triple = dir.path().join("f1.json");
    let report = dir.path().join("report.json");
    let t = triple.to_str().unwrap();
    let o = g2syms(&["build", "--family", "1", "--a-sig", "2,0", "--t", "-1/2+1/3*sqrt2", "--out", t]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    let o = g2syms(&["certify", t, "--report", report.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let r = read_json(&report);
    let checks = r["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["verdict"] == "pass" && c["name"].is_string() && c["details"].is_string()));
    assert_eq!(r["quantities"]["spec"], "F1 a=(2,0) t=-1/2+1/3*sqrt2");
}

#[test]
fn corrupted_file_fails_certification() {
    let dir = tempfile::tempdir().unwrap();
    let triple = dir.path().join("f2b.json");
    let t = triple.to_str().unwrap();
    assert_eq!(code(&g2syms(&["build", "--family", "2b", "--out", t])), 0);

    // doubling one coefficient of ω breaks its compatibility with the metric
    let mut v = read_json(&triple);
    let omega = v["g2_structure"]["omega"].as_object_mut().unwrap();
    let (_, coeff) = omega.iter_mut().next().unwrap();
    let num = coeff[0][0].as_i64().unwrap() * 2 + 1;
    coeff[0][0] = num.into();
    std::fs::write(&triple, v.to_string()).unwrap();
    let o = g2syms(&["certify", t]);
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn spinor_audit_passes() {
    let o = g2syms(&["spinor-audit"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(String::from_utf8(o.stdout).unwrap().contains("Clifford relations (28 pairs)"));
}

#[test]
fn usage_errors_exit_64() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.json");
    let out = out.to_str().unwrap();
    assert_eq!(code(&g2syms(&["frobnicate"])), 64);
    assert_eq!(code(&g2syms(&["build", "--family", "3", "--out", out])), 64);
    assert_eq!(code(&g2syms(&["build", "--family", "2b", "--t", "1", "--out", out])), 64);
    assert_eq!(code(&g2syms(&["build", "--family", "1", "--t", "1/0", "--out", out])), 64);
    assert_eq!(code(&g2syms(&["certify", dir.path().join("missing.json").to_str().unwrap()])), 64);
    assert_eq!(code(&g2syms(&["catalog"])), 64);
}
