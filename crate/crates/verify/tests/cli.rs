use std::process::{Command, Output};

use serde_json::Value;

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(args)
        .env_remove("VERIFY_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json_without_timing(out: &Output) -> Value {
    let mut v: Value = serde_json::from_slice(&out.stdout).expect("json report");
    for c in v["claims"].as_array_mut().unwrap() {
        c["seconds"] = Value::from(0.0);
    }
    v
}

#[test]
fn passing_selection_exits_zero() {
    let out = verify(&["run", "--claims", "delpezzo-ideal,invariant-map-image", "--report", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_without_timing(&out);
    assert_eq!(v["summary"]["pass"], 2);
    assert_eq!(v["claims"][0]["id"], "delpezzo-ideal");
}

#[test]
fn reports_reproduce() {
    let args = ["run", "--claims", "yprime-twist,elliptic-curve-actions", "--report", "json", "--seed", "11", "--workers", "2"];
    assert_eq!(json_without_timing(&verify(&args)), json_without_timing(&verify(&args)));
}

#[test]
fn unknown_claim_exits_two() {
    let out = verify(&["run", "--claims", "not-a-claim"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not-a-claim"));
}

#[test]
fn failing_claim_exits_one() {
    // the listed tau points on the surface differ from the published ones
    let out = verify(&["run", "--claims", "delpezzo-ideal,yprime-tau-fixed", "--report", "text"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("pass 1 / fail 1 / total 2"), "{text}");
}

#[test]
fn strict_profile_and_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["run", "--claims", "yprime-nodes", "--tol-profile", "strict", "--cache", cache, "--report", "json"];
    let first = verify(&args);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stdout));
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let second = verify(&args);
    assert_eq!(json_without_timing(&first), json_without_timing(&second));
}

#[test]
fn list_prints_every_claim() {
    let out = verify(&["list"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 19);
}
