use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn quiver(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../quivers");
    root.join(name).display().to_string()
}

fn hallq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hallq"))
        .args(args)
        .env_remove("HALLQ_CACHE_DIR")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn analyze_reports_the_bound_chain() {
    let out = hallq(&["analyze", &quiver("a3_relation.quiver"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["command"], "analyze");
    assert_eq!(r["results"]["gldim"], 2);
    assert_eq!(r["results"]["root_count"], 5);
    assert_eq!(r["results"]["weakly_positive"], true);
    assert!(r.get("timing_ms").is_none());
}

#[test]
fn analyze_hereditary_a2() {
    let r = json(&hallq(&["analyze", &quiver("a2.quiver"), "--format", "json"]));
    assert_eq!(r["results"]["gldim"], 1);
    assert_eq!(r["results"]["root_count"], 3);
}

#[test]
fn errors_exit_with_two() {
    let out = hallq(&["analyze", &quiver("cycle.quiver")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("oriented cycle"));
    assert_eq!(hallq(&["roots", &quiver("a2.quiver"), "--q", "4"]).status.code(), Some(2));
    assert_eq!(hallq(&["roots", &quiver("missing.quiver")]).status.code(), Some(2));
}

#[test]
fn single_vertex_hall_table_has_one_row() {
    let r = json(&hallq(&["hall-table", &quiver("point.quiver"), "--degree-bound", "2", "--format", "json"]));
    let rows = r["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["R"], "(1)^2");
    assert_eq!(rows[0]["F"], 4);
    assert_eq!(rows[0]["twist_exponent"], 1);
}

#[test]
fn verify_rho_at_two_is_homomorphism_only() {
    let out = hallq(&["verify-rho", &quiver("a3_relation.quiver"), "--q", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["results"]["homomorphism_verified"], true);
    assert_eq!(r["results"]["isomorphism_verified"], Value::Null);
    assert_eq!(r["checks"].as_array().unwrap().len(), 1);
}

#[test]
fn verify_rho_reports_surviving_relations_on_the_square() {
    let out = hallq(&["verify-rho", &quiver("square_commutative.quiver"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["results"]["nonvanishing"].as_array().unwrap().len(), 8);
    assert_eq!(r["results"]["isomorphism_verified"], false);
}

#[test]
fn warm_cache_reproduces_reports_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().display().to_string();
    for cmd in ["indecomposables", "verify-rho"] {
        let args = [cmd, &quiver("square_zero.quiver"), "--format", "json", "--cache-dir", &cache];
        let cold = hallq(&args);
        let warm = hallq(&args);
        assert_eq!(cold.stdout, warm.stdout, "{cmd}");
        assert_eq!(cold.status.code(), warm.status.code());
    }
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let uncached = hallq(&["indecomposables", &quiver("square_zero.quiver"), "--format", "json"]);
    let cached = hallq(&["indecomposables", &quiver("square_zero.quiver"), "--format", "json", "--cache-dir", &cache]);
    assert_eq!(uncached.stdout, cached.stdout);
}

#[test]
fn cache_directory_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hallq"))
        .args(["indecomposables", &quiver("a2.quiver")])
        .env("HALLQ_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn chain_of_three_reduces_to_the_first_example() {
    let a = json(&hallq(&["examples", "1", "--format", "json"]));
    let b = json(&hallq(&["examples", "2", "--length", "3", "--format", "json"]));
    assert_eq!(a["results"]["stages"], b["results"]["stages"]);
    assert_eq!(a["results"]["quiver_text"], b["results"]["quiver_text"]);
}

#[test]
fn first_example_passes_every_check() {
    let out = hallq(&["examples", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS golden: [e3,e1]_t"));
    assert!(text.contains("PASS golden: [e1,[e2,e3]_t]"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn timing_only_on_request() {
    let r = json(&hallq(&["roots", &quiver("a2.quiver"), "--format", "json", "--timing"]));
    assert!(r["timing_ms"].is_u64());
}

#[test]
fn unknown_example_is_rejected() {
    assert_eq!(hallq(&["examples", "5"]).status.code(), Some(2));
}
