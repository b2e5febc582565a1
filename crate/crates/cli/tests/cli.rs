use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cubetact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubetact")).args(args).env_remove("CUBETACT_CAP_VERTICES").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_builtin_q3() {
    let out = cubetact(&["generate", "--builtin", "Q3"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 8);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 12);
}

#[test]
fn generate_builtin_defining_graph() {
    let doc = json(&cubetact(&["generate", "--builtin", "STAR_EQ5"]));
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 5);
}

#[test]
fn generate_random_is_byte_identical() {
    let a = cubetact(&["generate", "--random", "6", "5", "42"]);
    let b = cubetact(&["generate", "--random", "6", "5", "42"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = cubetact(&["generate", "--random", "6", "5", "43"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn generate_ball_from_file_validates() {
    let dir = tempfile::tempdir().unwrap();
    let gamma = dir.path().join("c5.json");
    let ball = dir.path().join("ball.json");
    assert!(cubetact(&["generate", "--builtin", "C5", "--out", path(&gamma)]).status.success());
    let out = cubetact(&["generate", "--ball", path(&gamma), "coxeter", "3", "--out", path(&ball)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    // the written ball is itself a valid complex
    let analyzed = cubetact(&["analyze", path(&ball)]);
    assert!(analyzed.status.success());
    let doc = json(&analyzed);
    assert_eq!(doc["dimension"], 2);
}

#[test]
fn ball_subcommand_matches_generate() {
    let a = cubetact(&["ball", "--graph", "P4", "--kind", "artin", "--radius", "2"]);
    let b = cubetact(&["generate", "--ball", "P4", "artin", "2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    assert_eq!(doc["kind"], "artin");
    assert_eq!(doc["depth"]["0"], 2);
}

#[test]
fn vertex_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_cubetact"))
        .args(["ball", "--graph", "C5", "--kind", "artin", "--radius", "3"])
        .env("CUBETACT_CAP_VERTICES", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn analyze_domino() {
    let doc = json(&cubetact(&["analyze", "--builtin", "DOMINO"]));
    assert_eq!(doc["family"]["contact"]["edges"].as_array().unwrap().len(), 3);
    assert_eq!(doc["family"]["crossing"]["edges"].as_array().unwrap().len(), 2);
    assert_eq!(doc["hyperplanes"].as_array().unwrap().len(), 3);
}

#[test]
fn analyze_writes_report_files_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let out = cubetact(&["analyze", "--builtin", "SQUARE", "--out", path(dir.path()), "--dot"]);
    assert!(out.status.success());
    for f in ["hyperplanes.json", "family.json", "atlas.json", "interaction.json", "reconstruction.json", "complex.dot", "family.dot"] {
        assert!(dir.path().join(f).exists(), "{f} missing");
    }
    let dot = std::fs::read_to_string(dir.path().join("complex.dot")).unwrap();
    assert!(dot.starts_with("graph complex {"));
}

#[test]
fn analyze_rejects_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = dir.path().join("k3.json");
    std::fs::write(&k3, r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"],["a","c"]]}"#).unwrap();
    let out = cubetact(&["analyze", path(&k3)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not median") && err.contains("(a, b, c)"), "{err}");
}

#[test]
fn reconstruct_from_family_document() {
    let dir = tempfile::tempdir().unwrap();
    let reports = dir.path().join("reports");
    assert!(cubetact(&["analyze", "--builtin", "Q3", "--out", path(&reports)]).status.success());
    let rebuilt = dir.path().join("rebuilt.json");
    let out = cubetact(&["reconstruct", "--in", path(&reports.join("family.json")), "--out", path(&rebuilt), "--diagnostics"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("maximal cliques: 1"));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&rebuilt).unwrap()).unwrap();
    // every vertex of Q3 has all three hyperplanes, so there is one maximal clique
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 1);
}

#[test]
fn verify_cliques_on_random_instances() {
    let out = cubetact(&["verify", "--suite", "cliques", "--random-count", "20"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["suites"][0]["entries"][0]["instances_checked"], 20);
}

#[test]
fn verify_davis_on_p4() {
    let out = cubetact(&["verify", "--suite", "davis", "--graph", "P4", "--radius", "4", "--timing"]);
    assert!(out.status.success());
    let doc = json(&out);
    let entries = doc["suites"][0]["entries"].as_array().unwrap();
    let square = entries.iter().find(|e| e["lemma_id"] == "davis-square").unwrap();
    assert!(square["notes"][0].as_str().unwrap().contains("lands at distance 2"));
    assert!(doc["suites"][0]["elapsed_ms"].is_u64());
}

#[test]
fn verify_iw_on_square_reports_the_class() {
    let doc = json(&cubetact(&["verify", "--suite", "iw", "--builtin", "SQUARE"]));
    let text = doc.to_string();
    assert!(text.contains("[[0, 1]]"));
}

#[test]
fn verify_rejects_unknown_suite() {
    assert_eq!(cubetact(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_lists_suites() {
    let out = cubetact(&["verify", "--list"]);
    let names = String::from_utf8(out.stdout).unwrap();
    assert_eq!(names.lines().count(), 10);
}

#[test]
fn verify_reports_link_containment_counterexample() {
    // lk a ⊆ lk c in P4, so two a-walls are twins without being parallel
    let out = cubetact(&["verify", "--suite", "extension-graph", "--graph", "P4", "--radius", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("twins in different parallelism classes"));
    let doc = json(&out);
    let entries = doc["suites"][0]["entries"].as_array().unwrap();
    let quotient = entries.iter().find(|e| e["lemma_id"] == "extension-quotient").unwrap();
    assert_eq!(quotient["violation_count"], 0);
}
