use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_svcheeger")).args(args).output().expect("running svcheeger")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone()).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn gen_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig5.tsv");
    let p = path.to_str().unwrap();
    assert!(run(&["gen", "fig5", "-o", p]).status.success());
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 7);

    let out = run(&["analyze", p, "--k", "2"]);
    assert!(out.status.success());
    let report = &json_lines(&out)[0];
    assert_eq!(report["min_phi_dir"], "0/1");
    assert_eq!(report["graph"]["n"], 4);
    assert!(report["vertex_expansion"].is_null());
    assert!(report["phi_k_dir"]["pairs"].is_array());
}

#[test]
fn analyze_respects_caps() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q3.tsv");
    let p = path.to_str().unwrap();
    assert!(run(&["gen", "hypercube", "--d", "3", "-o", p]).status.success());
    let out = run(&["analyze", p, "--max-exact-n", "4"]);
    let report = &json_lines(&out)[0];
    assert!(report["min_phi_dir"].is_null());
    assert!(report["null_reasons"]["min_phi_dir"].as_str().unwrap().starts_with("cap exceeded"));
    assert_eq!(report["min_phi"], "1/3");
    assert_eq!(report["vertex_expansion"]["delta"]["exact"], "0/1");
}

#[test]
fn certify_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.tsv");
    let p = path.to_str().unwrap();
    assert!(run(&["gen", "cycle", "--n", "5", "-o", p]).status.success());
    let out = run(&["certify", p]);
    assert!(out.status.success());
    let cert = &json_lines(&out)[0];
    assert_eq!(cert["satisfied"], true);
    assert_eq!(cert["value"], "1/5");
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.tsv");
    fs::write(&path, "n 2 directed\n0 1 -1\n").unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(run(&["analyze", "/nonexistent/graph.tsv"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--default-corpus", "--checks", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "cycle", "--n", "5", "--half", "2"]).status.code(), Some(2));
}

#[test]
fn verify_custom_corpus_and_checks() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.json");
    fs::write(&path, r#"[{"family":"cycle","n":5},{"family":"fig5"}]"#).unwrap();
    let out = run(&["verify", "--corpus", path.to_str().unwrap(), "--checks", "cheeger,di_cheeger"]);
    assert!(out.status.success());
    let records = json_lines(&out);
    let got: Vec<(String, String, String)> = records
        .iter()
        .map(|r| (r["graph"].as_str().unwrap().into(), r["theorem"].as_str().unwrap().into(), r["status"].as_str().unwrap().into()))
        .collect();
    let want = [
        ("cycle(n=5,loops=0,undirected)", "cheeger", "pass"),
        ("cycle(n=5,loops=0,undirected)", "di_cheeger", "pass"),
        ("fig5", "cheeger", "skip"),
        ("fig5", "di_cheeger", "pass"),
    ];
    assert_eq!(got.len(), want.len());
    for (g, w) in got.iter().zip(want) {
        assert_eq!((g.0.as_str(), g.1.as_str(), g.2.as_str()), w);
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let one = Command::new(env!("CARGO_BIN_EXE_svcheeger"))
        .args(["verify", "--default-corpus", "--checks", "di_cheeger,relating_4_6"])
        .env("SVCHEEGER_THREADS", "1")
        .output()
        .unwrap();
    let many = run(&["verify", "--default-corpus", "--checks", "di_cheeger,relating_4_6"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_svcheeger"))
        .args(["verify", "--default-corpus"])
        .env("SVCHEEGER_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
