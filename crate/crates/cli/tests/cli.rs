use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn deckrecon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deckrecon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = deckrecon(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

fn write_graph(dir: &TempDir, name: &str, text: &str) -> String {
    let p = path(dir, name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn matching_pipeline() {
    let dir = TempDir::new().unwrap();
    let (g, deck, partial) = (path(&dir, "g.txt"), path(&dir, "g.deck"), path(&dir, "p.deck"));
    assert!(
        deckrecon(&["gen", "--family", "matching", "--n", "100", "--d", "1", "--output", &g])
            .status
            .success()
    );
    let truth: Value = serde_json::from_str(&fs::read_to_string(format!("{g}.truth.json")).unwrap()).unwrap();
    assert_eq!(truth["m"], 50);
    assert!(deckrecon(&["deck", "build", "--graph", &g, "--output", &deck])
        .status
        .success());
    assert!(
        deckrecon(&["deck", "remove", "--deck", &deck, "--k", "4", "--seed", "7", "--output", &partial])
            .status
            .success()
    );
    assert!(fs::read_to_string(&partial).unwrap().starts_with("deck 100 4\n"));
    let trace = ok_json(&[
        "recon", "edges", "--deck", &partial, "--d", "1", "--format", "json", "--strict",
    ]);
    assert_eq!(trace["value"], 50);
    assert_eq!(trace["in_regime"], true);
}

#[test]
fn strict_mode_rejects_out_of_regime() {
    let dir = TempDir::new().unwrap();
    let (g, deck, partial) = (path(&dir, "g.txt"), path(&dir, "g.deck"), path(&dir, "p.deck"));
    deckrecon(&["gen", "--family", "matching", "--n", "100", "--d", "1", "--output", &g]);
    deckrecon(&["deck", "build", "--graph", &g, "--output", &deck]);
    deckrecon(&["deck", "remove", "--deck", &deck, "--k", "20", "--output", &partial]);
    let relaxed = deckrecon(&["recon", "edges", "--deck", &partial, "--d", "1"]);
    assert_eq!(relaxed.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&relaxed.stdout).contains("OUT OF REGIME"));
    let strict = deckrecon(&["recon", "edges", "--deck", &partial, "--d", "1", "--strict"]);
    assert_eq!(strict.status.code(), Some(3));
}

#[test]
fn triangle_count_from_cli() {
    let dir = TempDir::new().unwrap();
    let (g, deck, partial) = (path(&dir, "g.txt"), path(&dir, "g.deck"), path(&dir, "p.deck"));
    deckrecon(&[
        "gen",
        "--family",
        "disjoint-triangles",
        "--n",
        "300",
        "--d",
        "2",
        "--output",
        &g,
    ]);
    deckrecon(&["deck", "build", "--graph", &g, "--cliques", "3", "--output", &deck]);
    deckrecon(&[
        "deck", "remove", "--deck", &deck, "--k", "2", "--seed", "1", "--output", &partial,
    ]);
    let trace = ok_json(&[
        "recon", "cliques", "--deck", &partial, "--d", "2", "--r", "3", "--format", "json",
    ]);
    assert_eq!(trace["value"], 100);
    let alt = ok_json(&[
        "recon",
        "cliques",
        "--deck",
        &partial,
        "--d",
        "2",
        "--r",
        "3",
        "--reference",
        "max-cliques",
        "--format",
        "json",
    ]);
    assert_eq!(alt["value"], 100);
}

#[test]
fn degree_sequence_from_cli() {
    let dir = TempDir::new().unwrap();
    let (g, deck, partial) = (path(&dir, "g.txt"), path(&dir, "g.deck"), path(&dir, "p.deck"));
    deckrecon(&[
        "gen", "--family", "matching", "--n", "10000", "--d", "1", "--output", &g,
    ]);
    deckrecon(&[
        "deck",
        "build",
        "--graph",
        &g,
        "--d",
        "1",
        "--subcard-depth",
        "2",
        "--output",
        &deck,
    ]);
    deckrecon(&["deck", "remove", "--deck", &deck, "--k", "1", "--output", &partial]);
    for extra in [&[][..], &["--force-general"][..]] {
        let mut args = vec![
            "recon",
            "degseq",
            "--deck",
            partial.as_str(),
            "--format",
            "json",
            "--strict",
        ];
        args.extend_from_slice(extra);
        let state = ok_json(&args);
        assert_eq!(state["histogram"], serde_json::json!([[1, 10000]]));
        assert_eq!(state["m"], 5000);
    }
}

#[test]
fn thresholds_table() {
    let out = deckrecon(&["thresholds", "--n", "1800", "--d", "3"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().any(|l| l.starts_with("edge_count") && l.ends_with(" 92")));
    let json = ok_json(&["thresholds", "--n", "10000", "--d", "1", "--format", "json"]);
    assert_eq!(json["degree_sequence"], 1);
    let json = ok_json(&["thresholds", "--n", "300", "--d", "2", "--r", "3", "--format", "json"]);
    assert_eq!(json["clique_count"], 2);
    let csv = deckrecon(&["thresholds", "--n", "100", "--d", "1", "--format", "csv"]);
    assert!(String::from_utf8_lossy(&csv.stdout).contains("edge_count,4"));
}

#[test]
fn oracles_and_counterexamples() {
    let dir = TempDir::new().unwrap();
    let k3 = write_graph(&dir, "k3.txt", "3 3\n0 1\n0 2\n1 2\n");
    let p3 = write_graph(&dir, "p3.txt", "3 2\n0 1\n1 2\n");
    assert_eq!(
        ok_json(&["oracle", "cc", "--g", &k3, "--h", &p3, "--format", "json"])["cc"],
        2
    );
    assert_eq!(
        ok_json(&["oracle", "identity", "--graph", &k3, "--format", "json"])["identity"],
        true
    );

    let star = ok_json(&["counterexample", "star", "--p", "3", "--format", "json"]);
    assert_eq!(star["cc"], 6);
    assert_eq!(star["m_g"], star["m_h"]);
    let pair_dir = path(&dir, "pair");
    let bic = ok_json(&[
        "counterexample",
        "biclique",
        "--p",
        "4",
        "--dir",
        &pair_dir,
        "--format",
        "json",
    ]);
    assert_eq!(bic["cc"], 4);
    assert!(Path::new(&pair_dir).join("h.txt").exists());
    let cycle = write_graph(
        &dir,
        "c13.txt",
        &(0..13).fold("13 13\n".to_string(), |s, i| {
            let (u, v) = (i, (i + 1) % 13);
            s + &format!("{} {}\n", u.min(v), u.max(v))
        }),
    );
    let dense = ok_json(&[
        "counterexample",
        "densified",
        "--p",
        "3",
        "--filler",
        &cycle,
        "--format",
        "json",
    ]);
    assert_eq!(dense["n"], 26);
    assert!(dense["cc"].as_u64().unwrap() >= 6);
}

#[test]
fn experiment_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let config = write_graph(
        &dir,
        "exp.toml",
        "tasks = [\"edges\"]\n\n[gen]\nfamily = \"random_forest\"\nn = 140\nd = 2\nseed = 1\n\n\
         [removal]\npolicy = \"random\"\nk = 3\ntrials = 30\nseed = 5\n",
    );
    let mut a = ok_json(&["experiment", "run", "--config", &config, "--format", "json"]);
    let mut b = ok_json(&["experiment", "run", "--config", &config, "--format", "json"]);
    assert_eq!(a["aggregate"]["success_rate"], 1.0);
    a["aggregate"]["runtime_ms"] = Value::Null;
    b["aggregate"]["runtime_ms"] = Value::Null;
    assert_eq!(a, b);
    let csv = deckrecon(&["experiment", "run", "--config", &config, "--format", "csv"]);
    assert!(String::from_utf8_lossy(&csv.stdout).contains("edges,30,30,30,1,0"));
}

#[test]
fn verify_flags_corrupted_deck() {
    let dir = TempDir::new().unwrap();
    let bad = write_graph(&dir, "bad.deck", "deck 3 0\ncard 1 1:2\ncard one 0:2\n");
    let out = deckrecon(&["verify", "--level", "fast", "--deck", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error at line 3"));
    assert!(String::from_utf8_lossy(&out.stdout).contains("deck degree identity"));
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let missing = path(&dir, "nope.txt");
    assert_eq!(
        deckrecon(&["recon", "edges", "--deck", &missing]).status.code(),
        Some(2)
    );
    assert_eq!(
        deckrecon(&["gen", "--family", "disjoint-triangles", "--n", "10", "--d", "2"])
            .status
            .code(),
        Some(2)
    );
    let g = path(&dir, "g.txt");
    deckrecon(&["gen", "--family", "cycle", "--n", "10", "--d", "2", "--output", &g]);
    let deck = path(&dir, "g.deck");
    deckrecon(&["deck", "build", "--graph", &g, "--output", &deck]);
    let out = deckrecon(&["deck", "remove", "--deck", &deck, "--k", "1", "--policy", "sideways"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        deckrecon(&["thresholds", "--n", "ten", "--d", "1"]).status.code(),
        Some(2)
    );
}
