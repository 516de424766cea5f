use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hibi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hibi"))
        .args(args)
        .env_remove("HIBI_SEED")
        .output()
        .expect("run hibi")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_reports_size_and_dimension() {
    let out = hibi(&["build", "--minuscule", "C3:1"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("6 elements, dim 6"));
    assert_eq!(json(&out)["labels"].as_array().unwrap().len(), 6);
    let out = hibi(&["build", "--minuscule", "A3:2"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("6 elements, dim 5"));
}

#[test]
fn invalid_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cyc = dir.path().join("bad.json");
    fs::write(&cyc, r#"{"labels": ["p", "q"], "covers": [[0, 1], [1, 0]]}"#).unwrap();
    assert_eq!(hibi(&["build", "--poset", path(&cyc)]).status.code(), Some(2));

    let full = hibi(&["build", "--minuscule", "A3:2"]).stdout;
    let trunc = dir.path().join("trunc.json");
    fs::write(&trunc, &full[..full.len() / 2]).unwrap();
    assert_eq!(hibi(&["verify", path(&trunc)]).status.code(), Some(2));

    assert_eq!(hibi(&["build", "--minuscule", "A3:7"]).status.code(), Some(2));
    assert_eq!(hibi(&["build", "--chain", "0"]).status.code(), Some(2));
    assert_eq!(hibi(&["random-grid", "--width", "0"]).status.code(), Some(2));
    assert_eq!(hibi(&["build"]).status.code(), Some(2));
    // join irreducibles form a 3-element antichain: no grid embedding
    let b3 = dir.path().join("b3.json");
    fs::write(&b3, r#"{"labels": ["x", "y", "z"], "covers": []}"#).unwrap();
    assert_eq!(hibi(&["analyze", "--poset", path(&b3)]).status.code(), Some(2));
    assert_eq!(hibi(&["grid-embed", "--poset", path(&b3)]).status.code(), Some(2));
}

#[test]
fn analyze_reports() {
    let l6 = json(&hibi(&["analyze", "--minuscule", "A3:2"]));
    assert_eq!(l6["singularComponents"], 1);
    assert_eq!(l6["pureCodim3"], true);
    assert_eq!(l6["pairs"][0]["type"], "QuadricCone");
    assert_eq!(l6["pairs"][0]["faceDim"], 3);

    let chain = json(&hibi(&["analyze", "--chain", "10"]));
    assert_eq!(chain["singularComponents"], 0);
    assert_eq!(chain["smooth"], true);

    let ex = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/example13.json");
    let r = json(&hibi(&["analyze", "--grid", ex]));
    assert_eq!(r["singularComponents"], 5);
    let mus: Vec<Value> = r["pairs"].as_array().unwrap().iter().map(|p| p["mu"].clone()).collect();
    assert_eq!(serde_json::to_string(&mus).unwrap(), "[[1,3],[2,3],[2,4],[2,5],[3,5]]");
}

#[test]
fn analyze_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("l6.dot");
    let out = hibi(&["analyze", "--minuscule", "A3:2", "--dot", path(&dot)]);
    assert!(out.status.success());
    let text = fs::read_to_string(&dot).unwrap();
    assert!(text.contains("rankdir=BT"));
    assert_eq!(text.matches("fillcolor").count(), 4);
}

#[test]
fn verify_exit_codes_and_determinism() {
    for args in [&["verify", "--minuscule", "A4:2"][..], &["verify", "--minuscule", "A3:2"], &["verify", "--chain", "6"]] {
        let out = hibi(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(json(&out)["allAgree"], true);
    }
    let run = |extra: &[&str]| {
        let mut args = vec!["verify", "--minuscule", "E6:1", "--faces", "--seed", "5"];
        args.extend_from_slice(extra);
        hibi(&args).stdout
    };
    let a = run(&[]);
    assert_eq!(a, run(&[]));
    let mut r: Value = serde_json::from_slice(&a).unwrap();
    let mut p: Value = serde_json::from_slice(&run(&["--parallelism", "4"])).unwrap();
    assert_eq!(p["config"]["parallelism"], 4);
    r["config"]["parallelism"] = 0.into();
    p["config"]["parallelism"] = 0.into();
    assert_eq!(r, p);
    assert_eq!(r["mode"], "sampled");
    assert_eq!(r["config"]["seed"], 5);
}

#[test]
fn random_grid_matches_golden() {
    let golden = fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/random_grid_seed42_5x5.json")).unwrap();
    let out = hibi(&["random-grid", "--width", "5", "--height", "5", "--seed", "42"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
    // the environment seed wins over the flag
    let out = Command::new(env!("CARGO_BIN_EXE_hibi"))
        .args(["random-grid", "--width", "5", "--height", "5", "--seed", "7"])
        .env("HIBI_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
}

#[test]
fn random_grid_single_point() {
    let r = json(&hibi(&["random-grid", "--width", "1", "--height", "1", "--seed", "3"]));
    assert_eq!(r["points"], serde_json::json!([[1, 1]]));
}

#[test]
fn grid_embed_of_e7() {
    let r = json(&hibi(&["grid-embed", "--minuscule", "E7:7"]));
    assert_eq!(r["points"].as_array().unwrap().len(), 27);
    assert_eq!(r["labels"].as_array().unwrap().len(), 27);
}

#[test]
fn build_output_roundtrips() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("d5.json");
    assert!(hibi(&["build", "--minuscule", "D5:1", "-o", path(&f)]).status.success());
    let r = json(&hibi(&["analyze", path(&f)]));
    assert_eq!(r["numElements"], 10);
    assert_eq!(r["lattice"], "D5:1");
}
