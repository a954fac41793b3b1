use std::process::{Command, Output};

use serde_json::Value;

fn taumackey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_taumackey"))
        .args(args)
        .env_remove("TAUMACKEY_SEED")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn quaternion_simply_reducible() {
    let out = taumackey(&["simply-reducible", "--group", r#"{"family":"quaternion8"}"#, "--tau", "inverse"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["result"]["verdict"], Value::Bool(true));
    assert_eq!(r["result"]["routes"]["mackey_cosets"], Value::Bool(true));
}

#[test]
fn power_sums_are_strings() {
    let out = taumackey(&["power-sums", "--group", r#"{"family":"symmetric","n":3}"#, "--tau", "inverse", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["result"]["power_sums"]["sum_v_n"], "66");
    assert_eq!(r["result"]["power_sums"]["sum_zeta_n1"], "66");
}

#[test]
fn trivial_character_table() {
    let out = taumackey(&["char-table", "--group", r#"{"family":"cyclic","n":1}"#]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["rows"], serde_json::json!([["1"]]));
}

#[test]
fn usage_errors_exit_one() {
    let out = taumackey(&["fs", "--group", r#"{"family":"symmetric"}"#]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("group: missing field `n`"));
    assert_eq!(taumackey(&["fs", "--group", "{not json"]).status.code(), Some(1));
    assert_eq!(taumackey(&["no-such-command"]).status.code(), Some(1));
    let out = taumackey(&["fs", "--group", r#"{"family":"symmetric","n":3}"#, "--tau", "identity"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn seed_from_environment_and_text_output() {
    let out = Command::new(env!("CARGO_BIN_EXE_taumackey"))
        .args(["fs", "--group", r#"{"family":"dihedral","n":4}"#, "--format", "text"])
        .env("TAUMACKEY_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "seed: 99"));
    assert!(text.lines().any(|l| l == "status: ok"));
}

#[test]
fn group_from_file_and_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("g.json");
    std::fs::write(&spec, r#"{"generators": ["(1 2 3 4)", "(1 3)"], "degree": 4}"#).unwrap();
    let out_path = dir.path().join("report.json");
    let out = taumackey(&[
        "char-table",
        "--group",
        &format!("@{}", spec.display()),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(r["result"]["order"], "8");
    assert_eq!(r["result"]["degrees"], serde_json::json!([1, 1, 1, 1, 2]));
}

#[test]
fn batch_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.json");
    std::fs::write(
        &manifest,
        r#"[{"command": "condition-star", "group": {"family": "symmetric", "n": 4}, "sigma": {"conjugation": "(1 2)(3 4)"}}]"#,
    )
    .unwrap();
    let cache = dir.path().join("cache");
    let run = || {
        taumackey(&[
            "batch",
            manifest.to_str().unwrap(),
            "--cache-dir",
            cache.to_str().unwrap(),
        ])
    };
    let first = run();
    assert_eq!(first.status.code(), Some(0));
    let second = run();
    assert!(String::from_utf8_lossy(&second.stderr).contains("1 cache hits"));
    assert_eq!(first.stdout, second.stdout);
}
