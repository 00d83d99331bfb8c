use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_antimatch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn induce_example_one() {
    let path = data("example1.json");
    let out = run(&["induce", "--kind", "stable", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["antimatroid"], json!(true));
    assert_eq!(
        doc["family"]["sets"],
        json!([[], ["v1"], ["v2"], ["v1", "v2"], ["v1", "v2", "v3"]])
    );
}

#[test]
fn induce_example_two() {
    let path = data("example2.json");
    let out = run(&["induce", "--kind", "weighted", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_json(&out)["family"]["sets"],
        json!([[], ["v1"], ["v1", "v2"]])
    );
}

#[test]
fn missing_union_is_reported() {
    let path = data("missing_union.json");
    let out = run(&["verify-family", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let witness = &stdout_json(&out)["violation"]["witness"];
    assert_eq!(witness["axiom"], "union-closure");
    assert_eq!(witness["union"], json!(["v1", "v2"]));
}

#[test]
fn empty_family_roundtrips() {
    let path = data("empty_family.json");
    for kind in ["stable", "weighted"] {
        let out = run(&["roundtrip", "--kind", kind, path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout_json(&out)["equal"], json!(true));
    }
}

#[test]
fn chain_roundtrips_both_kinds() {
    let path = data("chain_ab.json");
    for kind in ["stable", "weighted"] {
        let out = run(&["roundtrip", "--kind", kind, path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{kind}");
    }
}

#[test]
fn represent_rejects_non_antimatroids() {
    let path = data("missing_union.json");
    let out = run(&["represent", "--kind", "stable", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn represented_instance_induces_the_family() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    let path = data("chain_ab.json");
    let out = run(&[
        "represent",
        "--kind",
        "weighted",
        path.to_str().unwrap(),
        "--out",
        inst.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["induce", "--kind", "weighted", inst.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_json(&out)["family"]["sets"],
        json!([[], ["a"], ["a", "b"]])
    );
}

#[test]
fn malformed_input_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"ground\": [\n").unwrap();
    let out = run(&["verify-family", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn missing_file_is_an_input_error() {
    let out = run(&["induce", "--kind", "stable", "/nonexistent/instance.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_limit_is_enforced() {
    let path = data("example1.json");
    let out = run(&[
        "induce",
        "--kind",
        "stable",
        "--sweep-limit",
        "2",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let example = data("example1.json");
    let chain = data("chain_ab.json");
    let dir = tempfile::tempdir().unwrap();
    let cx = dir.path().join("cx");
    let cases: [&[&str]; 3] = [
        &["induce", "--kind", "stable", example.to_str().unwrap()],
        &["represent", "--kind", "weighted", chain.to_str().unwrap()],
        &[
            "fuzz",
            "--kind",
            "stable",
            "--count",
            "20",
            "--seed",
            "5",
            "--counterexamples",
            cx.to_str().unwrap(),
        ],
    ];
    for args in cases {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn fuzz_counterexamples_replay() {
    let dir = tempfile::tempdir().unwrap();
    let cx = dir.path().join("cx");
    let out = run(&[
        "fuzz",
        "--kind",
        "weighted",
        "--target",
        "roundtrip",
        "--formula",
        "literal",
        "--count",
        "40",
        "--max-size",
        "4",
        "--counterexamples",
        cx.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc = stdout_json(&out);
    let failures = doc["failures"].as_array().unwrap();
    assert!(!failures.is_empty());
    for f in failures {
        let file = f["file"].as_str().unwrap();
        let replay = run(&[
            "roundtrip",
            "--kind",
            "weighted",
            "--formula",
            "literal",
            file,
        ]);
        assert_eq!(replay.status.code(), Some(1));
        assert_eq!(stdout_json(&replay), f["failure"]);
        let fixed = run(&["roundtrip", "--kind", "weighted", file]);
        assert_eq!(fixed.status.code(), Some(0));
    }
}

#[test]
fn clean_fuzz_run_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let cx = dir.path().join("cx");
    for kind in ["stable", "weighted"] {
        let out = run(&[
            "fuzz",
            "--kind",
            kind,
            "--count",
            "30",
            "--counterexamples",
            cx.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{kind}");
        assert_eq!(stdout_json(&out)["counterexamples"], json!(0));
    }
    assert!(!cx.exists());
}

#[test]
fn oracle_check_agrees_on_example_two() {
    let path = data("example2.json");
    let out = run(&["oracle-check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["agree"], json!(true));
    assert_eq!(doc["compared"], json!(8));
}
