//! Runs the `elemsym` binary on the bundled samples.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use elemsym::ideal::IdealPresentation;
use elemsym::matrix::ExactMatrix;
use elemsym::{RingDescriptor, Word};
use serde_json::{json, Value as Json};

fn sample(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("samples").join(format!("{name}.json"))
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_elemsym"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            pipe.write_all(s.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn run_sample(cmd: &str) -> (i32, Json) {
    let path = sample(cmd);
    let out = run(&[cmd, "--json", "--in", path.to_str().unwrap()], None);
    let doc = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), doc)
}

fn input(cmd: &str) -> Json {
    serde_json::from_str(&std::fs::read_to_string(sample(cmd)).unwrap()).unwrap()
}

#[test]
fn samples_verify() {
    for cmd in ["decompose", "rewrite", "pfaffian", "standardize", "expand"] {
        let (code, doc) = run_sample(cmd);
        assert_eq!(code, 0, "{cmd}: {doc}");
        assert_eq!(doc["verified"], json!(true), "{cmd}");
    }
}

#[test]
fn output_is_deterministic() {
    for cmd in ["decompose", "rewrite", "standardize", "expand"] {
        let path = sample(cmd);
        let a = run(&[cmd, "--in", path.to_str().unwrap()], None);
        let b = run(&[cmd, "--in", path.to_str().unwrap()], None);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
    let a = run(&["verify", "--suite", "relations", "--trials", "20", "--seed", "5", "--json"], None);
    let b = run(&["verify", "--suite", "relations", "--trials", "20", "--seed", "5", "--json"], None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn stdin_matches_file_input() {
    let text = std::fs::read_to_string(sample("pfaffian")).unwrap();
    let piped = run(&["pfaffian", "--json"], Some(&text));
    let (_, doc) = run_sample("pfaffian");
    assert_eq!(serde_json::from_slice::<Json>(&piped.stdout).unwrap(), doc);
    assert_eq!(doc["pfaffian"], json!(8));
    assert_eq!(doc["det"], json!(10));
}

#[test]
fn decomposition_output_round_trips() {
    let (_, doc) = run_sample("decompose");
    let inp = input("decompose");
    let ring = RingDescriptor::from_json(&inp["ring"]).unwrap();
    let ideal = IdealPresentation::from_json(Some(&ring), &inp["ideal"]).unwrap();
    let w = Word::from_json(&ring, 6, Some(&ideal), &doc["output"]).unwrap();
    assert_eq!(w.to_json(), doc["output"]);
    assert!(w.all_certified_in(&ideal));
    let achieved = ExactMatrix::from_json(&ring, &doc["achieved"]).unwrap();
    let target = ExactMatrix::from_json(&ring, &doc["target"]).unwrap();
    assert_eq!(achieved.to_json(), doc["achieved"]);
    assert_eq!(w.evaluate().unwrap(), target);
    assert_eq!(achieved, target);
}

#[test]
fn flags_supply_ring_and_ideal() {
    let mut inp = input("standardize");
    let obj = inp.as_object_mut().unwrap();
    obj.remove("ring");
    obj.remove("ideal");
    let out = run(
        &["standardize", "--json", "--ring", r#"{"kind":"zmod","m":27}"#, "--ideal", "[3]"],
        Some(&inp.to_string()),
    );
    assert_eq!(out.status.code(), Some(0));
    let (_, doc) = run_sample("standardize");
    assert_eq!(serde_json::from_slice::<Json>(&out.stdout).unwrap(), doc);
}

#[test]
fn malformed_input_exits_2() {
    let bad = [
        ("pfaffian", r#"{"ring":{"kind":"zmod","m":-4},"matrix":[[0]]}"#),
        ("pfaffian", "not json"),
        ("pfaffian", r#"{"ring":{"kind":"zmod","m":27},"matrix":[[0,1],[2,0]]}"#),
        ("decompose", r#"{"ring":{"kind":"zmod","m":27},"ideal":[3],"n":2,"g":[],"i":1,"j":2,"a":[1],"b":[1]}"#),
        ("decompose", r#"{"ring":{"kind":"zmod","m":8},"ideal":[2],"n":3,"g":[],"i":1,"j":2,"a":[1],"b":[1]}"#),
    ];
    for (cmd, text) in bad {
        let out = run(&[cmd, "--json"], Some(text));
        assert_eq!(out.status.code(), Some(2), "{cmd} {text}");
        let doc: Json = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(doc["verified"], json!(false));
        assert!(doc["error"].is_string());
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(run(&["verify", "--suite", "nonsense"], None).status.code(), Some(2));
}

#[test]
fn verification_failure_exits_1_with_location() {
    // Opposite long-root conjugation outside I³ = 0 has no exact short-root form.
    let text = json!({
        "mode": "symplectic",
        "ring": {"kind": "poly", "base": {"kind": "zmod", "m": 27}, "vars": ["T"]},
        "ideal": [[[{"T": 1}, 1]]],
        "n": 3,
        "eps": [{"gen": "se", "i": 2, "j": 1, "param": [[{"T": 1}, 1]], "cert": [1]}],
        "i": 1,
        "j": 2,
        "aPoly": [[[{"X": 1}, 1]]]
    });
    let out = run(&["rewrite", "--json"], Some(&text.to_string()));
    assert_eq!(out.status.code(), Some(1));
    let doc: Json = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["verified"], json!(false));
    let msg = doc["error"].as_str().unwrap();
    assert!(msg.contains("entry ("), "{msg}");
    assert!(msg.contains("expected"), "{msg}");
}
