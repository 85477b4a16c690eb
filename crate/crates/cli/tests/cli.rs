use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn avoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_avoid")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

#[test]
fn gen_pairs() {
    let out = avoid(&["gen", "pairs", "--b", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["n"], 6);
    assert_eq!(v["lines"]["explicit"].as_array().unwrap().len(), 10);
}

#[test]
fn gen_round_trip() {
    for expr in ["pairs(3)", "odd-composite(3,3)", "cycle(6)"] {
        let out = avoid(&["gen", "--game", expr]);
        assert!(out.status.success());
        let path = std::env::temp_dir().join(format!("avoid-{}-{expr}.json", std::process::id()));
        std::fs::write(&path, &out.stdout).unwrap();
        let from_file = json(&avoid(&["solve", "--game-file", path.to_str().unwrap()]));
        let direct = json(&avoid(&["solve", "--game", expr]));
        assert_eq!(from_file, direct, "{expr}");
        std::fs::remove_file(path).unwrap();
    }
}

#[test]
fn solve_reports() {
    let v = json(&avoid(&["solve", "--game", "torus(3,1)"]));
    assert_eq!(v["outcome"], "Draw");
    assert_eq!(v["loss_time"], Value::Null);
    let v = json(&avoid(&["solve", "--game", "pairs(3)", "--earliest"]));
    assert_eq!(v["outcome"], "PIWin");
    assert_eq!(v["earliest_forced_loss"], 6);
    let v = json(&avoid(&["solve-plus", "--game", "cycle(4)"]));
    assert_ne!(v["outcome"], "PIWin");
}

#[test]
fn lemma_suite() {
    let out = avoid(&["verify-lemma", "key-lemma", "--m", "8"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v[0]["cases"], 80);
    assert_eq!(v[0]["failures"], 0);
    assert_eq!(avoid(&["verify-lemma", "no-such-lemma"]).status.code(), Some(2));
}

#[test]
fn strategy_verdicts_set_exit_status() {
    let out = avoid(&["verify-strategy", "--game", "pairs(3)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "Pass");

    let out = avoid(&["verify-strategy", "--game", "pairs(3)", "--strategy", "naive"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "Counterexample");
    assert!(!v["history"].as_array().unwrap().is_empty());

    let args = ["verify-strategy", "--game", "torus(3,3)", "--mode", "sampled", "--playouts", "500", "--seed", "9"];
    let a = avoid(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(json(&a)["seed"], 9);
    assert_eq!(json(&a)["goal"], "neverlose");
    assert_eq!(a.stdout, avoid(&args).stdout);
}

#[test]
fn refusals_exit_2() {
    assert_eq!(avoid(&["solve", "--game", "nope(3)"]).status.code(), Some(2));
    assert_eq!(avoid(&["solve", "--game", "pairs(4)"]).status.code(), Some(2));
    assert_eq!(avoid(&["solve", "--game", "odd-composite(3,7)"]).status.code(), Some(2));
    assert_eq!(avoid(&["solve"]).status.code(), Some(2));
    assert_eq!(avoid(&["verify-strategy", "--game", "pairs(3)", "--strategy", "odd-bucket"]).status.code(), Some(2));
    let path = std::env::temp_dir().join(format!("avoid-{}-bad.json", std::process::id()));
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(avoid(&["solve", "--game-file", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_file(path).unwrap();
    assert_eq!(avoid(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn catalog_and_transitivity() {
    let v = json(&avoid(&["catalog"]));
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    for n in ["odd-composite", "pairs", "even-general", "torus", "copies", "product-torus", "affine"] {
        assert!(names.contains(&n), "{n} missing");
    }
    let out = avoid(&["check-transitive", "--game", "torus(3,2)"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["transitive"], true);
}

#[test]
fn play_rejects_illegal_moves() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_avoid"))
        .args(["play", "--game", "pairs(3)", "--human", "pii"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"17\nfoo\n1\n3\n5\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("illegal move \"17\""));
    assert!(text.contains("illegal move \"foo\""));
    assert!(text.contains("PI plays"));
}
