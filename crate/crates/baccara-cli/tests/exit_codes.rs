use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_baccara")).args(args).output().unwrap()
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["solve", "--decks", "0"][..],
        &["solve", "--decks", "2..4"],
        &["solve", "--alpha", "1/5"],
        &["solve", "--format", "csv"],
        &["verify", "--format", "csv", "--decks", "3"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn empty_sweep_succeeds() {
    let out = run(&["sweep", "--decks", "5..4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
}

#[test]
fn verify_passes_with_exit_0() {
    let out = run(&["verify", "--model", "b2", "--decks", "3", "--alpha", "1/20"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let out = run(&["verify", "--oracle", "--seeds", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], serde_json::Value::Bool(true));
}

#[test]
fn solve_writes_to_file() {
    let path = std::env::temp_dir().join(format!("baccara-solve-{}.json", std::process::id()));
    let out = run(&["solve", "--decks", "3", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["decks"], 3);
    assert_eq!(v["model"], "b2");
    std::fs::remove_file(path).unwrap();
}
