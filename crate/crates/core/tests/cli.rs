use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypertope")).args(args).output().expect("the binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const MOORE_S5: &str = "(0 1)\n(1 2)\n(2 3)\n(3 4)\n";
// i-edges {0,1} and {5,6} far apart
const FAR_APART: &str = "# fails the intersection property\n(0 1)(5 6)\n(1 2)\n(4 5)\n";

#[test]
fn enumerate_trees_on_seven_points() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("trees.jsonl");
    let o = run(&["enumerate", "--n", "7", "--rank", "n-1", "--jobs", "1", "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 11);
    assert!(lines.iter().all(|v| v["report"]["c_group"] == Value::Bool(true)));
}

#[test]
fn enumerate_rejects_bad_arguments() {
    assert_eq!(code(&run(&["enumerate", "--n", "5", "--rank", "n-1"])), 1);
    assert_eq!(code(&run(&["enumerate", "--n", "7", "--rank", "n-1", "--family", "A"])), 1);
    assert_eq!(code(&run(&["enumerate", "--n", "7", "--rank", "n-3"])), 1);
    assert_eq!(code(&run(&["enumerate", "--n", "7", "--rank", "n-1", "--jobs", "0"])), 1);
    assert_eq!(code(&run(&[])), 1);
}

#[test]
fn verify_a_string_group() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "s5.txt", MOORE_S5);
    let o = run(&["verify", s(&f)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], 120);
    assert_eq!(v["c_group"], true);
    assert_eq!(v["symmetric"], true);
}

#[test]
fn verify_reports_a_witness() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.txt", FAR_APART);
    let o = run(&["verify", s(&f), "--n", "7"]);
    assert_eq!(code(&o), 2);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["c_group"], false);
    assert!(v["witness"].is_object());
}

#[test]
fn verify_rejects_malformed_input() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.txt", "(0 1\n");
    assert_eq!(code(&run(&["verify", s(&f)])), 1);
    assert_eq!(code(&run(&["verify", s(&dir.path().join("missing.txt"))])), 1);
}

#[test]
fn chamber_limit_is_a_resource_failure() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "s5.txt", MOORE_S5);
    assert_eq!(code(&run(&["verify", s(&f), "--chamber-limit", "3"])), 3);
}

#[test]
fn present_a_tree() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "s5.txt", MOORE_S5);
    let o = run(&["present", s(&f)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(String::from_utf8_lossy(&o.stdout).lines().next().unwrap()).unwrap();
    assert_eq!(v["presented_order"], 120);
    assert_eq!(v["certified"], true);
}

#[test]
fn present_out_of_room_is_inconclusive() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "s5.txt", MOORE_S5);
    assert_eq!(code(&run(&["present", s(&f), "--coset-limit", "20"])), 4);
}

#[test]
fn present_all_trees_on_five_points() {
    let o = run(&["present", "--n", "5", "--rank", "n-1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 3);
}

#[test]
fn screen_flags_a_distance_two_pair() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "d2.txt", "(0 1)(4 5)\n(1 2)\n(2 3)\n(3 4)\n(5 6)\n(6 7)\n(7 8)\n");
    let o = run(&["screen", s(&f)]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["conditions"]["distance"], false);
    assert_eq!(v["passes"], false);
    assert_eq!(code(&o), 2);
}

#[test]
fn export_dot_kinds() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "s5.txt", MOORE_S5);
    for what in ["graph", "fracture", "diagram", "geometry"] {
        let out = dir.path().join(format!("{what}.dot"));
        let o = run(&["export-dot", s(&f), "--what", what, "--out", s(&out)]);
        assert_eq!(code(&o), 0, "{what}: {}", String::from_utf8_lossy(&o.stderr));
        let text = std::fs::read_to_string(&out).unwrap();
        assert!(text.contains("graph") && text.trim_end().ends_with('}'), "{what}: {text}");
    }
}
