use std::process::{Command, Output};

fn ghw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ghw")).args(args).env_remove("GHW_MAX_DIM").output().expect("run ghw")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const DIDICOSM: &str = "dim=3; gens=+--:HH0,-+-:0HH";

#[test]
fn enumerate_writes_one_line_per_class() {
    let out = ghw(&["enumerate", "--dim", "4", "--deterministic"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 12);
    let out = ghw(&["enumerate", "--dim", "2", "--deterministic"]);
    assert_eq!(stdout(&out).lines().count(), 1);
}

#[test]
fn exit_codes() {
    assert_eq!(ghw(&["enumerate", "--dim", "99"]).status.code(), Some(1));
    assert_eq!(ghw(&["enumerate", "--dim", "6"]).status.code(), Some(1));
    assert_eq!(ghw(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(ghw(&["--help"]).status.code(), Some(0));
    assert_eq!(ghw(&["--version"]).status.code(), Some(0));
    let out = ghw(&["enumerate", "--dim", "6", "--extended", "--budget", "0.001"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ghw"))
        .args(["enumerate", "--dim", "4"])
        .env("GHW_MAX_DIM", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn betti_of_didicosm() {
    let out = ghw(&["betti", "--group", DIDICOSM]);
    assert_eq!(stdout(&out).trim(), "[1,0,0,1]");
}

#[test]
fn parse_errors_report_position() {
    let out = ghw(&["betti", "--group", "dim=3; gens=+--:HX0"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("line 1"), "{err}");
    assert!(err.contains("column"), "{err}");
}

#[test]
fn group_literal_from_stdin() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_ghw"))
        .arg("out-order")
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"dim=3; gens=-++:0H0,+-+:00H").unwrap();
    let out = child.wait_with_output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["out_order"], 8);
}

#[test]
fn table_rows() {
    let out = ghw(&["table", "--max-dim", "4", "--deterministic"]);
    let rows: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let totals: Vec<u64> = rows.iter().map(|r| r["total"].as_u64().unwrap()).collect();
    assert_eq!(totals, [1, 3, 12]);
}

#[test]
fn graph_files() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let json = dir.path().join("g.json");
    let out = ghw(&[
        "graph",
        "--max-dim",
        "4",
        "--deterministic",
        "--dot",
        dot.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let summary: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(summary["vertices"], 16);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(text.matches(" [label=").count(), 16);
    let edges: Vec<serde_json::Value> = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(edges.len() as u64, summary["edges"].as_u64().unwrap());
    assert!(edges.iter().all(|e| e["from"].is_string() && e["to"].is_string() && e["witness"].is_object()));
}

#[test]
fn constructions_by_name() {
    let klein = stdout(&ghw(&["klein", "--dim", "3"]));
    let klein: serde_json::Value = serde_json::from_str(&klein).unwrap();
    assert_eq!(klein["group"], "dim=3; gens=-++:0H0,+-+:00H");
    let gamma: serde_json::Value = serde_json::from_str(&stdout(&ghw(&["gamma", "--dim", "3"]))).unwrap();
    let iso = ghw(&["isomorphic", "--left", gamma["group"].as_str().unwrap(), "--right", DIDICOSM]);
    assert_eq!(stdout(&iso).trim(), "true");

    let reduce = ghw(&["reduce", "--group", DIDICOSM]);
    assert!(stdout(&reduce).lines().count() >= 1);
    let reduce = ghw(&["reduce", "--group", DIDICOSM, "--coordinate", "2"]);
    assert!(reduce.status.success());

    let realize = ghw(&["realize", "--rep", "dim=3; gens=+--,-+-"]);
    assert!(realize.status.success());

    for cmd in ["embed-exist", "semidirect", "didicosm-witness", "out-order"] {
        let out = ghw(&[cmd, "--group", DIDICOSM]);
        assert!(out.status.success(), "{cmd}");
    }
    let mono: serde_json::Value = serde_json::from_str(&stdout(&ghw(&["embed-mono", "--dim", "3"]))).unwrap();
    assert_eq!(mono["verified"], true);
    assert_eq!(mono["non_normal"]["outside_image"], true);

    let not_oriented = ghw(&["semidirect", "--group", klein["group"].as_str().unwrap()]);
    assert_eq!(not_oriented.status.code(), Some(1));
}

#[test]
fn closed_stdout_is_not_an_error() {
    use std::io::{BufRead, BufReader};
    let mut child = Command::new(env!("CARGO_BIN_EXE_ghw"))
        .args(["enumerate", "--dim", "6", "--extended", "--deterministic"])
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    let mut first = String::new();
    BufReader::new(child.stdout.take().unwrap()).read_line(&mut first).unwrap();
    assert!(first.starts_with("{\"dim\":6"));
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}
