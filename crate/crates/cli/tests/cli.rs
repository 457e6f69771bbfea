use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const E1: &str = "# modular: v = (3, 1, 5)\nSKP COV 3 3\n3 1 5\n1 1\n1 2\n1 3\nWEIGHTS EXPLICIT 1 1 2\nBUDGET 2\n";
const E2: &str = "SKP COV 3 3\n1 1 1\n2 1 2\n2 2 3\n2 1 3\nWEIGHTS SCHEME unit 0\nBUDGET 2\n";

fn skp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skp"))
        .args(args)
        .output()
        .unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_e2_reports_optimum() {
    let dir = TempDir::new().unwrap();
    let e2 = write(&dir, "e2.skp", E2);
    let out = skp(&[
        "solve",
        "--instance",
        s(&e2),
        "--bound",
        "rs",
        "--branch",
        "dual",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"optimum\":3.0"), "{text}");
    assert!(text.contains("\"status\":\"optimal\""));
    assert_eq!(text.lines().count(), 1);
}

#[test]
fn solve_csv_and_budget_override() {
    let dir = TempDir::new().unwrap();
    let e1 = write(&dir, "e1.skp", E1);
    let out = skp(&[
        "solve",
        "--instance",
        s(&e1),
        "--format",
        "csv-row",
        "--budget",
        "0.05",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let row = stdout(&out);
    let fields: Vec<&str> = row.trim().split(',').collect();
    assert_eq!(fields.len(), 14);
    assert_eq!(fields[1], "COV");
    assert_eq!(fields[3], "0.05");
    assert_eq!(fields[9], "0");
}

#[test]
fn input_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let e1 = write(&dir, "e1.skp", E1);
    let out = skp(&[
        "solve",
        "--instance",
        s(&e1),
        "--bound",
        "k",
        "--epsilon",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let out = skp(&[
        "solve",
        "--instance",
        s(&e1),
        "--branch",
        "dual",
        "--no-primal",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let bad = write(
        &dir,
        "bad.skp",
        "SKP INF 1 1\n1 1 1.5\nWEIGHTS SCHEME unit 0\nBUDGET 1\n",
    );
    let out = skp(&["solve", "--instance", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1.5"));
    assert_eq!(
        skp(&["solve", "--instance", "/nonexistent/x.skp"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(skp(&["solve", "--bogus"]).status.code(), Some(1));
}

#[test]
fn limit_exit_code() {
    let dir = TempDir::new().unwrap();
    let e2 = write(&dir, "e2.skp", E2);
    let out = skp(&["solve", "--instance", s(&e2), "--time-limit", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("\"time_limit\""));
}

#[test]
fn sweep_e1() {
    let dir = TempDir::new().unwrap();
    let e1 = write(&dir, "e1.skp", E1);
    let out = skp(&[
        "sweep",
        "--instance",
        s(&e1),
        "--w-from",
        "1",
        "--w-to",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("instance_hash,kind,n,W"));
    let optima: Vec<String> = lines
        .map(|l| l.split(',').nth(9).unwrap().to_string())
        .collect();
    assert_eq!(optima, ["3", "5", "8"]);

    let out = skp(&[
        "sweep",
        "--instance",
        s(&e1),
        "--w-from",
        "3",
        "--w-to",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 1);
}

#[test]
fn sweep_early_stop() {
    let dir = TempDir::new().unwrap();
    let e1 = write(&dir, "e1.skp", E1);
    let out = skp(&[
        "sweep",
        "--instance",
        s(&e1),
        "--w-from",
        "1",
        "--w-to",
        "3",
        "--time-limit",
        "0",
        "--early-stop",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 1);
    assert!(rows[0].contains(",time_limit,"));
}

#[test]
fn verify_examples() {
    let dir = TempDir::new().unwrap();
    for (text, opt) in [(E1, "5"), (E2, "3")] {
        let path = write(&dir, "x.skp", text);
        let out = skp(&["verify", "--instance", s(&path)]);
        assert_eq!(out.status.code(), Some(0));
        assert!(
            stdout(&out).contains(&format!("pass: 8/8 agree at {opt}")),
            "{}",
            stdout(&out)
        );
    }
}

#[test]
fn generate_then_verify() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("g.skp");
    let out = skp(&[
        "generate",
        "--kind",
        "inf",
        "--n",
        "9",
        "--m",
        "7",
        "--density",
        "0.4",
        "--scheme",
        "uniform",
        "--budget",
        "3",
        "--seed",
        "5",
        "--output",
        s(&path),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let again = skp(&[
        "generate",
        "--kind",
        "INF",
        "--n",
        "9",
        "--m",
        "7",
        "--density",
        "0.4",
        "--scheme",
        "uniform",
        "--budget",
        "3",
        "--seed",
        "5",
    ]);
    assert_eq!(stdout(&again), std::fs::read_to_string(&path).unwrap());
    let out = skp(&["verify", "--instance", s(&path)]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let big = dir.path().join("big.skp");
    skp(&[
        "generate",
        "--kind",
        "dom",
        "--n",
        "30",
        "--budget",
        "3",
        "--output",
        s(&big),
    ]);
    assert_eq!(
        skp(&["verify", "--instance", s(&big)]).status.code(),
        Some(1)
    );
}
