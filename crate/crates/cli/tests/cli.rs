use std::path::Path;
use std::process::{Command, Output};

use cheeger::bench::parse_csv;
use cheeger::Ratio;

fn cheeger(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cheeger"))
        .args(args)
        .current_dir(dir)
        .env_remove("CHEEGER_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str], dir: &Path) -> String {
    let o = cheeger(args, dir);
    assert!(o.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn gen_then_exact() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["gen", "--family", "petersen", "--out", "g.el"], dir.path());
    let out = ok(&["exact", "g.el"], dir.path());
    assert_eq!(out.lines().next(), Some("1/3"));
    assert_eq!(out.lines().filter(|l| l.starts_with("cut ")).count(), 6);
    let out = ok(&["exact", "path:10"], dir.path());
    assert_eq!(out.lines().next(), Some("1/9"));
}

#[test]
fn gen_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let text = ok(&["gen", "--family", "roach", "--size", "20"], dir.path());
    assert!(text.lines().any(|l| l.starts_with("20 ")));
    assert_eq!(cheeger(&["gen", "--family", "roach", "--size", "10"], dir.path()).status.code(), Some(1));
    assert_eq!(cheeger(&["gen", "--family", "path"], dir.path()).status.code(), Some(1));
}

#[test]
fn verify_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&["gen", "--family", "path", "--size", "10", "--out", "p.el"], d);
    std::fs::write(d.join("const.txt"), "1\n".repeat(10)).unwrap();
    assert_eq!(ok(&["verify", "--graph", "p.el", "--vec", "const.txt", "--mu", "0"], d).trim(), "eigenpair: yes");
    std::fs::write(d.join("w.txt"), "# first five\n1/9\n1/9\n1/9\n1/9\n1/9\n0\n0\n0\n0\n0\n").unwrap();
    assert_eq!(ok(&["verify", "--graph", "p.el", "--vec", "w.txt", "--mu", "1/9"], d).trim(), "eigenpair: yes");
    // 1/9 + 4/(n²(n−1)²) with n = 10
    assert_eq!(ok(&["verify", "--graph", "p.el", "--vec", "w.txt", "--mu", "226/2025"], d).trim(), "eigenpair: no");
    std::fs::write(d.join("short.txt"), "1\n1\n").unwrap();
    assert_eq!(cheeger(&["verify", "--graph", "p.el", "--vec", "short.txt", "--mu", "0"], d).status.code(), Some(1));
}

#[test]
fn spectrum_lists_zero_then_h() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(&["spectrum", "petersen"], dir.path());
    let firsts: Vec<&str> = out.lines().map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(&firsts[..2], &["0/1", "1/3"]);
}

#[test]
fn run_prints_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(&["run", "--graph", "petersen", "--method", "cd1", "--seed", "3", "--out-vec", "x.txt"], dir.path());
    assert!(out.contains("termination "));
    assert!(out.lines().any(|l| l.starts_with("h~ ")));
    let x = std::fs::read_to_string(dir.path().join("x.txt")).unwrap();
    assert_eq!(x.lines().count(), 10);
    let again = ok(&["run", "--graph", "petersen", "--method", "ip", "--vec", "x.txt"], dir.path());
    assert!(again.contains("method ip"));
}

#[test]
fn bench_csv_rows_determinism_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&["gen", "--family", "petersen", "--out", "g.el"], d);
    let table = ok(
        &["bench", "--graph", "g.el", "--methods", "ip,sd,cd1,cd2", "--inits", "1000", "--seed", "42", "--out", "r.csv"],
        d,
    );
    let csv = std::fs::read_to_string(d.join("r.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4001);
    let records = parse_csv(&csv).unwrap();
    assert!(records.iter().all(|r| r.h >= Ratio::new(1, 3)));

    ok(&["bench", "--graph", "g.el", "--inits", "1000", "--seed", "42", "--jobs", "1", "--out", "r1.csv"], d);
    assert_eq!(std::fs::read_to_string(d.join("r1.csv")).unwrap(), csv);

    let summary = ok(&["summary", "r.csv", "--graph", "g.el"], d);
    assert_eq!(summary, table);
    let header = table.lines().nth(1).unwrap();
    let pos: Vec<usize> = ["IP", "SD", "CD1", "CD2"].iter().map(|m| header.find(m).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn seed_falls_back_to_environment() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&["bench", "--graph", "path:6", "--inits", "20", "--seed", "7", "--out", "a.csv"], d);
    let o = Command::new(env!("CARGO_BIN_EXE_cheeger"))
        .args(["bench", "--graph", "path:6", "--inits", "20", "--out", "b.csv"])
        .current_dir(d)
        .env("CHEEGER_SEED", "7")
        .output()
        .unwrap();
    assert!(o.status.success());
    let a = std::fs::read_to_string(d.join("a.csv")).unwrap();
    assert_eq!(a, std::fs::read_to_string(d.join("b.csv")).unwrap());
    assert!(a.lines().nth(1).unwrap().contains(",7,"));
}

#[test]
fn user_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for args in [
        &["frobnicate"][..],
        &["exact", "--bogus", "petersen"],
        &["exact", "no-such-graph"],
        &["bench", "--graph", "petersen", "--methods", "ip,cd3"],
        &["bench", "--graph", "petersen", "--inits", "0"],
        &["summary", "missing.csv"],
        &["verify", "--graph", "petersen", "--vec", "missing.txt", "--mu", "0"],
    ] {
        let o = cheeger(args, d);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(cheeger(&["--help"], d).status.code(), Some(0));
}
