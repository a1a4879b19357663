//! End-to-end checks of the command-line binary: exit codes, artifact
//! round trips, replay determinism, and parallelism invariance.
//!
//! Every test here drives the compiled binary through `std::process` so
//! the full argument-parsing, file-format, and manifest paths are
//! exercised exactly as a user would hit them.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_protoldpc"))
}

fn workspace_file(relative: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(relative)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary launches")
}

fn run_ok(args: &[&str]) -> Output {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed:\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("read {name}: {e}"))
}

/// Drops the wall-clock lines, the only fields allowed to vary between
/// replays of the same command.
fn stable_lines(text: &str) -> String {
    text.lines()
        .filter(|l| !l.contains("duration_seconds") && !l.contains("wall_time_seconds"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().join("out");
    let out_dir = out_dir.to_str().unwrap();

    // Unreadable input file: exit 2.
    let out = run(&["threshold", "--matrix", "/nonexistent/m.txt", "--out-dir", out_dir]);
    assert_eq!(out.status.code(), Some(2));

    // Malformed matrix text: exit 2.
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "2 2\n1 x\n0 1\n").unwrap();
    let out = run(&["threshold", "--matrix", bad.to_str().unwrap(), "--out-dir", out_dir]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad entry"));

    // Invalid flag value: exit 2.
    let matrix = workspace_file("matrices/regular_3_6.txt");
    let matrix = matrix.to_str().unwrap();
    let out = run(&["threshold", "--matrix", matrix, "--tolerance=-1", "--out-dir", out_dir]);
    assert_eq!(out.status.code(), Some(2));

    // Domain failure (no LPS graph matches a degree-39 protograph): exit 1.
    let opt = workspace_file("matrices/opt_4x8.txt");
    let out = run(&[
        "construct", "--matrix", opt.to_str().unwrap(),
        "--source", "lps", "--p", "5", "--q", "13", "--out-dir", out_dir,
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a multiple"));

    // Domain failure (unattainable girth floor): exit 1.
    let out = run(&[
        "construct", "--matrix", matrix, "--source", "random",
        "--half-size", "12", "--seed", "3", "--girth-floor", "20", "--out-dir", out_dir,
    ]);
    assert_eq!(out.status.code(), Some(1));

    // Success: exit 0.
    let out = run(&["threshold", "--matrix", matrix, "--out-dir", out_dir]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn threshold_replay_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let matrix = workspace_file("matrices/regular_3_6.txt");
    let matrix = matrix.to_str().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for out in [&a, &b] {
        run_ok(&["threshold", "--matrix", matrix, "--trace", "--out-dir", out.to_str().unwrap()]);
    }
    assert_eq!(read(&a, "threshold.json"), read(&b, "threshold.json"));
    assert_eq!(read(&a, "trace.csv"), read(&b, "trace.csv"));
    assert_eq!(
        stable_lines(&read(&a, "manifest.json")),
        stable_lines(&read(&b, "manifest.json"))
    );
}

#[test]
fn construct_alist_round_trips_through_girth_and_simulate() {
    let dir = TempDir::new().unwrap();
    let matrix = workspace_file("matrices/regular_3_6.txt");
    let matrix = matrix.to_str().unwrap();
    let cdir = dir.path().join("construct");
    // Degree-6 random bipartite graphs contain 4-cycles with overwhelming
    // probability, so the default girth floor of 4 is the realistic ask.
    run_ok(&[
        "construct", "--matrix", matrix, "--source", "random",
        "--half-size", "40", "--seed", "9",
        "--save-source", "--out-dir", cdir.to_str().unwrap(),
    ]);
    let report: serde_json::Value = serde_json::from_str(&read(&cdir, "construct.json")).unwrap();
    assert_eq!(report["verified"], serde_json::json!(true));
    let girth_measured = report["girth_measured"].as_u64().expect("finite girth");
    assert!(girth_measured >= 4);

    // The girth command on the written alist agrees with construct.json.
    let alist = cdir.join("graph.alist");
    let gdir = dir.path().join("girth");
    let out = run_ok(&[
        "girth", "--input", alist.to_str().unwrap(),
        "--format", "alist", "--out-dir", gdir.to_str().unwrap(),
    ]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains(&format!("girth {girth_measured}")), "stdout: {stdout}");

    // The saved source edge list parses and its girth meets the floor.
    let edges = cdir.join("source.edges");
    let g2 = dir.path().join("girth2");
    run_ok(&["girth", "--input", edges.to_str().unwrap(), "--out-dir", g2.to_str().unwrap()]);
    let girth_json: serde_json::Value = serde_json::from_str(&read(&g2, "girth.json")).unwrap();
    assert!(girth_json["girth"].as_u64().expect("finite girth") >= 4);

    // The alist feeds straight into the simulator.
    let sdir = dir.path().join("sim");
    run_ok(&[
        "simulate", "--alist", alist.to_str().unwrap(),
        "--epsilon", "0.3", "--trials", "200", "--seed", "4",
        "--out-dir", sdir.to_str().unwrap(),
    ]);
    let csv = read(&sdir, "simulate.csv");
    assert!(csv.starts_with("epsilon,n,trials,bit_error,block_error,ci_lo,ci_hi\n"));
    assert_eq!(csv.lines().count(), 2);
}

#[test]
fn construct_replay_is_byte_identical_across_directories() {
    let dir = TempDir::new().unwrap();
    let matrix = workspace_file("matrices/regular_3_6.txt");
    let matrix = matrix.to_str().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for out in [&a, &b] {
        run_ok(&[
            "construct", "--matrix", matrix, "--source", "random",
            "--half-size", "30", "--seed", "11", "--out-dir", out.to_str().unwrap(),
        ]);
    }
    assert_eq!(read(&a, "graph.alist"), read(&b, "graph.alist"));
    assert_eq!(read(&a, "construct.json"), read(&b, "construct.json"));
    assert_eq!(
        stable_lines(&read(&a, "manifest.json")),
        stable_lines(&read(&b, "manifest.json"))
    );
}

#[test]
fn simulate_results_are_invariant_under_parallelism() {
    let dir = TempDir::new().unwrap();
    let matrix = workspace_file("matrices/regular_3_6.txt");
    let cdir = dir.path().join("construct");
    run_ok(&[
        "construct", "--matrix", matrix.to_str().unwrap(), "--source", "random",
        "--half-size", "60", "--seed", "2", "--out-dir", cdir.to_str().unwrap(),
    ]);
    let alist = cdir.join("graph.alist");
    let one = dir.path().join("p1");
    let four = dir.path().join("p4");
    for (out, workers) in [(&one, "1"), (&four, "4")] {
        run_ok(&[
            "simulate", "--alist", alist.to_str().unwrap(),
            "--epsilon", "0.35,0.45", "--trials", "600", "--seed", "7",
            "--parallelism", workers, "--out-dir", out.to_str().unwrap(),
        ]);
    }
    assert_eq!(read(&one, "simulate.csv"), read(&four, "simulate.csv"));
}

#[test]
fn optimize_replay_reproduces_every_artifact() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for out in [&a, &b] {
        run_ok(&[
            "optimize", "--rows", "2", "--cols", "4",
            "--population", "12", "--generations", "5", "--seed", "9",
            "--out-dir", out.to_str().unwrap(),
        ]);
    }
    assert_eq!(read(&a, "best_matrix.txt"), read(&b, "best_matrix.txt"));
    assert_eq!(read(&a, "history.csv"), read(&b, "history.csv"));
    assert_eq!(
        stable_lines(&read(&a, "report.json")),
        stable_lines(&read(&b, "report.json"))
    );

    // The optimizer's matrix artifact feeds straight back into threshold.
    let best = a.join("best_matrix.txt");
    let tdir = dir.path().join("threshold");
    run_ok(&[
        "threshold", "--matrix", best.to_str().unwrap(),
        "--out-dir", tdir.to_str().unwrap(),
    ]);
    let report: serde_json::Value = serde_json::from_str(&read(&tdir, "threshold.json")).unwrap();
    assert!(report["epsilon_threshold"].as_f64().unwrap() > 0.0);
}

#[test]
fn verify_decay_exit_reflects_the_bound() {
    let dir = TempDir::new().unwrap();
    let matrix = workspace_file("matrices/opt_4x8.txt");
    let vdir = dir.path().join("pass");
    let out = run_ok(&[
        "verify-decay", "--matrix", matrix.to_str().unwrap(),
        "--epsilon", "0.45", "--out-dir", vdir.to_str().unwrap(),
    ]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("no violations"));
    let report: serde_json::Value = serde_json::from_str(&read(&vdir, "decay.json")).unwrap();
    assert_eq!(report["pass"], serde_json::json!(true));
    assert_eq!(report["violations"], serde_json::json!([]));
}
