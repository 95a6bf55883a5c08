//! End-to-end runs of the `dualcode` binary.

use std::path::Path;
use std::process::{Command, Output};

fn dualcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualcode")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_fixtures_passes() {
    let o = dualcode(&["verify-fixtures"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.lines().count() >= 10);
    assert!(out.lines().all(|l| l.starts_with("PASS ")), "{out}");
}

#[test]
fn classify_then_report() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = dualcode(&["classify", "--dperp", "8", "--k", "10", "--max-n", "30", "--out", d, "--jobs", "1", "--even"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(dir.path().join("n12_k10_dperp8.codedb").exists());
    assert!(dir.path().join("even_n12_k10_dperp8.codedb").exists());
    let o = dualcode(&["report", "--dir", d, "--rows", "--verify"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "10 10 8 1 1 1\n11 10 8 4 1 1\n12 10 8 1 0 1\n13 10 8 0 0 1\n");
}

#[test]
fn nonexist_exit_codes() {
    let o = dualcode(&["nonexist", "--target", "33,18,8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("UNRESOLVED"));

    let o = dualcode(&["nonexist", "--target", "8,2,7", "--desk-scale"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("NONEXISTENT"));

    let o = dualcode(&["nonexist", "--target", "7,4,3", "--desk-scale", "--residual-only"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("EXISTS"));

    let o = dualcode(&["nonexist", "--target", "7,4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn metrics_and_canon_on_a_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.txt");
    std::fs::write(&path, "1000011\n0100101\n0010110\n0001111\n").unwrap();
    let p = path.to_str().unwrap();
    let o = dualcode(&["metrics", "--in", p]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("minimum distance: 3"), "{out}");
    assert!(out.contains("dual distance: 4"), "{out}");

    // Any column order gives the same canonical form.
    let permuted = dir.path().join("p.txt");
    std::fs::write(&permuted, "0100011\n1000101\n0010110\n0001111\n").unwrap();
    let a = dualcode(&["canon", "--in", p]);
    let b = dualcode(&["canon", "--in", permuted.to_str().unwrap()]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn config_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("db");
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, format!("jobs = 1\nout = {:?}\n", out.to_str().unwrap())).unwrap();
    let o = dualcode(&["--config", cfg.to_str().unwrap(), "classify", "--dperp", "4", "--k", "3", "--max-n", "10"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(Path::new(&out).join("n3_k3_dperp4.codedb").exists());

    std::fs::write(&cfg, "bogus = 1\n").unwrap();
    let o = dualcode(&["--config", cfg.to_str().unwrap(), "verify-fixtures"]);
    assert_eq!(o.status.code(), Some(1));
}
