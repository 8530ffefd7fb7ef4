//! End-to-end tests of the `circnil` binary: golden outputs and exit codes.
//!
//! Regenerate the golden files with `UPDATE_GOLDEN=1 cargo test --test cli`.

use std::path::PathBuf;
use std::process::{Command, Output};

fn circnil(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circnil"))
        .args(args)
        .output()
        .expect("spawn circnil")
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn check_golden(name: &str, actual: &[u8]) {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(
        String::from_utf8_lossy(actual),
        String::from_utf8_lossy(&expected),
        "golden mismatch for {name}"
    );
}

#[test]
fn golden_decide_zp_json() {
    let out = circnil(&["decide", "--n", "8", "--m", "2", "--p", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    check_golden("decide_zp_8_2_2.json", &out.stdout);
}

#[test]
fn golden_decide_zm_text() {
    let out = circnil(&["decide", "--n", "4", "--m", "6", "--zm"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("not nilpotent over Z_6"));
    check_golden("decide_zm_4_6.txt", &out.stdout);
}

#[test]
fn golden_decide_invalid_prime() {
    let out = circnil(&["decide", "--n", "8", "--m", "2", "--p", "4"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    check_golden("decide_invalid_prime.stderr", &out.stderr);
}

#[test]
fn golden_scan_zm_csv() {
    let out = circnil(&["scan", "--zm", "--n-max", "12", "--m-max", "12", "--verify", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().next(), Some("n,m,nilpotent,clause,oracle_index,agree"));
    assert_eq!(text.lines().count(), 1 + 12 * 11);
    check_golden("scan_zm_12.csv", &out.stdout);
}

#[test]
fn golden_scan_zp_csv() {
    let out = circnil(&["scan", "--p", "2", "--n-max", "16", "--m-max", "16", "--verify", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().next(), Some("n,m,nilpotent,index,agree"));
    assert_eq!(text.lines().count(), 1 + 256);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
    check_golden("scan_p2_16.csv", &out.stdout);
}

#[test]
fn scan_output_is_stable_across_job_counts() {
    let one = circnil(&["scan", "--p", "3", "--n-max", "20", "--m-max", "20", "--verify", "--format", "csv", "--jobs", "1"]);
    let many = circnil(&["scan", "--p", "3", "--n-max", "20", "--m-max", "20", "--verify", "--format", "csv", "--jobs", "8"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn scan_json_round_trips() {
    let out = circnil(&["scan", "--zm", "--n-max", "6", "--m-max", "6", "--verify", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let first: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let again: serde_json::Value = serde_json::from_str(&serde_json::to_string(&first).unwrap()).unwrap();
    assert_eq!(first, again);
    assert_eq!(first["summary"]["cells"], 30);
    assert_eq!(first["cells"].as_array().unwrap().len(), 30);
    assert_eq!(first["parameters"]["mode"], "zm");
}

#[test]
fn decide_json_round_trips() {
    for args in [
        vec!["decide", "--n", "9", "--m", "3", "--p", "3", "--json"],
        vec!["decide", "--n", "6", "--m", "6", "--zm", "--json", "--exact-index"],
    ] {
        let out = circnil(&args);
        assert_eq!(out.status.code(), Some(0));
        let text = String::from_utf8(out.stdout).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let once = serde_json::to_string(&v).unwrap();
        let w: serde_json::Value = serde_json::from_str(&once).unwrap();
        assert_eq!(v, w);
        assert_eq!(serde_json::to_string(&w).unwrap(), once);
    }
}

#[test]
fn scan_writes_to_out_path() {
    let dir = std::env::temp_dir().join(format!("circnil-scan-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.csv");
    let out = circnil(&["scan", "--p", "2", "--n-max", "16", "--m-max", "16", "--verify", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(golden_path("scan_p2_16.csv")).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["scan", "--p", "3", "--n-max", "0"],
        vec!["scan", "--p", "3", "--zm"],
        vec!["scan", "--zm", "--m-max", "1"],
        vec!["scan", "--p", "3", "--format", "xml"],
        vec!["decide", "--n", "8", "--m", "2"],
        vec!["decide", "--n", "x", "--m", "2", "--p", "2"],
        vec!["identities", "--p", "3"],
        vec!["bogus"],
    ] {
        let out = circnil(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?} wrote partial output");
    }
}

#[test]
fn math_errors_exit_3() {
    for (args, needle) in [
        (vec!["decide", "--n", "8", "--m", "2", "--p", "1"], "InvalidPrime"),
        (vec!["decide", "--n", "8", "--m", "1", "--zm"], "InvalidInput"),
        (vec!["scan", "--p", "9"], "InvalidPrime"),
        (vec!["lemma1", "--d", "2", "--m-star", "4", "--n-star", "1", "--q", "1"], "Coprimality"),
        (vec!["lemma1", "--d", "3", "--m-star", "2", "--n-star", "4", "--q", "1"], "Divisibility"),
        (vec!["lemma1", "--d", "2", "--m-star", "3", "--n-star", "1", "--q", "0"], "q must be positive"),
        (vec!["identities", "--n", "4", "--m", "6", "--p", "3"], "not applicable"),
        (vec!["identities", "--n", "3", "--m", "6", "--p", "2"], "already zero"),
    ] {
        let out = circnil(&args);
        assert_eq!(out.status.code(), Some(3), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(needle), "{args:?}: {err}");
    }
}

#[test]
fn lemma1_and_identities_succeed() {
    let out = circnil(&["lemma1", "--d", "2", "--m-star", "3", "--n-star", "1", "--q", "2", "--enumerate"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.matches("enumerated 9 [agree]").count(), 4);

    let out = circnil(&["lemma1", "--d", "3", "--m-star", "4", "--n-star", "2", "--q", "2", "--c", "0", "--enumerate", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["closed_form"], 8);
    assert_eq!(v[0]["enumerated"], 8);
    assert_eq!(v[0]["agree"], true);

    let out = circnil(&["identities", "--n", "8", "--m", "2", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!String::from_utf8_lossy(&out.stdout).contains("FAIL"));

    let out = circnil(&["identities", "--random-trials", "100", "--p", "3", "--n", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("100/100"));
}
