use std::path::PathBuf;
use std::process::{Command, Output};

fn degenlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_degenlab"))
        .args(args)
        .env_remove("DEGENLAB_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("degenlab-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn without_timing(jsonl: &str) -> Vec<&str> {
    jsonl.lines().filter(|l| !l.contains("\"type\":\"timing\"")).collect()
}

#[test]
fn determinantal_scan_writes_report_and_passes() {
    let out = scratch("scan");
    let o = degenlab(&["run", "determinantal-scan", "m=2", "n=2", "q=2,3,5,7", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let jsonl = std::fs::read_to_string(out.join("determinantal-scan.jsonl")).unwrap();
    let verdicts: Vec<serde_json::Value> = jsonl
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
        .filter(|v| v["type"] == "verdict")
        .collect();
    assert!(verdicts.iter().any(|v| v["verdict"]["assertion"].as_str().unwrap().contains("k=2")));
    assert!(verdicts.iter().all(|v| v["verdict"]["passed"] == true && !v["verdict"]["anchor"].as_str().unwrap().is_empty()));
    assert!(std::fs::read_to_string(out.join("determinantal-scan.txt")).unwrap().contains("PASS"));
}

#[test]
fn same_seed_gives_identical_reports() {
    let (a, b) = (scratch("det-a"), scratch("det-b"));
    for dir in [&a, &b] {
        let o = degenlab(&["run", "numerology-identities", "classes=200", "--seed", "7", "--out", dir.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let ra = std::fs::read_to_string(a.join("numerology-identities.jsonl")).unwrap();
    let rb = std::fs::read_to_string(b.join("numerology-identities.jsonl")).unwrap();
    assert_eq!(without_timing(&ra), without_timing(&rb));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = scratch("cfg");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("exp.cfg");
    std::fs::write(&cfg, "# scan\nm = 1\nn = 2\nseed = 3\n").unwrap();
    let o = degenlab(&["run", "determinantal-scan", "--config", cfg.to_str().unwrap(), "--seed", "11", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let jsonl = std::fs::read_to_string(dir.join("determinantal-scan.jsonl")).unwrap();
    let header: serde_json::Value = serde_json::from_str(jsonl.lines().next().unwrap()).unwrap();
    assert_eq!(header["config"]["seed"], 11);
    assert_eq!(header["config"]["params"]["m"], "1");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["run", "no-such-experiment"][..],
        &["run", "determinantal-scan", "m"],
        &["run", "determinantal-scan", "q=4"],
        &["run", "determinantal-scan", "--budget", "0"],
        &["run", "adhm-verify", "--primes", "2,9"],
        &["frobnicate"],
    ] {
        assert_eq!(degenlab(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn assertion_failure_exits_one_and_still_writes_report() {
    let out = scratch("fail");
    // nmax=0 leaves no (n, r) shapes to sample, which is an assertion failure
    let o = degenlab(&["run", "adhm-verify", "nmax=0", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(out.join("adhm-verify.jsonl").exists());
}

#[test]
fn conventions_and_list() {
    let o = degenlab(&["conventions"]);
    assert_eq!(o.status.code(), Some(0));
    let table = String::from_utf8(o.stdout).unwrap();
    assert!(table.starts_with("# convention catalog v1"));
    assert_eq!(table.lines().filter(|l| l.starts_with('C')).count(), 324);
    let o = degenlab(&["list"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 7);
}
