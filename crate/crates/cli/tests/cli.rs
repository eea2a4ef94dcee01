//! Runs of the `horolab` binary: exit codes, output files, determinism and
//! diagnostics.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const SUMMARY_KEYS: [&str; 7] = ["command", "config", "seed", "exponent", "stderr", "r2", "status"];

fn horolab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_horolab")).args(args).output().unwrap()
}

fn summary(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn path_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn fourier_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, json) = (dir.path().join("f.csv"), dir.path().join("f.json"));
    let out = horolab(&[
        "fourier", "--measure", "cantor:3:0,2", "--xi", "0:9:3",
        "--out", path_arg(&csv), "--summary", path_arg(&json),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "xi,re,im,abs");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].ends_with(",1.0") || lines[1].ends_with(",1"), "{}", lines[1]);
    let s = summary(&json);
    let keys: Vec<&str> = s.as_object().unwrap().keys().map(String::as_str).collect();
    let mut expected = SUMMARY_KEYS.to_vec();
    expected.sort_unstable();
    let mut got = keys.clone();
    got.sort_unstable();
    assert_eq!(got, expected);
    assert_eq!(s["command"], "fourier");
}

#[test]
fn dim_reports_bound_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let (csv, json) = (dir.path().join(format!("{name}.csv")), dir.path().join(format!("{name}.json")));
        let out = horolab(&[
            "dim", "--measure", "cantor:450:0..446", "--xmax", "10000", "--points", "8",
            "--out", path_arg(&csv), "--summary", path_arg(&json),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        (fs::read(&csv).unwrap(), summary(&json))
    };
    let (a, s) = run("a");
    let (b, _) = run("b");
    assert_eq!(a, b);
    let bound: f64 = s["config"]["cvy_lower_bound"].as_str().unwrap().parse().unwrap();
    assert!((bound - 0.6094712).abs() < 1e-6, "{bound}");
    assert!(s["exponent"].as_f64().unwrap() > 0.6);
}

#[test]
fn equidist_reads_a_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "measure = leb\ntest = eisenstein:t=1\nygrid = 0.25:0.5:10\nbudget = 4096\n").unwrap();
    let json = dir.path().join("e.json");
    let csv = dir.path().join("e.csv");
    let out = horolab(&[
        "equidist", "--config", path_arg(&cfg), "--seed", "7",
        "--out", path_arg(&csv), "--summary", path_arg(&json),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let s = summary(&json);
    assert_eq!(s["status"], "ok");
    assert_eq!(s["seed"], 7);
    let eta = s["exponent"].as_f64().unwrap();
    assert!((eta - 0.5).abs() < 0.1, "{eta}");
}

#[test]
fn point_mass_exits_with_two() {
    let out = horolab(&["equidist", "--measure", "dirac:0.1", "--test", "bump:y0=1,y1=3", "--ygrid", "0.25:0.5:8"]);
    assert_eq!(out.status.code(), Some(2));
    let s: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_ne!(s["status"], "ok");
}

#[test]
fn malformed_literals_exit_with_one() {
    let out = horolab(&["fourier", "--measure", "cantor:3:0,7"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("measure") || err.contains("digit"), "{err}");
    let out = horolab(&["equidist", "--test", "wave:t=1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed test"));
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "measure = leb\ncolour = blue\n").unwrap();
    let out = horolab(&["fourier", "--config", path_arg(&cfg)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));
}

#[test]
fn stationary_and_khintchine_run() {
    let out = horolab(&["stationary", "--phase", "poly:0,0,1", "--xi", "10:1000:5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let s: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!((s["exponent"].as_f64().unwrap() - 0.5).abs() < 0.05);
    let out = horolab(&["khintchine", "--qmax", "200", "--samples", "2000", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("q,hit_rate,two_psi"));
    assert_eq!(csv.lines().count(), 201);
}
