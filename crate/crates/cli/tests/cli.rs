use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn ifourier(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ifourier"))
        .args(args)
        .env_remove("IFOURIER_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

#[test]
fn tm_table() {
    let out = ifourier(&["tm", "--max", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let t: Vec<String> = json(&out)["table"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["T"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(t, ["1", "2", "12", "24", "720", "1440", "60480"]);
}

#[test]
fn identities_pass() {
    let out = ifourier(&["verify", "identities", "--rank", "2", "--max-deg", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let reports = json(&out);
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 4);
    assert!(reports.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn json_output_is_deterministic() {
    let a = ifourier(&["verify", "identities", "--rank", "2", "--max-deg", "3"]);
    let b = ifourier(&["--sequential", "verify", "identities", "--rank", "2", "--max-deg", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn decompose_sym2() {
    let out = ifourier(&["sl2", "decompose", "--input", &data("sym2.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let nonzero = v["components"].as_array().unwrap();
    assert_eq!(nonzero.len(), 1);
    assert_eq!(nonzero[0]["n"], 2);
    assert_eq!(nonzero[0]["freeRank"], 1);
}

#[test]
fn text_format() {
    let out = ifourier(&["--format", "text", "tm", "--max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("12"));
    assert!(serde_json::from_str::<Value>(&s).is_err());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(ifourier(&["bogus"]).status.code(), Some(2));
    assert_eq!(ifourier(&["fourier-check", "--g", "9"]).status.code(), Some(2));
    assert_eq!(ifourier(&["demo", "torsion", "--g", "2", "--p", "5", "--k", "1"]).status.code(), Some(2));
    assert_eq!(ifourier(&["sl2", "decompose", "--input", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ifourier"))
        .args(["tm", "--max", "3"])
        .env("IFOURIER_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(dir.path().join("tm.json")).unwrap();
    let v: Value = serde_json::from_str(&written).unwrap();
    assert_eq!(v["table"][3]["T"], "24");

    // an explicit --output wins over the environment
    let explicit = dir.path().join("explicit.txt");
    let out = Command::new(env!("CARGO_BIN_EXE_ifourier"))
        .args(["--format", "text", "--output", explicit.to_str().unwrap(), "tm", "--max", "1"])
        .env("IFOURIER_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(explicit.exists());
    assert!(!dir.path().join("tm.txt").exists());
}

#[test]
fn torsion_demo_passes() {
    let out = ifourier(&["demo", "torsion", "--g", "2", "--p", "7", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
}
