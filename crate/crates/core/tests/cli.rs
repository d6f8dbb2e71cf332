use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hopftwist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopftwist")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn verify_exits_zero_and_reports_json() {
    let out = hopftwist(&["verify", "--checks", "cybe,antipode", "--indices", "k=1,l=2,i=3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["summary"]["fail"], 0);
    assert_eq!(r["order"], 4);
    let recs = r["records"].as_array().unwrap();
    let ids: Vec<&str> = recs.iter().map(|c| c["case_id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    for key in ["case_id", "deformation", "indices", "check", "status", "residual", "exactness", "provenance", "wall_time_ms"] {
        assert!(recs[0].get(key).is_some(), "missing {key}");
    }
}

#[test]
fn bad_indices_exit_two_with_constraint() {
    let out = hopftwist(&["verify", "--deformation", "kappa", "--indices", "k=1,i=1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("i != k"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn unknown_check_and_format_exit_two() {
    assert_eq!(hopftwist(&["verify", "--checks", "nonsense"]).status.code(), Some(2));
    assert_eq!(hopftwist(&["verify", "--format", "yaml"]).status.code(), Some(2));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"deformations": ["theta_kl"], "checks": ["cybe", "normalization"], "order": 3}"#).unwrap();
    let path = cfg.to_str().unwrap();

    let r = json(&hopftwist(&["verify", "--config", path]));
    assert_eq!(r["order"], 3);
    for c in r["records"].as_array().unwrap() {
        assert!(["theta_kl", "control"].contains(&c["deformation"].as_str().unwrap()), "{c}");
    }

    let r = json(&hopftwist(&["verify", "--config", path, "--order", "2"]));
    assert_eq!(r["order"], 2);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"deformations": ["theta_kl"], "colour": "blue"}"#).unwrap();
    let out = hopftwist(&["verify", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("colour"), "{}", stderr(&out));

    let missing = dir.path().join("missing.json");
    assert_eq!(hopftwist(&["verify", "--config", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn text_format_lists_statuses() {
    let out = hopftwist(&["verify", "--checks", "cybe", "--deformation", "theta_kl", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("cybe/theta_kl/k=1,l=2"), "{text}");
    assert!(text.to_lowercase().contains("pass"));
}

#[test]
fn unwritable_output_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("no/such/dir/report.json");
    let out = hopftwist(&["verify", "--checks", "cybe", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
}

#[test]
fn catalog_dump_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.json");
    let out = hopftwist(&["catalog", "dump", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["coproducts"].as_array().unwrap().len(), 26);
    assert_eq!(v["spacetimes"].as_array().unwrap().len(), 3);
    let ids: Vec<&str> = v["coproducts"].as_array().unwrap().iter().map(|e| e["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"coproduct.theta_kl+kappa.P"));
    assert!(ids.contains(&"galilei.coproduct.xi_kl+lambda.Pi0"));
}

#[test]
fn derive_spacetime_tables() {
    let out = hopftwist(&["derive", "spacetime", "--deformation", "theta_kl+kappa", "--indices", "k=1,l=2,i=3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["tables"][0]["matches_catalog"], true);

    let out = hopftwist(&["derive", "spacetime", "--indices", "k=1,l=2,i=3", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[x_1, x_2] = 2i·θ_kl"), "{text}");
    assert!(text.contains("theta_0i+kappa_bar"));
    assert!(text.contains("differs from printed table"));
}

#[test]
fn contract_generalized_case() {
    let out = hopftwist(&["contract", "--deformation", "theta_kl+kappa", "--indices", "k=1,l=2,i=3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["galilei"], "xi_kl+lambda");
    let cs = v["coproducts"].as_array().unwrap();
    assert_eq!(cs.len(), 10);
    assert!(cs.iter().all(|c| c["matches_catalog"] == true));
    assert_eq!(v["antipodes"].as_array().unwrap().len(), 10);

    assert_eq!(hopftwist(&["contract", "--deformation", "kappa", "--indices", "k=1,i=3"]).status.code(), Some(2));
    assert_eq!(hopftwist(&["contract", "--deformation", "theta_kl+kappa"]).status.code(), Some(2));
}

fn run_full(out: &Path) -> Vec<u8> {
    let o = hopftwist(&["verify", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    std::fs::read(out).unwrap()
}

#[test]
fn repeated_full_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = run_full(&dir.path().join("a.json"));
    let b = run_full(&dir.path().join("b.json"));
    assert!(a == b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
}
