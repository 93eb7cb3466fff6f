use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn quernel(args: &[&str], env_seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_quernel"));
    cmd.args(args).env_remove("QUERNEL_SEED");
    if let Some(s) = env_seed {
        cmd.env("QUERNEL_SEED", s);
    }
    cmd.output().unwrap()
}

fn write_config(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("cfg.json");
    fs::write(&path, body).unwrap();
    path
}

const SMALL: &str = r#"{
    "dataset": { "synthetic": { "num_samples": 30, "num_features": 4, "separation": 4.0, "seed": 1 } },
    "kernels": [{ "kind": "cp" }, { "kind": "linear" }],
    "kernel": { "mode": "shots", "shots": 200, "seed": 5 },
    "runs": 2
}"#;

fn records(stdout: &[u8]) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_slice(stdout).unwrap();
    for r in v["records"].as_array_mut().unwrap() {
        r["wall_time"] = 0.into();
    }
    v["records"].take()
}

#[test]
fn resources_prints_csv() {
    let out = quernel(&["resources", "--map", "cp", "--features", "7..=9"], None);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "features,qubits,depth,cnot_count,total_gates");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("7,4,"));
}

#[test]
fn resources_rejects_bad_range() {
    let out = quernel(&["resources", "--map", "zz", "--features", "9..3"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn benchmark_and_ttest_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let report = dir.path().join("report.json");
    let out = quernel(&["benchmark", "--config", cfg.to_str().unwrap(), "--out", report.to_str().unwrap()], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mcc"));

    let out = quernel(&["ttest", report.to_str().unwrap(), "--metric", "mcc", "--metric", "f1"], None);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(text.contains("cp vs linear"));
}

#[test]
fn kernel_export_feeds_benchmark() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let kdir = dir.path().join("kernels");
    let out = quernel(&["kernel", "--config", cfg.to_str().unwrap(), "--out", kdir.to_str().unwrap()], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let direct = quernel(&["benchmark", "--config", cfg.to_str().unwrap()], None);
    let replay = quernel(&["benchmark", "--from-kernels", kdir.to_str().unwrap()], None);
    assert!(replay.status.success(), "{}", String::from_utf8_lossy(&replay.stderr));
    assert_eq!(records(&direct.stdout), records(&replay.stdout));
}

#[test]
fn env_seed_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = quernel(&["benchmark", "--config", cfg.to_str().unwrap()], Some("77"));
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("QUERNEL_SEED"));
    let recs = records(&out.stdout);
    assert_eq!(recs[0]["split_seed"], 77);
    assert_eq!(recs[0]["kernel_seed"], 77);

    let bad = quernel(&["benchmark", "--config", cfg.to_str().unwrap()], Some("abc"));
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn jobs_flag_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let one = quernel(&["benchmark", "--config", cfg.to_str().unwrap(), "--jobs", "1"], None);
    let four = quernel(&["benchmark", "--config", cfg.to_str().unwrap(), "--jobs", "4"], None);
    assert!(one.status.success() && four.status.success());
    assert_eq!(records(&one.stdout), records(&four.stdout));
    let zero = quernel(&["benchmark", "--config", cfg.to_str().unwrap(), "--jobs", "0"], None);
    assert_eq!(zero.status.code(), Some(2));
}

#[test]
fn exit_codes_follow_error_class() {
    let dir = tempfile::tempdir().unwrap();

    let cfg = write_config(dir.path(), r#"{ "kernels": [] }"#);
    assert_eq!(quernel(&["benchmark", "--config", cfg.to_str().unwrap()], None).status.code(), Some(2));

    let cfg = write_config(
        dir.path(),
        r#"{ "dataset": { "csv": { "path": "missing.csv", "label_column": "y" } }, "kernels": [{ "kind": "z" }] }"#,
    );
    let out = quernel(&["benchmark", "--config", cfg.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: load:"));

    fs::write(dir.path().join("three.csv"), "a,b,y\n1,2,x\n3,4,y\n5,6,z\n").unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{ "dataset": { "csv": { "path": "three.csv", "label_column": "y" } }, "kernels": [{ "kind": "z" }] }"#,
    );
    assert_eq!(quernel(&["benchmark", "--config", cfg.to_str().unwrap()], None).status.code(), Some(3));

    let cfg = write_config(
        dir.path(),
        r#"{
            "dataset": { "synthetic": { "num_samples": 40, "num_features": 3, "separation": 0.5, "seed": 1 } },
            "kernels": [{ "kind": "rbf" }],
            "svm": { "c": 10.0, "tol": 1e-6, "max_iter": 1 }
        }"#,
    );
    assert_eq!(quernel(&["benchmark", "--config", cfg.to_str().unwrap()], None).status.code(), Some(4));
}
