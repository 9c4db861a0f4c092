use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_supersphere"))
}

fn report(args: &[&str]) -> (Option<i32>, Value) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = bin().args(args).arg("--report").arg(&path).output().unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    (out.status.code(), serde_json::from_str(&text).unwrap())
}

#[test]
fn single_check_passes() {
    let (code, r) = report(&["--check", "ns.jacobi", "--band", "2"]);
    assert_eq!(code, Some(0));
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["passed"], true);
    let checks = r["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0]["id"], "ns.jacobi");
    assert_eq!(checks[0]["status"], "pass");
    assert!(checks[0].get("elapsed_ms").is_none());
}

#[test]
fn per_n_check_and_timings() {
    let (code, r) = report(&["--check", "spheres.closure.n=2", "--samples", "2", "--generators", "4", "--timings"]);
    assert_eq!(code, Some(0));
    assert_eq!(r["checks"][0]["id"], "spheres.closure.n=2");
    assert!(r["checks"][0]["elapsed_ms"].is_u64());
}

#[test]
fn full_campaign_lists_every_sphere_section() {
    let (code, r) = report(&["--samples", "1", "--generators", "4", "--n-range", "-3..3", "--sequential"]);
    assert_eq!(code, Some(0));
    let ids: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids.iter().filter(|id| id.starts_with("spheres.closure.n=")).count(), 7);
    assert_eq!(r["config"]["n_range"].as_array().unwrap().len(), 7);
}

#[test]
fn same_seed_same_bytes() {
    let run = || {
        bin()
            .args(["--samples", "3", "--seed", "42", "--check", "grassmann.laws"])
            .output()
            .unwrap()
            .stdout
    };
    let a = run();
    assert!(!a.is_empty());
    assert_eq!(a, run());
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["--check", "bogus"],
        vec!["--generators", "3"],
        vec!["--n-range", "5..1"],
        vec!["--band", "0"],
        vec!["--no-such-flag"],
    ] {
        let out = bin().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unwritable_report_path_fails() {
    let out = bin()
        .args(["--check", "matrix.osp", "--report", "/nonexistent-dir/r.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
