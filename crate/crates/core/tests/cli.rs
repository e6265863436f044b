//! End-to-end runs of the `frontlab` binary.

mod common;

use std::fs;
use std::process::{Command, Output};

use common::fixture;

fn frontlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frontlab"))
        .args(args)
        .env_remove("FRONTLAB_INJECT_FAULT")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn classify_swallowtail_fixture() {
    let o = frontlab(&["classify", &path("ex31.surf")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for line in [
        "kappa2(0): 2",
        "C1: 0",
        "C2: -352 (exact -480)",
        "t0: 0.5",
        "verdict: Swallowtail",
    ] {
        assert!(s.contains(line), "missing {line:?} in\n{s}");
    }
}

#[test]
fn classify_json_has_schema_and_sections() {
    let o = frontlab(&["classify", &path("ex41.surf"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["dual"]["status"], "ok");
    assert_eq!(v["dual"]["value"]["singularity"]["verdict"], "CuspidalEdge");
    assert_eq!(v["contact"]["value"]["delta"], 68.0);
}

#[test]
fn malformed_surface_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.surf");
    fs::write(&bad, "X 1 0 one\n").unwrap();
    let o = frontlab(&["classify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "));
    fs::write(&bad, "# nothing here\n").unwrap();
    assert_eq!(
        frontlab(&["classify", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn non_adapted_surface_is_math_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("plane.surf");
    fs::write(&f, "X 1 0 1\nY 0 1 1\n").unwrap();
    assert_eq!(
        frontlab(&["classify", f.to_str().unwrap()]).status.code(),
        Some(3)
    );
}

#[test]
fn empty_sweep_range_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let o = frontlab(&["sweep", "--nf", "b30=1:-1:5", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn single_point_sweep_matches_classify() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let o = frontlab(&[
        "sweep",
        "--nf",
        "a20=1,a30=2,b20=2,b30=0,b12=0,b03=2",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let mut r = csv::Reader::from_path(&out).unwrap();
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    let h = r.headers().unwrap().clone();
    let get = |k: &str| rows[0][h.iter().position(|x| x == k).unwrap()].to_string();
    assert_eq!(get("c2"), "-352.0");
    assert_eq!(get("t0"), "0.5");
    assert_eq!(get("parallel"), "Swallowtail");
    assert_eq!(get("ridge"), "First");
}

#[test]
fn verify_passes_and_is_reproducible() {
    let a = frontlab(&["verify", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let b = frontlab(&["verify", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn injected_fault_fails_verify() {
    let o = Command::new(env!("CARGO_BIN_EXE_frontlab"))
        .arg("verify")
        .env("FRONTLAB_INJECT_FAULT", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn mesh_rejects_zero_offset() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.obj");
    let o = frontlab(&[
        "mesh",
        &path("ex31.surf"),
        "--which",
        "parallel",
        "--t",
        "0",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}
