use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const REFERENCE: &str = r#"{
  "n_modes": 2,
  "xi": [[[45, 0], [0, 7]], [[0, -7], [45, 0]]],
  "eta": [[[36, 0], [0, 16]], [[0, 16], [36, 0]]]
}"#;

const FREE: &str = r#"{
  "n_modes": 2,
  "xi": [[[2, 0], [0, 0]], [[0, 0], [1, 0]]],
  "eta": [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]
}"#;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_squeezelab"));
    c.env_remove("SQUEEZELAB_TOL");
    c
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str], spec: Option<&Path>) -> Output {
    let mut c = bin();
    c.args(args);
    if let Some(p) = spec {
        c.arg("--spec").arg(p);
    }
    c.output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

fn pairs(v: &Value) -> Vec<Vec<(f64, f64)>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|row| row.as_array().unwrap().iter().map(|p| (p[0].as_f64().unwrap(), p[1].as_f64().unwrap())).collect())
        .collect()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

#[test]
fn reference_example_passes() {
    let out = run(&["paper-example"], None);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema_version"], 1);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true && c["tolerance"].is_number()));
}

#[test]
fn diagonalize_reference_frequencies() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "ref.json", REFERENCE);
    let out = run(&["diagonalize"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
    let omega = floats(&json(&out)["omega"]);
    assert!((omega[0] - 30.0).abs() < 1e-10 && (omega[1] - 12.0).abs() < 1e-10, "{omega:?}");
}

#[test]
fn diagonalize_free_modes_is_identity() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "free.json", FREE);
    let out = run(&["diagonalize"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let (u, v) = (pairs(&r["u"]), pairs(&r["v"]));
    for i in 0..2 {
        for j in 0..2 {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((u[i][j].0 - want).abs() < 1e-14 && u[i][j].1.abs() < 1e-14);
            assert!(v[i][j].0.abs() < 1e-14 && v[i][j].1.abs() < 1e-14);
        }
    }
}

#[test]
fn toml_spec_is_accepted() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "one.toml", "n_modes = 1\nxi = [[[2.0, 0.0]]]\neta = [[[0.5, 0.0]]]\n");
    let out = run(&["diagonalize"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
    let omega = floats(&json(&out)["omega"]);
    assert!((omega[0] - 3.75f64.sqrt()).abs() < 1e-12, "{omega:?}");
}

#[test]
fn malformed_and_invalid_specs_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{ \"n_modes\": 2, ");
    let out = run(&["diagonalize"], Some(&bad));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error"));

    let indefinite = write(&dir, "neg.json", r#"{"n_modes": 1, "xi": [[[1, 0]]], "eta": [[[2, 0]]]}"#);
    let out = run(&["diagonalize"], Some(&indefinite));
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("positive_definite"), "{stderr}");

    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["diagonalize"], Some(&missing)).status.code(), Some(2));
}

#[test]
fn squeezed_vacuum_photon_numbers() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "ref.json", REFERENCE);
    let out = run(&["state", "--kind", "svs"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
    let mean = floats(&json(&out)["mean_n"]);
    assert!((mean[0] - 14.0 / 15.0).abs() < 1e-10 && (mean[1] - 0.4).abs() < 1e-10, "{mean:?}");
}

#[test]
fn fock_state_has_no_number_variance() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "free.json", FREE);
    let out = run(&["state", "--kind", "fock", "--n", "1,0", "--fock-upto", "2"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(floats(&r["var_n"]), vec![0.0, 0.0]);
    assert!((r["fock_weight"].as_f64().unwrap() - 1.0).abs() < 1e-14);
}

#[test]
fn state_samples_are_reported() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "ref.json", REFERENCE);
    let out = run(
        &["state", "--kind", "scs", "--alpha", "0.3+0.1i,-0.2", "--coherent-at", "0.1,0.2i", "--coord-at=-0.3,0.1"],
        Some(&spec),
    );
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["coherent"].as_array().unwrap().len(), 1);
    assert_eq!(r["coordinate"].as_array().unwrap().len(), 1);
    assert_eq!(r["alpha"][0][1].as_f64(), Some(0.1));
}

#[test]
fn inconsistent_state_parameters_exit_two() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "ref.json", REFERENCE);
    for args in [
        &["state", "--kind", "scfs", "--n", "1,0"][..],
        &["state", "--kind", "sfs"][..],
        &["state", "--kind", "svs", "--alpha", "1,0"][..],
        &["state", "--kind", "fock", "--n", "1"][..],
        &["state", "--kind", "squeezed"][..],
    ] {
        let out = run(args, Some(&spec));
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn squeeze_op_reports_branch_cut() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "ref.json", REFERENCE);
    let out = run(&["squeeze-op"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert!(r["log_m"].is_null());
    assert!(r["log_m_error"].as_str().unwrap().contains("negative real axis"));
    let rho = pairs(&r["rho"]);
    assert!((rho[0][0].0 - 7.0 / 22.0).abs() < 1e-10);
}

#[test]
fn decompose_reference() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "ref.json", REFERENCE);
    let out = run(&["decompose"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["special_case"], "generic");
    let c = floats(&r["cosh_r"]);
    let k = 2.0 / (3.0 * 5f64.sqrt());
    assert!((c[0] - (5.0 / 3.0 + k).sqrt()).abs() < 1e-10);
}

#[test]
fn verify_cutoff_too_small_exits_three() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "ref.json", REFERENCE);
    for cutoff in ["4", "30"] {
        let out = run(&["verify", "--cutoff", cutoff], Some(&spec));
        assert_eq!(out.status.code(), Some(3));
        assert!(String::from_utf8_lossy(&out.stderr).contains("try cutoff"));
    }
}

#[test]
fn verify_reference_at_default_cutoff() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "ref.json", REFERENCE);
    let out = run(&["verify"], Some(&spec));
    let r = json(&out);
    assert_eq!(out.status.code(), Some(0), "{r}");
    assert_eq!(r["cutoff"], 40);
    let overlap = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "ground_overlap").unwrap();
    assert!(overlap["residual"].as_f64().unwrap() <= 1e-4);
}

#[test]
fn verify_free_modes() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "free.json", FREE);
    let out = run(&["verify", "--cutoff", "5"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["residual"].as_f64().unwrap() < 1e-12));
}

#[test]
fn tolerance_override() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "ref.json", REFERENCE);
    let mut c = bin();
    c.args(["verify", "--cutoff", "30", "--spec"]).arg(&spec).env("SQUEEZELAB_TOL", "1e-5");
    let out = c.output().unwrap();
    let r = json(&out);
    assert_eq!(r["tolerance"], 1e-5);
    assert_eq!(out.status.code(), Some(1), "ground energy at cutoff 30 is off by 1e-3 relative 2.5e-5");

    let mut c = bin();
    c.args(["verify", "--spec"]).arg(&spec).env("SQUEEZELAB_TOL", "abc");
    assert_eq!(c.output().unwrap().status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "ref.json", REFERENCE);
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for out in [&a, &b] {
        let mut c = bin();
        c.args(["decompose", "--spec"]).arg(&spec).arg("--out").arg(out);
        assert_eq!(c.output().unwrap().status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
