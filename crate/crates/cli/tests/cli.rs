use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn qdsr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdsr")).args(args).env_remove("QDSR_OUT_DIR").output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn solve_phi_both_cases() {
    let out = qdsr(&["solve-phi", "--case", "loop", "--range", "8"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let phi = v["phi"].as_array().unwrap();
    assert_eq!(phi.len(), 17);
    assert_eq!(phi[9], serde_json::json!({"m": 1, "phi": "1/(1+q)"}));

    let v = stdout_json(&qdsr(&["solve-phi", "--case", "lattice", "--N", "7"]));
    assert_eq!(v["phi"], serde_json::json!(["1", "-1", "1", "-1", "1", "-1", "1"]));
}

#[test]
fn canonicalize_both_formats() {
    let out = qdsr(&["canonicalize", data("operator.json").to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["t"], serde_json::json!([[[-1, "1/q"], [1, "1"]]]));

    // a + d_{k+1} at each site
    let v = stdout_json(&qdsr(&["canonicalize", data("on_surface.json").to_str().unwrap()]));
    assert_eq!(v["t"], serde_json::json!([["2", "0", "4"]]));
    // off the c = -1 surface there is no normal form
    assert_eq!(qdsr(&["canonicalize", data("site_values.json").to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn bad_input_exits_2() {
    assert_eq!(qdsr(&["canonicalize", data("singular.json").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(qdsr(&["canonicalize", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(qdsr(&["verify", "--suite", "lattice", "--N", "2"]).status.code(), Some(2));
    assert_eq!(qdsr(&["verify", "--points", "0"]).status.code(), Some(2));
    assert_eq!(qdsr(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(qdsr(&["verify", "--q", "x/y"]).status.code(), Some(2));
}

#[test]
fn verify_lattice_with_extra_point() {
    let out = qdsr(&["verify", "--suite", "lattice", "--N", "3", "--points", "2", "--point", data("site_values.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["config"]["extra_points"][0]["sites"][1]["c"], "-1/2");
    let jac = v["checks"].as_array().unwrap().iter().find(|c| c["id"] == "lattice.jacobi").unwrap();
    assert!(jac["details"].as_str().unwrap().starts_with("3 points"));
}

#[test]
fn verify_is_deterministic_and_report_rerenders() {
    let args = ["verify", "--suite", "loop", "--points", "2", "--seed", "9", "--q", "2"];
    let a = qdsr(&args);
    let b = qdsr(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let dir = std::env::temp_dir().join(format!("qdsr-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let saved = dir.join("loop.json");
    std::fs::write(&saved, &a.stdout).unwrap();
    let md = qdsr(&["report", saved.to_str().unwrap(), "--format", "md"]);
    assert_eq!(md.status.code(), Some(0));
    let text = String::from_utf8(md.stdout).unwrap();
    assert!(text.starts_with("# Verification report: suite `loop`"));
    assert!(text.contains("| `loop.q_specialization` |"));

    // out-dir via the environment
    let out = Command::new(env!("CARGO_BIN_EXE_qdsr"))
        .args(["solve-phi", "--case", "lattice", "--N", "4"])
        .env("QDSR_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success() && out.stdout.is_empty());
    let phi: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("phi.json")).unwrap()).unwrap();
    assert_eq!(phi["phi"], serde_json::json!(["1", "-1/2", "0", "1/2"]));
    std::fs::remove_dir_all(&dir).unwrap();
}
