use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn spinlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinlab")).args(args).env_remove("SPINLAB_GOLDEN_DIR").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = spinlab(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("spinlab-test-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn weights_of_two_spin_one_halves() {
    let doc = json(&["weights", "--ell", "1,1", "--v", "1"]);
    assert_eq!(doc["schema"], "v1");
    assert_eq!(doc["status"], "pass");
    assert_eq!(doc["config"]["command"], "weights");
    let ws = doc["result"]["weights"].as_array().unwrap();
    let texts: Vec<_> = ws.iter().map(|w| (w["lambda"].clone(), w["value"]["text"].as_str().unwrap().to_string())).collect();
    assert_eq!(texts[0], (serde_json::json!([1, 0]), "-y_1 + z_2 + hbar".to_string()));
    assert_eq!(texts[1], (serde_json::json!([0, 1]), "y_1 - z_1 + hbar".to_string()));
}

#[test]
fn single_site_weight_is_one() {
    let doc = json(&["weights", "--ell", "3", "--v", "2"]);
    assert_eq!(doc["result"]["weights"][0]["value"]["text"], "1");
}

#[test]
fn restriction_matrix_is_emitted() {
    let doc = json(&["weights", "--ell", "2,2", "--v", "2", "--restrict"]);
    let r = &doc["result"]["restriction"];
    assert_eq!(r["rows"].as_array().unwrap().len(), 3);
    assert!(doc["result"]["restriction_z"].is_object());
    let sym = json(&["weights", "--ell", "2,2", "--v", "2", "--sigma", "2,1", "--restrict"]);
    assert_eq!(sym["config"]["sigma"], "21");
}

#[test]
fn rmatrix_of_two_spin_one_halves() {
    let doc = json(&["rmatrix", "--ell", "1,1", "--v", "1"]);
    assert_eq!(doc["config"]["sigma_prime"], "id");
    assert_eq!(doc["config"]["sigma"], "21");
    let text = doc["result"]["matrix_z"].to_string();
    assert!(text.contains("-2*hbar/(z - 2*hbar)"), "{text}");
    assert!(text.contains("-z/(z - 2*hbar)"), "{text}");
}

#[test]
fn lattice_states_are_dumped() {
    let doc = json(&["lattice", "--ell", "1,1", "--v", "1", "--boundary", "1,0", "--dump-states"]);
    let b = &doc["result"]["boundaries"][0];
    assert_eq!(b["theorem"], "pass");
    assert_eq!(b["transfer"], "pass");
    assert_eq!(b["prefactor"]["text"], "-2*hbar");
    assert_eq!(b["states"].as_array().unwrap().len(), 1);
    let all = json(&["lattice", "--ell", "1,2", "--v", "2"]);
    assert_eq!(all["result"]["boundaries"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_suites_pass() {
    for suite in ["yangian", "properties", "lattice", "braid"] {
        let doc = json(&["verify", suite, "--ell", "1,2", "--vmax", "1"]);
        assert_eq!(doc["status"], "pass", "{suite}");
    }
    let doc = json(&["verify", "yangian", "--ell", "2", "--vmax", "2"]);
    assert_eq!(doc["status"], "pass");
    let doc = json(&["verify", "yangian", "--ell", "1,1", "--vmax", "1", "--mode", "randomized", "--seed", "7", "--trials", "2"]);
    assert_eq!(doc["config"]["seed"], 7);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["weights", "--ell", "0,1", "--v", "1"][..],
        &["weights", "--ell", "1,1", "--v", "1", "--sigma", "3,1"],
        &["lattice", "--ell", "1,1", "--v", "1", "--boundary", "2,0"],
        &["verify", "yangian", "--ell", "1,1", "--vmax", "1", "--mode", "randomized"],
        &["verify", "yangian", "--ell", "l,l", "--vmax", "1", "--mode", "randomized", "--seed", "1"],
        &["frobnicate"],
    ] {
        assert_eq!(spinlab(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn ascii_and_latex_formats() {
    let out = spinlab(&["--format", "ascii", "verify", "properties", "--ell", "1,2", "--vmax", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("properties PASS\n"), "{text}");
    assert!(text.contains("  triangularity: "), "{text}");
    let out = spinlab(&["--format", "latex", "rmatrix", "--ell", "1,1", "--v", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\\begin{bmatrix}"), "{text}");
    assert!(text.contains("\\frac{-z}{z - 2\\hbar}"), "{text}");
}

#[test]
fn output_flag_writes_the_artifact() {
    let dir = scratch("output");
    let path = dir.join("w.json");
    let out = spinlab(&["weights", "--ell", "1,1", "--v", "1", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, spinlab(&["weights", "--ell", "1,1", "--v", "1"]).stdout);
}

#[test]
fn golden_files_are_written_then_compared() {
    let dir = scratch("golden");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_spinlab"))
            .args(["weights", "--ell", "1,2", "--v", "1"])
            .env("SPINLAB_GOLDEN_DIR", &dir)
            .output()
            .unwrap()
    };
    assert_eq!(run().status.code(), Some(0));
    let files: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    assert_eq!(files[0].extension().unwrap(), "json");
    assert_eq!(run().status.code(), Some(0));
    std::fs::write(&files[0], "stale\n").unwrap();
    let out = run();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("differs from golden file"));
}

#[test]
fn thread_count_does_not_change_output() {
    let args = |t| vec!["--threads", t, "lattice", "--ell", "1,2,1", "--v", "2"];
    let one = spinlab(&args("1")).stdout;
    assert_eq!(one, spinlab(&args("4")).stdout);
}
