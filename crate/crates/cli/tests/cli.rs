use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tamedeg_cli::{run_args, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE, EXIT_VERIFY_FAILED};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tamedeg"))
        .args(args)
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = bin(args);
    let doc = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), doc)
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tamedeg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn construct_step2_json() {
    let (code, doc) = json(&["construct", "4", "6", "7", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["status"], "constructed");
    assert_eq!(doc["case"], "Step2");
    assert_eq!(doc["parameters"]["u"], serde_json::json!(["3/2"]));
    assert_eq!(doc["multidegree"], serde_json::json!([4, 6, 7]));
    assert_eq!(doc["verification"]["passed"], true);
    assert_eq!(doc["word"][0]["axis"], "y");
    assert_eq!(doc["word"][0]["poly"], "z^6 + 3/2*x*z^2 + z");
}

#[test]
fn construct_no_expand_omits_coordinates() {
    let (code, doc) = json(&["construct", "3", "5", "8", "--json", "--no-expand"]);
    assert_eq!(code, EXIT_OK);
    assert!(doc.get("expanded").map_or(true, Value::is_null));
    assert_eq!(doc["case"], "Fact1Semigroup");
}

#[test]
fn unsorted_input_in_input_order() {
    let (code, doc) = json(&["construct", "7", "4", "6", "--json", "--input-order"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["sorted"], serde_json::json!([4, 6, 7]));
    assert_eq!(doc["multidegree"], serde_json::json!([7, 4, 6]));
    assert_eq!(doc["word"].as_array().unwrap().last().unwrap()["kind"], "linear");
}

#[test]
fn unknown_and_usage_codes() {
    assert_eq!(bin(&["construct", "3", "4", "5"]).status.code(), Some(EXIT_UNKNOWN));
    assert_eq!(bin(&["construct", "0", "1", "2"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(bin(&["construct", "1", "2"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(bin(&["--help"]).status.code(), Some(EXIT_OK));
}

#[test]
fn threshold_reports_remark() {
    let (code, doc) = json(&["threshold", "4", "14", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["e"], 28);
    assert_eq!(doc["r"], 12);
    assert_eq!(doc["c0"], 16);
    assert_eq!(doc["remark1_applied"], false);
}

#[test]
fn verify_word_file() {
    let path = scratch(
        "good.txt",
        "# step 2 word for (4,6,7)\nE(y, z^6 + 3/2*x*z^2 + z)\nE(x, z^4)\nE(z, x^3 - y^2)\n",
    );
    let p = path.to_str().unwrap();
    let (code, doc) = json(&["verify", p, "--expect", "4,6,7", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["verification"]["passed"], true);

    let out = bin(&["verify", p, "--expect", "4,6,8"]);
    assert_eq!(out.status.code(), Some(EXIT_VERIFY_FAILED));
}

#[test]
fn verify_rejects_own_axis_with_line() {
    let path = scratch("bad.txt", "E(x, y)\nE(z, z)\n");
    let out = bin(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn verify_linear_factor() {
    let path = scratch("lin.txt", "L(0, 1, 0; 1, 0, 0; 0, 0, -1/3)\nE(x, y^2)\n");
    let (code, doc) = json(&["verify", path.to_str().unwrap(), "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["verification"]["jacobian_constant"], "1/3");
}

#[test]
fn atlas_rows() {
    let (code, doc) = json(&["atlas", "4", "6", "--cmax", "10", "--json"]);
    assert_eq!(code, EXIT_OK);
    let rows = doc.as_array().or_else(|| doc["rows"].as_array()).unwrap();
    let c7 = rows.iter().find(|r| r["c"] == 7).unwrap();
    assert_eq!(c7["case"], "Step2");
}

#[test]
fn certify_pair_codes() {
    assert_eq!(bin(&["certify-pair", "4", "6"]).status.code(), Some(EXIT_OK));
    let (code, doc) = json(&["certify-pair", "4", "14", "--json"]);
    assert_eq!(code, EXIT_UNKNOWN);
    assert_eq!(doc["uncovered"], serde_json::json!([15]));
    assert_eq!(bin(&["certify-pair", "3", "6"]).status.code(), Some(EXIT_USAGE));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["construct", "5", "8", "31", "--json"][..],
        &["atlas", "5", "7", "--cmax", "30"][..],
    ] {
        let first = bin(args).stdout;
        for _ in 0..3 {
            assert_eq!(bin(args).stdout, first);
        }
    }
}

#[test]
fn library_entry_matches_binary() {
    let resp = run_args(["tamedeg", "construct", "4", "6", "7"]);
    assert_eq!(resp.code, EXIT_OK);
    assert_eq!(resp.stdout.as_bytes(), bin(&["construct", "4", "6", "7"]).stdout);
}
