use std::path::Path;
use std::process::Command;

use serde_json::{json, Value};

fn tschirn(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_tschirn")).args(args).output().expect("binary runs");
    let value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().expect("exit code"), value)
}

fn golden(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden").join(name).display().to_string()
}

#[test]
fn predict_trigonal_on_f5() {
    let (code, v) = tschirn(&["predict", "--m", "3", "--e", "5", "--delta", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["structure"], json!([0, -5, -10]));
    assert_eq!(v["genus"], 13);
    assert_eq!(v["tschirnhausen"], json!([-5, -10]));
}

#[test]
fn predict_through_vertex() {
    let (code, v) = tschirn(&["predict", "--m", "4", "--e", "2", "--delta", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["structure"], json!([0, -3, -5, -7]));
    assert_eq!(v["twisted"], json!([0, -2, -5, -7]));
    assert_eq!(v["genus_formula"]["through_vertex"], 12);
}

#[test]
fn degree_one_is_a_usage_error() {
    let (code, v) = tschirn(&["predict", "--m", "1", "--e", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"], "usage");
    let out = Command::new(env!("CARGO_BIN_EXE_tschirn")).args(["predict", "--m"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn calculus_subcommands() {
    let (code, v) = tschirn(&["intersect", "--d1", "H", "--d2", "H", "--e", "4"]);
    assert_eq!((code, v["value"].clone()), (0, json!(4)));
    let (_, v) = tschirn(&["intersect", "--d1", "Y0", "--d2", "Y0", "--e", "3"]);
    assert_eq!(v["value"], -3);
    let (code, v) = tschirn(&["pushforward", "--k", "-3", "--e", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["direct"], json!([]));
    assert_eq!(v["r1"], json!([-2, -4]));
    let (code, v) = tschirn(&["adjunction", "--class", "3H", "--e", "2"]);
    assert_eq!((code, v["genus"].clone()), (0, json!(4)));
    let (code, _) = tschirn(&["adjunction", "--class", "3Q", "--e", "2"]);
    assert_eq!(code, 1);
}

#[test]
fn verify_generated_and_file() {
    let (code, v) = tschirn(&["verify", "--m", "3", "--e", "2", "--delta", "1", "--seed", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["computed"], json!([0, -3, -5]));
    assert_eq!(v["computed_twisted"], json!([0, -2, -5]));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.json");
    std::fs::write(&path, v["instance"].to_string()).unwrap();
    let (code, w) = tschirn(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(w["computed"], v["computed"]);
}

#[test]
fn singular_curve_exits_two_with_witness() {
    let case: Value = serde_json::from_str(&std::fs::read_to_string(golden("nodal.json")).unwrap()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nodal.json");
    std::fs::write(&path, case["instance"].to_string()).unwrap();
    let (code, v) = tschirn(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["witness"]["base_values"], json!(["0/1"]));
}

#[test]
fn center_on_line_exits_one() {
    let plane = json!({
        "G": [{"exp": [2, 0, 0], "coeff": 1}, {"exp": [0, 2, 0], "coeff": 1}, {"exp": [0, 0, 2], "coeff": -1}],
        "P": [0, 0, 1],
        "L": [1, 0, 0],
    });
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plane.json");
    std::fs::write(&path, plane.to_string()).unwrap();
    let (code, _) = tschirn(&["plane", path.to_str().unwrap()]);
    assert_eq!(code, 1);
}

#[test]
fn malformed_files_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"m\": 2").unwrap();
    assert_eq!(tschirn(&["verify", path.to_str().unwrap()]).0, 1);
    assert_eq!(tschirn(&["plane", path.to_str().unwrap()]).0, 1);
    assert_eq!(tschirn(&["verify", "/nonexistent/curve.json"]).0, 1);
}

#[test]
fn pretty_output_is_not_json() {
    let out = Command::new(env!("CARGO_BIN_EXE_tschirn"))
        .args(["predict", "--m", "2", "--e", "1", "--pretty"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(serde_json::from_str::<Value>(&text).is_err());
    assert!(text.contains("structure"));
}

#[test]
fn corrupted_golden_file_fails_the_suite() {
    let dir = tempfile::tempdir().unwrap();
    let mut case: Value = serde_json::from_str(&std::fs::read_to_string(golden("conic_f1.json")).unwrap()).unwrap();
    case["expect"]["/computed"] = json!([0, -2]);
    std::fs::write(dir.path().join("conic_f1.json"), case.to_string()).unwrap();
    std::fs::write(dir.path().join("truncated.json"), "{\"name\": ").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_tschirn"))
        .args(["suite", "--scale", "smoke", "--delta", "0", "--golden", dir.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let failing: Vec<&str> = rows.iter().filter(|r| r["pass"] == false).map(|r| r["id"].as_str().unwrap()).collect();
    assert_eq!(failing, ["golden conic_f1", "golden (unreadable)"]);
    assert_eq!(v["all_pass"], false);
}

#[test]
fn timeout_exits_three() {
    let (code, v) = tschirn(&["verify", "--m", "5", "--e", "3", "--delta", "1", "--timeout-ms", "1"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"], "timeout");
}
