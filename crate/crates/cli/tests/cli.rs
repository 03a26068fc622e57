use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn ttensor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ttensor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_json(dir: &TempDir, name: &str, value: &Value) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, value.to_string()).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn example_a() -> Value {
    json!({"dims": [2, 2, 2], "data": [2, 1, 1, 1, 0, 0, 0, 0]})
}

#[test]
fn tprod_of_example_with_itself() {
    let dir = TempDir::new().unwrap();
    let a = write_json(&dir, "a.json", &example_a());
    let out_path = dir.path().join("out.json");
    let out = ttensor(&["tprod", s(&a), s(&a), "-o", s(&out_path)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("dims 2 2 2\n"));
    let written: Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(written, json!({"dims": [2, 2, 2], "data": [5.0, 3.0, 3.0, 2.0, 0.0, 0.0, 0.0, 0.0]}));
}

#[test]
fn tprod_identity_round_trip_is_exact() {
    let dir = TempDir::new().unwrap();
    let data: Vec<f64> = (0..18).map(|i| (i as f64 * 0.731).sin() / 7.0).collect();
    let a = write_json(&dir, "a.json", &json!({"dims": [3, 2, 3], "data": data}));
    let id = write_json(
        &dir,
        "id.json",
        &json!({"dims": [3, 3, 3], "data": [1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]}),
    );
    let out_path = dir.path().join("out.json");
    assert_eq!(code(&ttensor(&["tprod", s(&id), s(&a), "-o", s(&out_path)])), 0);
    let written: Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    let got: Vec<f64> = serde_json::from_value(written["data"].clone()).unwrap();
    for (x, y) in got.iter().zip(&data) {
        assert!((x - y).abs() <= 1e-15, "{x} vs {y}");
    }
}

#[test]
fn tprod_output_matches_library() {
    let dir = TempDir::new().unwrap();
    let a_data: Vec<f64> = (0..12).map(|i| ((i * 7 % 5) as f64 - 2.0) / 3.0).collect();
    let b_data: Vec<f64> = (0..12).map(|i| ((i * 3 % 7) as f64 - 3.0) / 5.0).collect();
    let a = write_json(&dir, "a.json", &json!({"dims": [2, 2, 3], "data": a_data}));
    let b = write_json(&dir, "b.json", &json!({"dims": [2, 2, 3], "data": b_data}));
    let out_path = dir.path().join("out.json");
    assert_eq!(code(&ttensor(&["tprod", s(&a), s(&b), "-o", s(&out_path)])), 0);
    let written: Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    let got: Vec<f64> = serde_json::from_value(written["data"].clone()).unwrap();
    let ta = ttensor::Tensor3::new(2, 2, 3, a_data).unwrap();
    let tb = ttensor::Tensor3::new(2, 2, 3, b_data).unwrap();
    let expected = ttensor::t_product(&ta, &tb).unwrap();
    let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
    assert_eq!(bits(&got), bits(expected.as_slice()));
}

#[test]
fn tprod_shape_and_file_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let a = write_json(&dir, "a.json", &example_a());
    let b = write_json(&dir, "b.json", &json!({"dims": [3, 1, 2], "data": [1, 2, 3, 4, 5, 6]}));
    let out_path = dir.path().join("out.json");
    assert_eq!(code(&ttensor(&["tprod", s(&a), s(&b), "-o", s(&out_path)])), 2);
    assert_eq!(code(&ttensor(&["tprod", s(&a), "missing.json", "-o", s(&out_path)])), 2);
    let extra = write_json(&dir, "x.json", &json!({"dims": [1, 1, 1], "data": [1], "note": "x"}));
    assert_eq!(code(&ttensor(&["tprod", s(&extra), s(&extra), "-o", s(&out_path)])), 2);
    let short = write_json(&dir, "y.json", &json!({"dims": [1, 1, 2], "data": [1]}));
    assert_eq!(code(&ttensor(&["tprod", s(&short), s(&short), "-o", s(&out_path)])), 2);
}

#[test]
fn eig_identity_and_tube() {
    let dir = TempDir::new().unwrap();
    let id = write_json(&dir, "id.json", &json!({"dims": [2, 2, 2], "data": [1, 0, 0, 1, 0, 0, 0, 0]}));
    let out = ttensor(&["eig", s(&id), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let values = v["eigenvalues"].as_array().unwrap();
    assert_eq!(values.len(), 4);
    assert!(values.iter().all(|e| e["re"] == 1.0 && e["im"] == 0.0));

    let tube = write_json(&dir, "tube.json", &json!({"dims": [1, 1, 2], "data": [0, 1]}));
    let out = ttensor(&["eig", s(&tube), "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let res: Vec<f64> = v["eigenvalues"].as_array().unwrap().iter().map(|e| e["re"].as_f64().unwrap()).collect();
    assert_eq!(res, vec![1.0, -1.0]);
    assert_eq!(v["eigenvalues"][0]["slice"], 0);
    assert_eq!(v["eigenvalues"][1]["slice"], 1);
}

#[test]
fn eig_text_lists_every_value() {
    let dir = TempDir::new().unwrap();
    let a = write_json(&dir, "a.json", &json!({"dims": [2, 2, 3], "data": [1, 2, 3, 4, -1, 0, 2, 1, 0, 1, 1, 0]}));
    let out = ttensor(&["eig", s(&a)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 1 + 6);
}

#[test]
fn eig_of_non_square_exits_2() {
    let dir = TempDir::new().unwrap();
    let a = write_json(&dir, "a.json", &json!({"dims": [1, 2, 1], "data": [1, 2]}));
    assert_eq!(code(&ttensor(&["eig", s(&a)])), 2);
}

#[test]
fn check_documented_examples() {
    assert_eq!(code(&ttensor(&["check", "loewner-heinz", "--n", "3", "--n3", "4", "--trials", "100", "--seed", "7"])), 0);
    let out = ttensor(&["check", "am-gm", "--mode", "literal", "--trials", "50", "--seed", "1", "--json"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    let violated = text
        .lines()
        .filter_map(|l| serde_json::from_str::<Value>(l).ok())
        .any(|v| v["theorem_id"] == "am-gm" && v["holds"] == false);
    assert!(violated);
    assert_eq!(code(&ttensor(&["check", "nosuch"])), 2);
}

#[test]
fn check_json_lines_and_summary() {
    let out = ttensor(&["check", "schur", "--n", "2", "--n3", "3", "--trials", "5", "--seed", "3", "--json"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 6);
    for (trial, cert) in lines[..5].iter().enumerate() {
        let keys: Vec<&String> = cert.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 10);
        assert_eq!(cert["params"]["stream"], trial as f64);
    }
    assert_eq!(lines[5]["summary"]["violations"], 0);
    assert_eq!(lines[5]["summary"]["trials"], 5);
}

#[test]
fn check_output_is_reproducible_across_threads() {
    let args = ["check", "young-witness", "--n", "3", "--n3", "3", "--trials", "12", "--seed", "11", "--json"];
    let single = Command::new(env!("CARGO_BIN_EXE_ttensor"))
        .args(args)
        .env("TTENSOR_THREADS", "1")
        .output()
        .unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_ttensor"))
        .args(args)
        .env("TTENSOR_THREADS", "6")
        .output()
        .unwrap();
    assert_eq!(code(&single), 0);
    assert_eq!(single.stdout, many.stdout);
    assert_eq!(single.stdout, ttensor(&args).stdout);
}

#[test]
fn check_hypothesis_failures_exit_3() {
    let out = ttensor(&["check", "loewner-heinz", "--r", "2", "--trials", "3"]);
    assert_eq!(code(&out), 3);
    let out = ttensor(&["check", "loewner-heinz", "--r", "2", "--trials", "3", "--mode", "exploratory", "--n", "2"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn check_rejects_bad_flags() {
    assert_eq!(code(&ttensor(&["check", "schur", "--mode", "sloppy"])), 2);
    assert_eq!(code(&ttensor(&["check", "schur", "--n", "0"])), 2);
    assert_eq!(code(&ttensor(&["check", "schur", "--tol", "-1"])), 2);
}

#[test]
fn gershgorin_examples() {
    let dir = TempDir::new().unwrap();
    let diag = write_json(&dir, "d.json", &json!({"dims": [2, 2, 3], "data": [1.5, 0, 0, -2, 0, 0, 0, 0, 0, 0, 0, 0]}));
    let out = ttensor(&["gershgorin", s(&diag), "--json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["discs"].as_array().unwrap().iter().all(|d| d["radius"] == 0.0));

    let tube = write_json(&dir, "t.json", &json!({"dims": [1, 1, 2], "data": [0, 1]}));
    let out = ttensor(&["gershgorin", s(&tube), "--json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["discs"], json!([{"center_re": 0.0, "center_im": 0.0, "radius": 1.0}]));
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 2);
    assert_eq!(v["all_contained"], true);

    let data: Vec<f64> = (0..48).map(|i| ((i * 37 % 11) as f64 - 5.0) / 4.0).collect();
    let random = write_json(&dir, "r.json", &json!({"dims": [4, 4, 3], "data": data}));
    assert_eq!(code(&ttensor(&["gershgorin", s(&random)])), 0);
}

#[test]
fn complex_tensor_files() {
    let dir = TempDir::new().unwrap();
    let a = write_json(&dir, "c.json", &json!({"dims": [1, 1, 2], "data_re": [0, 1], "data_im": [1, 0]}));
    let out = ttensor(&["eig", s(&a), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let vals: Vec<(f64, f64)> = v["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["re"].as_f64().unwrap(), e["im"].as_f64().unwrap()))
        .collect();
    // Fourier values of the tube (i, 1) are i + 1 and i - 1.
    assert_eq!(vals.len(), 2);
    assert!(vals.iter().any(|&(r, i)| (r - 1.0).abs() < 1e-15 && (i - 1.0).abs() < 1e-15));
    assert!(vals.iter().any(|&(r, i)| (r + 1.0).abs() < 1e-15 && (i - 1.0).abs() < 1e-15));
    let out_path = dir.path().join("sq.json");
    assert_eq!(code(&ttensor(&["tprod", s(&a), s(&a), "-o", s(&out_path)])), 0);
    let written: Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert!(written.get("data_re").is_some() && written.get("data_im").is_some());
}
