use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_motivic-hall"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn atom_json(dim: [u32; 2]) -> Value {
    json!({"terms": [{"class": {"indecs": {format!("[{},{}]", dim[0], dim[1]): 1}}, "coeff": 1}]})
}

fn poly(terms: &[(i64, &str)]) -> Value {
    json!({"num": terms, "den": {}})
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, v.to_string()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn enumerate_lists_classes() {
    let v = stdout_json(&run(&["enumerate", "--dim", "1,1", "--q", "2"]));
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 2);
    assert!(classes.iter().all(|c| c["aut_count"] == 1));
    let zero = stdout_json(&run(&["enumerate", "--dim", "0,0"]));
    assert_eq!(zero["classes"].as_array().unwrap().len(), 1);
}

#[test]
fn enumerate_writes_table_and_out() {
    let dir = TempDir::new().unwrap();
    let table = dir.path().join("table.json");
    let out = dir.path().join("out.json");
    let o = run(&["enumerate", "--dim", "2,0", "--table", s(&table), "--out", s(&out)]);
    assert!(o.status.success());
    let t: Value = serde_json::from_str(&fs::read_to_string(&table).unwrap()).unwrap();
    assert_eq!(t["classes"][0]["display"], "L^4 - L^3 - L^2 + L");
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["motivic_table"], t);
}

#[test]
fn enumerate_budget_exceeded() {
    let o = run(&["enumerate", "--dim", "3,3", "--budget", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn product_and_bracket() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "s2.json", &atom_json([0, 1]));
    let b = write(&dir, "s1.json", &atom_json([1, 0]));
    let v = stdout_json(&run(&["product", s(&a), s(&b)]));
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    let coeff = |k: &str| {
        terms
            .iter()
            .find(|t| t["class"]["indecs"].get(k).is_some())
            .map(|t| t["coeff"].clone())
            .unwrap()
    };
    let split = terms
        .iter()
        .find(|t| t["class"]["indecs"].as_object().unwrap().len() == 2)
        .unwrap();
    assert_eq!(split["coeff"], poly(&[(0, "1")]));
    assert_eq!(coeff("[1,1]"), poly(&[(0, "-1"), (1, "1")]));
    let br = stdout_json(&run(&["bracket", s(&a), s(&a)]));
    assert_eq!(br["terms"], json!([]));
    let br = stdout_json(&run(&["bracket", s(&a), s(&b)]));
    assert_eq!(
        br,
        json!({"terms": [{"class": {"indecs": {"[1,1]": 1}}, "coeff": poly(&[(0, "1")])}]})
    );
}

#[test]
fn product_output_round_trips_and_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "s2.json", &atom_json([0, 1]));
    let b = write(&dir, "s1.json", &atom_json([1, 0]));
    let first = run(&["product", s(&a), s(&b)]);
    let second = run(&["product", s(&a), s(&b)]);
    assert_eq!(first.stdout, second.stdout);
    let p = dir.path().join("p.json");
    fs::write(&p, &first.stdout).unwrap();
    let unit = write(&dir, "unit.json", &json!({"terms": [{"class": {"indecs": {}}, "coeff": 1}]}));
    let again = run(&["product", s(&p), s(&unit)]);
    assert_eq!(again.stdout, first.stdout);
}

#[test]
fn product_outside_window_fails() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", &atom_json([1, 1]));
    let o = run(&["product", s(&a), s(&a), "--window", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn integrate_semiclassical_atom() {
    let dir = TempDir::new().unwrap();
    let u = write(
        &dir,
        "u.json",
        &json!({"terms": [{"class": {"indecs": {"[1,0]": 1}}, "coeff": 1}]}),
    );
    let v = stdout_json(&run(&["integrate", s(&u), "--weight", "one", "--sigma", "+1"]));
    assert_eq!(v["terms"], json!([{"dim": [1, 0], "coeff": 1}]));
    let p = write(
        &dir,
        "p.json",
        &json!({"terms": [{"class": {"indecs": {"[1,1]": 1}}, "coeff": 1}]}),
    );
    let v = stdout_json(&run(&["integrate", s(&p), "--weight", "behrend", "--sigma", "-1"]));
    assert_eq!(v["terms"], json!([{"dim": [1, 1], "coeff": -1}]));
    let w = write(
        &dir,
        "w.json",
        &json!({"weights": [{"class": {"indecs": {"[1,1]": 1}}, "value": 7}]}),
    );
    let v = stdout_json(&run(&["integrate", s(&p), "--weight", s(&w)]));
    assert_eq!(v["terms"], json!([{"dim": [1, 1], "coeff": 7}]));
}

#[test]
fn integrate_rejects_non_regular_input() {
    let dir = TempDir::new().unwrap();
    let u = write(
        &dir,
        "u.json",
        &json!({"terms": [{"class": {"indecs": {"[1,0]": 1}}, "coeff": {"num": [[0, "1"]], "den": {"1": 1}}}]}),
    );
    assert_eq!(run(&["integrate", s(&u)]).status.code(), Some(1));
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "associativity"]);
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(run(&["verify", "gl-counts"]).status.code(), Some(0));
    let fail = run(&["verify", "conditions", "--weight", "behrend", "--sigma", "+1"]);
    assert_eq!(fail.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&fail.stdout).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(
        run(&["verify", "conditions", "--weight", "behrend", "--sigma", "-1"]).status.code(),
        Some(0)
    );
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(1));
}

#[test]
fn custom_quiver_file() {
    let dir = TempDir::new().unwrap();
    let q = write(
        &dir,
        "a3.json",
        &json!({"vertices": ["1", "2", "3"], "arrows": [["1", "2"], ["2", "3"]]}),
    );
    let v = stdout_json(&run(&["enumerate", "--dim", "1,1,1", "--quiver", s(&q)]));
    assert_eq!(v["classes"].as_array().unwrap().len(), 4);
    assert_eq!(run(&["enumerate", "--dim", "1,1", "--quiver", s(&q)]).status.code(), Some(1));
}
