use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_premonoid"))
        .args(args)
        .env_remove("PREMONOID_MAX_DEGREE")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("premonoid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn factor_singular_map() {
    let out = run(&["factor", "--monoid", "singular-tn", "--n", "3", "--images", "2,3,2", "--check"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["length"], 3);
    assert_eq!(v["bound"], 5);
    let factors = v["factors"].as_array().unwrap();
    assert_eq!(factors.len(), 3);
    for f in factors {
        let images: Vec<u64> = serde_json::from_value(f.clone()).unwrap();
        let moved = images.iter().enumerate().filter(|(i, &x)| x != *i as u64 + 1).count();
        assert_eq!(moved, 1, "{images:?} is not a quasi-identity");
    }
    assert!(stderr(&out).contains("re-verified"));
}

#[test]
fn factor_identity_matrix() {
    let path = temp_file(
        "id3.json",
        r#"{"n":3,"entries":[["1","0","0"],["0","1","0"],["0","0","1"]]}"#,
    );
    let out = run(&["factor", "--monoid", "orthogonal", "--matrix", path.to_str().unwrap(), "--check"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["length"], 0);
    assert_eq!(v["factors"], Value::Array(vec![]));
}

#[test]
fn factor_rotation_into_reflections() {
    let path = temp_file("rot.json", r#"{"n":2,"entries":[["3/5","-4/5"],["4/5","3/5"]]}"#);
    let out = run(&["factor", "--monoid", "orthogonal", "--matrix", path.to_str().unwrap(), "--check"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["length"], 2);
}

#[test]
fn factor_permutation_and_generic_engines() {
    let out = run(&["factor", "--monoid", "sn", "--images", "2,3,1", "--check"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["factors"], serde_json::json!([[2, 1, 3], [1, 3, 2]]));

    let out = run(&[
        "factor", "--monoid", "singular-tn", "--images", "2,3,2,1", "--engine", "quarks", "--s", "3", "--check",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert!(v["length"].as_u64().unwrap() <= v["bound"].as_u64().unwrap());

    let out = run(&["factor", "--monoid", "power", "--base", "s3", "--element", "31", "--check"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["engine"], "irreducibles");
}

#[test]
fn table_file_monoid() {
    // The union semilattice on {1, 2}: 0 = {}, 1 = {1}, 2 = {2}, 3 = {1,2}.
    let path = temp_file("union.txt", "4\n0 1 2 3\n1 1 3 3\n2 3 2 3\n3 3 3 3\n");
    let p = path.to_str().unwrap();
    let out = run(&["factor", "--monoid", "table-file", "--table", p, "--element", "3", "--check"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    let factors: Vec<u64> = v["factors"].as_array().unwrap().iter().map(|f| f["index"].as_u64().unwrap()).collect();
    assert_eq!(factors, vec![1, 2]);

    let out = run(&["enumerate", "--monoid", "table-file", "--table", p, "--class", "quarks"]);
    assert_eq!(json(&out)["count"], 2);
    // Every element is idempotent, so none is an atom.
    let out = run(&["enumerate", "--monoid", "table-file", "--table", p, "--class", "atoms"]);
    assert_eq!(json(&out)["count"], 0);
}

#[test]
fn verify_howie() {
    let out = run(&["verify", "--suite", "howie", "--max-n", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["failures"], Value::Array(vec![]));
    assert_eq!(v["checked"], 2 + 21 + 232 + 3005);
    assert!(v.get("wall_time").is_none());
}

#[test]
fn verify_small_suites() {
    let out = run(&["verify", "--suite", "transpositions", "--min-n", "4", "--max-n", "4"]);
    assert_eq!(json(&out)["checked"], 23);
    let out = run(&["verify", "--suite", "cd", "--dims", "2,3", "--trials", "10", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["checked"], 20);
    let out = run(&["verify", "--suite", "predicates", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("PASS predicates"));
    assert!(text.contains("not acyclic"));
}

#[test]
fn verify_csv_columns() {
    let out = run(&["verify", "--suite", "howie", "--max-n", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("suite,n,element,fix_size,bound,constructive_len,oracle_len,status")
    );
    assert_eq!(lines.count(), 2 + 21);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "--suite", "cd", "--dims", "3", "--trials", "8"][..],
        &["factor", "--monoid", "tn", "--images", "3,3,1,2"][..],
        &["oracle", "--monoid", "singular-tn", "--images", "2,3,4,1,1"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn oracle_query() {
    let out = run(&["oracle", "--monoid", "singular-tn", "--images", "2,3,2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["min_length"], 3);
    assert_eq!(v["witness"].as_array().unwrap().len(), 3);

    let out = run(&["oracle", "--monoid", "tn", "--images", "2,1,3"]);
    assert_eq!(json(&out)["min_length"], Value::Null);
}

#[test]
fn enumerate_quarks() {
    let out = run(&["enumerate", "--monoid", "singular-tn", "--n", "3", "--class", "quarks"]);
    let v = json(&out);
    assert_eq!(v["count"], 6);
    let out = run(&["enumerate", "--monoid", "singular-tn", "--n", "3", "--class", "units"]);
    assert_eq!(json(&out)["elements"], serde_json::json!([[1, 2, 3]]));
}

fn assert_usage_error(args: &[&str], field: &str) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(2), "{args:?}");
    let err = stderr(&out);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains(field), "{err} does not name {field}");
}

#[test]
fn malformed_input_exits_2() {
    assert_usage_error(&["factor", "--monoid", "singular-tn", "--images", "2,1,3"], "--images");
    assert_usage_error(&["factor", "--monoid", "singular-tn", "--n", "4", "--images", "1,1,1"], "--images");
    assert_usage_error(&["factor", "--monoid", "tn", "--images", "1,x"], "--images");
    assert_usage_error(&["factor", "--monoid", "tn", "--images", "1,1", "--base", "z2"], "--base");
    assert_usage_error(&["factor", "--monoid", "power", "--base", "q", "--element", "1"], "--base");
    assert_usage_error(&["factor", "--monoid", "power", "--base", "z2", "--element", "9"], "--element");
    assert_usage_error(&["factor", "--monoid", "singular-tn", "--images", "1,1,2", "--engine", "quarks", "--s", "5"], "--s");
    assert_usage_error(&["verify", "--suite", "everything"], "--suite");
    assert_usage_error(&["verify", "--suite", "cd", "--dims", "2,x"], "--dims");
    assert_usage_error(&["enumerate", "--monoid", "tn", "--n", "9", "--class", "quarks"], "--n");

    let bad = temp_file("bad.json", r#"{"n":1,"entries":[["3/6"]]}"#);
    assert_usage_error(&["factor", "--monoid", "orthogonal", "--matrix", bad.to_str().unwrap()], "--matrix");
    let skew = temp_file("skew.json", r#"{"n":2,"entries":[["1","1"],["0","1"]]}"#);
    assert_usage_error(&["factor", "--monoid", "orthogonal", "--matrix", skew.to_str().unwrap()], "--matrix");

    // Unknown flags are rejected by the argument parser with exit 2 as well.
    assert_eq!(run(&["factor", "--monoid", "tn", "--bogus"]).status.code(), Some(2));
}

#[test]
fn degree_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_premonoid"))
        .args(["oracle", "--monoid", "tn", "--images", "1,1,2,3"])
        .env("PREMONOID_MAX_DEGREE", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--n"));

    let out = Command::new(env!("CARGO_BIN_EXE_premonoid"))
        .args(["verify", "--suite", "predicates"])
        .env("PREMONOID_MAX_DEGREE", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("PREMONOID_MAX_DEGREE"));
}
