use std::path::Path;
use std::process::{Command, Output};

fn cyclolie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclolie")).args(args).env_remove("CYCLOLIE_CATALOG").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_entry(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

const ABELIAN2: &str = r#"{"id": "ab2", "name": "abelian", "dim": 2, "field": "complex", "brackets": [],
  "forms": [{"matrix": [[1, 0], [0, 1]]}]}"#;

const SL2_IDENTITY: &str = r#"{"id": "sl2id", "name": "sl2 with identity", "dim": 3, "field": "complex",
  "brackets": [{"i": 1, "j": 2, "k": 3, "c": 1}, {"i": 1, "j": 3, "k": 1, "c": -2}, {"i": 2, "j": 3, "k": 2, "c": 2}],
  "forms": [{"matrix": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}]}"#;

#[test]
fn validate_oscillator() {
    let o = cyclolie(&["validate", "oscillator4R"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("signature: (3,1)"));
}

#[test]
fn validate_files() {
    let dir = tempfile::tempdir().unwrap();
    let ab = write_entry(dir.path(), "ab.json", ABELIAN2);
    assert_eq!(cyclolie(&["validate", &ab]).status.code(), Some(0));

    let bad = write_entry(dir.path(), "sl2.json", SL2_IDENTITY);
    let o = cyclolie(&["validate", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] form 0 invariant"));

    let broken = write_entry(dir.path(), "broken.json", "{\"id\": ");
    assert_eq!(cyclolie(&["validate", &broken]).status.code(), Some(2));
}

#[test]
fn unknown_entry_is_an_input_error() {
    let o = cyclolie(&["cohomology", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nosuch"));
}

#[test]
fn cohomology_tables() {
    let o = cyclolie(&["cohomology", "W3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("HC        2    3    3    2"), "{out}");
    assert!(out.contains("H         2    7    9    9"), "{out}");

    let o = cyclolie(&["--json", "cohomology", "sl2sl2", "--expected"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let hc: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["hc"].as_u64().unwrap()).collect();
    assert_eq!(hc, [0, 0, 2, 0]);
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["h"] == 0));
}

#[test]
fn abelian_cohomology_is_the_whole_complex() {
    let dir = tempfile::tempdir().unwrap();
    let ab = write_entry(dir.path(), "ab.json", ABELIAN2);
    let o = cyclolie(&["--json", "cohomology", &ab, "--max-degree", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let h: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["h"].as_u64().unwrap()).collect();
    assert_eq!(h, [2, 4, 2]);
    assert_eq!(cyclolie(&["cohomology", &ab, "--max-degree", "5"]).status.code(), Some(2));
}

#[test]
fn deformation_checks() {
    let o = cyclolie(&["deform", "W3", "jacobi", "--points", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("[PASS]").count(), 10);

    let o = cyclolie(&["--json", "deform", "g62_1", "relations", "--seed", "7"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["points"][0]["values"].as_array().unwrap().len(), 3);

    let o = cyclolie(&["deform", "g62_1", "jacobi", "--point", "t1=-1,t2=1"]);
    assert!(stdout(&o).contains("[SKIP]"));

    let o = cyclolie(&["deform", "g62_1", "jacobi", "--point", "t1=1,t2=1,t4=1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("residual"));

    let o = cyclolie(&["deform", "diamond4C", "iso"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Inverse"));
}

#[test]
fn catalog_listing() {
    let o = cyclolie(&["--json", "catalog", "list", "--dim", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["sl2C", "sl2R", "so3R"]);

    let o = cyclolie(&["catalog", "list", "--field", "real", "--dim", "4"]);
    assert!(!stdout(&o).contains("complex"));

    let o = cyclolie(&["catalog", "graph"]);
    assert!(stdout(&o).contains("W4"));
}

#[test]
fn catalog_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::create_dir(dir.path().join("2")).unwrap();
    write_entry(&dir.path().join("2"), "ab2.json", ABELIAN2);
    let o = Command::new(env!("CARGO_BIN_EXE_cyclolie"))
        .args(["catalog", "list"])
        .env("CYCLOLIE_CATALOG", dir.path())
        .output()
        .unwrap();
    assert_eq!(stdout(&o).lines().count(), 1);
    assert!(stdout(&o).starts_with("ab2"));
}

#[test]
fn reproduce_dimension_three() {
    let o = cyclolie(&["--json", "reproduce", "--dim", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = v.as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["status"] == "PASS"));
    assert!(checks.iter().any(|c| c["name"].as_str().unwrap().starts_with("table sl2C")));
}
