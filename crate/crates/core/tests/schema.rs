use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn load(path: &Path) -> Value {
    let text = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    serde_json::from_str(&text).unwrap()
}

fn schema(name: &str) -> jsonschema::Validator {
    jsonschema::validator_for(&load(&repo_root().join("schemas").join(name)))
        .expect("schema compiles")
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = v
        .iter_errors(doc)
        .map(|e| format!("{}: {e}", e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "{errors:?}\n{doc:#}");
}

fn data_files() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.retain(|p| p.extension().is_some_and(|e| e == "json"));
    files.sort();
    files
}

fn slaglab_json(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_slaglab"))
        .arg("--json")
        .args(args)
        .output()
        .unwrap();
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

#[test]
fn example_instances_conform() {
    let v = schema("pbp_instance.schema.json");
    let files = data_files();
    assert!(files.len() >= 4);
    for f in files {
        let doc = load(&f);
        assert_valid(&v, &doc);
        slaglab::obstruction::parse_instance(&doc.to_string()).unwrap();
    }
}

#[test]
fn instance_schema_rejects_what_the_parser_rejects() {
    let v = schema("pbp_instance.schema.json");
    let mut doc = load(&data_files()[0]);
    doc["surprise"] = Value::from(1);
    assert!(!v.is_valid(&doc));
    let mut doc = load(&data_files()[0]);
    doc.as_object_mut().unwrap().remove("maslov_class");
    assert!(!v.is_valid(&doc));
}

#[test]
fn pbp_reports_conform() {
    let v = schema("pbp_report.schema.json");
    for f in data_files() {
        let path = f.to_string_lossy().into_owned();
        assert_valid(&v, &slaglab_json(&["pbp", "decide", &path]));
        assert_valid(&v, &slaglab_json(&["pbp", "decide", &path, "--count"]));
    }
}

#[test]
fn cone_reports_conform() {
    let v = schema("cone_verify_report.schema.json");
    for id in [
        "su(3)",
        "su-so(3)",
        "su-sp(2)",
        "sw(1,2)",
        "clifford(3)",
        "su(2)",
    ] {
        assert_valid(
            &v,
            &slaglab_json(&["cone", "verify", id, "--samples", "20"]),
        );
    }
}
