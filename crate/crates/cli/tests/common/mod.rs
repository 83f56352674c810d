#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use pcrank_core::schema::INTERCHANGE_SCHEMA;
use serde_json::{json, Value};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

pub fn pcrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcrank"))
        .args(args)
        .output()
        .expect("pcrank runs")
}

pub fn pcrank_stdin(args: &[&str], input: &str) -> Output {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_pcrank"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("pcrank runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

pub fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

/// Validates `doc` against one named definition of the interchange schema.
pub fn schema_errors(doc: &Value, kind: &str) -> Vec<String> {
    let mut schema: Value = serde_json::from_str(INTERCHANGE_SCHEMA).unwrap();
    schema["anyOf"] = json!([{ "$ref": format!("#/$defs/{kind}") }]);
    let validator = jsonschema::draft202012::options()
        .should_validate_formats(true)
        .build(&schema)
        .expect("schema compiles");
    validator.iter_errors(doc).map(|e| e.to_string()).collect()
}
