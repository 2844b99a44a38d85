#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub struct Example {
    pub args: Vec<String>,
    /// Schema file stem for stdout; `None` for plain-text output.
    pub schema: Option<&'static str>,
}

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_orbicalc")
}

pub fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

pub fn corpus_file(name: &str) -> String {
    repo_root().join("corpus").join(format!("{name}.json")).display().to_string()
}

pub fn run(args: &[String]) -> Output {
    Command::new(bin())
        .args(args)
        .env("ORBICALC_CORPUS", repo_root().join("corpus"))
        .output()
        .expect("run orbicalc")
}

fn ex(schema: Option<&'static str>, args: &[&str]) -> Example {
    Example { args: args.iter().map(|s| s.to_string()).collect(), schema }
}

/// The example suite: one or more invocations of every subcommand.
pub fn examples() -> Vec<Example> {
    let c2 = corpus_file("c2");
    let s3 = corpus_file("s3");
    vec![
        ex(Some("group"), &["group", "s4"]),
        ex(Some("group"), &["group", &corpus_file("q8")]),
        ex(Some("irreps"), &["irreps", "q8"]),
        ex(Some("irreps"), &["irreps", "c5"]),
        ex(None, &["irreps", "d8", "--text"]),
        ex(Some("homs"), &["homs", &c2, &s3]),
        ex(Some("homs"), &["homs", "v4", "d8", "--injective"]),
        ex(Some("bundles"), &["bundles", "c4"]),
        ex(Some("stable-maps"), &["stable-maps", "c2", "trivial", "--variant", "rep"]),
        ex(Some("stable-maps"), &["stable-maps", "c2", "c2", "--variant", "orb", "--cross-check"]),
        ex(Some("stable-maps"), &["stable-maps", "s3", "c3", "--variant", "rep", "--cross-check"]),
        ex(Some("rstar"), &["rstar", "--max-order", "2", "--max-dim", "3", "--homology"]),
        ex(Some("rstar"), &["rstar", "--max-order", "4", "--max-dim", "2", "--census"]),
        ex(Some("rstar"), &["rstar", "--max-order", "3", "--max-dim", "2", "--homology", "--mode", "all"]),
        ex(Some("localize"), &["localize", &data("chain.json"), "--from", "C", "--to", "B", "--universal"]),
        ex(Some("detect"), &["detect", "c2", "--rep", "1"]),
        ex(Some("detect"), &["detect", "c2", "--rep", &data("sign_c2.json")]),
        ex(Some("detect"), &["detect", "c3", "--rep", &data("rotation_c3.json")]),
        ex(Some("detect"), &["detect", "c2", "--rep", &data("half_scaled.json")]),
        ex(Some("detect"), &["detect", "c2", "--rep", &data("sign_c2_float.json")]),
        ex(Some("corpus"), &["corpus"]),
        ex(Some("corpus"), &["corpus", "--verify", "--max-order", "12", "--jobs", "4"]),
    ]
}

pub fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON: {e}"))
}

pub fn schema_validator(stem: &str) -> jsonschema::JSONSchema {
    let path = repo_root().join("schemas/v1").join(format!("{stem}.schema.json"));
    let schema: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).expect("schema file")).expect("schema json");
    jsonschema::JSONSchema::options()
        .with_draft(jsonschema::Draft::Draft7)
        .compile(&schema)
        .unwrap_or_else(|e| panic!("{stem} schema does not compile: {e}"))
}

pub fn assert_valid(stem: &str, value: &serde_json::Value) {
    let v = schema_validator(stem);
    let msgs: Vec<String> = match v.validate(value) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{stem} output fails its schema: {msgs:?}");
}
