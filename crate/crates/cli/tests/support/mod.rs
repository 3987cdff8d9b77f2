#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

pub fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn problem(name: &str) -> String {
    root().join("docs/problems").join(name).to_string_lossy().into_owned()
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
}

impl Run {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}):\n{}", self.stdout))
    }
}

pub fn gmf(args: &[&str]) -> Run {
    gmf_with_env(args, &[])
}

pub fn gmf_with_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gmf"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("gmf runs");
    Run { code: out.status.code().expect("exit code"), stdout: String::from_utf8(out.stdout).expect("utf-8") }
}

pub fn schema(name: &str) -> Value {
    let path = root().join("docs/schemas").join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(&path).expect("schema file")).expect("schema JSON")
}

/// Schema violations of `instance`, one message per error.
pub fn violations(schema_name: &str, instance: &Value) -> Vec<String> {
    let validator = jsonschema::validator_for(&schema(schema_name)).expect("valid schema");
    validator.iter_errors(instance).map(|e| format!("{}: {e}", e.instance_path())).collect()
}

/// One invocation of every subcommand on the shipped problem files, with its expected exit code.
pub fn invocations() -> Vec<(&'static str, Vec<String>, i32)> {
    let an = problem("an.json");
    let curve = problem("cubic_curve.json");
    let surface = problem("cubic_surface.json");
    let threefold = problem("cubic_threefold.json");
    let broken = problem("broken.json");
    let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    vec![
        ("validate", v(&["validate", &an]), 0),
        ("validate", v(&["validate", &broken]), 1),
        ("cok", v(&["cok", &curve, "--mf", "X"]), 0),
        ("stabilize", v(&["stabilize", &curve, "--module", "k"]), 0),
        ("hom", v(&["hom", &an, "--source", "K", "--target", "K", "--shift", "0", "--basis"]), 0),
        ("hom-table", v(&["hom-table", &curve, "--source", "X", "--target", "Z"]), 0),
        ("stable-hom", v(&["stable-hom", &curve, "--source", "k", "--target", "line"]), 0),
        ("dsing-hom", v(&["dsing-hom", &curve, "--source", "k", "--target", "k", "--shift", "1"]), 0),
        ("resolve", v(&["resolve", &curve, "--module", "k", "--steps", "3"]), 0),
        ("hilbert", v(&["hilbert", &an, "--module", "quotient"]), 0),
        ("ext", v(&["ext", &curve, "--module", "k", "--lo", "-4", "--hi", "6"]), 0),
        ("truncate", v(&["truncate", &curve, "--module", "line", "--degree", "2"]), 0),
        ("exceptional", v(&["exceptional", &an, "--mf", "K"]), 0),
        ("exceptional", v(&["exceptional", &an, "--mf", "KK"]), 1),
        ("collection", v(&["collection", &curve, "--mfs", "X,Y"]), 1),
        ("collection", v(&["collection", &an, "--dual", "--strong"]), 0),
        ("q-algebra", v(&["q-algebra", &an, "--residue-sequence"]), 0),
        ("gorenstein", v(&["gorenstein", &an]), 0),
        ("trichotomy", v(&["trichotomy", &curve, "--verify"]), 0),
        ("trichotomy", v(&["trichotomy", &threefold]), 0),
        ("fullfaith", v(&["fullfaith", &surface, "--source", "X", "--target", "X"]), 0),
        ("roundtrip", v(&["roundtrip", &curve, "--mf", "Y"]), 0),
    ]
}
