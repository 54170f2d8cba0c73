//! Running the binary and validating its JSON against the shipped schemas.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value as Json;

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn fixture(name: &str) -> String {
    manifest_dir().join("tests/fixtures").join(name).to_string_lossy().into_owned()
}

pub fn run<S: AsRef<str>>(args: &[S]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radford"))
        .args(args.iter().map(AsRef::as_ref))
        .output()
        .unwrap()
}

pub fn code(out: &Output) -> i32 {
    out.status.code().unwrap_or(-1)
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

pub fn load_schema(name: &str) -> Json {
    let path = manifest_dir().join("schemas").join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Parses `text` as JSON and validates it against `schema`.
pub fn validate(schema: &str, text: &str) -> Result<Json, String> {
    let instance: Json = serde_json::from_str(text).map_err(|e| format!("{schema}: not JSON: {e}"))?;
    let validator = jsonschema::validator_for(&load_schema(schema)).map_err(|e| e.to_string())?;
    let errors: Vec<String> = validator.iter_errors(&instance).map(|e| e.to_string()).collect();
    if errors.is_empty() {
        Ok(instance)
    } else {
        Err(format!("{schema}: {errors:?}"))
    }
}

fn argv(parts: &[&str]) -> Vec<String> {
    parts.iter().map(|s| s.to_string()).collect()
}

/// Invocations with their required exit status.
pub fn exit_cases() -> Vec<(Vec<String>, i32)> {
    let star = |n: &str, f: &str| argv(&["--n", n, "verify", "star", &fixture(f)]);
    vec![
        (argv(&["--n", "3", "verify", "hopf"]), 0),
        (star("2", "ident.json"), 0),
        (star("3", "diag_z2.json"), 0),
        (star("2", "doubled_x.json"), 1),
        (star("2", "malformed.json"), 2),
        (star("2", "not_involutive.json"), 2),
        (star("3", "ident.json"), 2),
        (argv(&["--n", "2", "verify", "star", "/nonexistent/star.json"]), 2),
        (argv(&["--n", "3", "normalize", "x**g"]), 2),
        (argv(&["--n", "3", "normalize", "x g"]), 2),
        (argv(&["--n", "3", "normalize", "(x + 1"]), 2),
        (argv(&["--n", "3", "bogus"]), 2),
        (argv(&["--n", "3", "grouplike", "g^2"]), 0),
        (argv(&["--n", "3", "equiv", "diag", "--alpha", "w", "--beta", "1"]), 0),
        (argv(&["--n", "2", "equiv", "n2", "--a", &fixture("ident.json"), "--b", &fixture("swapscaled.json")]), 0),
    ]
}

/// JSON invocations with the schema their output must satisfy.
pub fn schema_cases() -> Vec<(&'static str, Vec<String>)> {
    vec![
        ("element", argv(&["--n", "3", "--json", "normalize", "x*g + i*y"])),
        ("element", argv(&["--n", "4", "--json", "antipode", "x*y*g", "--power", "2"])),
        ("element", argv(&["--n", "2", "--json", "star-apply", "--star", &fixture("swapscaled.json"), "x + g"])),
        ("tensor", argv(&["--n", "3", "--json", "delta", "y^2*x"])),
        ("tensor", argv(&["--n", "3", "--json", "delta-closed", "y^2*x"])),
        ("scalar", argv(&["--n", "3", "--json", "counit", "2 + x"])),
        ("order", argv(&["--n", "5", "--json", "antipode-order"])),
        ("report", argv(&["--n", "3", "--json", "verify", "hopf"])),
        ("report", argv(&["--n", "2", "--json", "verify", "star", &fixture("ident.json")])),
        ("report", argv(&["--n", "2", "--json", "verify", "star", &fixture("doubled_x.json")])),
        ("skew", argv(&["--n", "4", "--json", "solve", "skew", "--w", "1"])),
        ("grouplike", argv(&["--n", "4", "--json", "grouplike", "g^3"])),
        ("equivalence", argv(&["--n", "3", "--json", "equiv", "diag", "--alpha", "w", "--beta", "1"])),
        (
            "equivalence",
            argv(&["--n", "2", "--json", "equiv", "n2", "--a", &fixture("ident.json"), "--b", &fixture("diag_i.json")]),
        ),
        ("scan", argv(&["--n", "2", "--json", "scan", "--grid", "0,1,-1"])),
    ]
}
