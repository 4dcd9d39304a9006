//! End-to-end runs of the `cylflex` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn cylflex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cylflex")).args(args).current_dir(root()).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json", "--no-cache"]);
    let out = cylflex(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn load(path: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(root().join(path)).unwrap()).unwrap()
}

fn report_validator() -> jsonschema::Validator {
    let config = load("docs/config.schema.json");
    jsonschema::options()
        .with_resource("urn:cylflex:config", jsonschema::Resource::from_contents(config).unwrap())
        .build(&load("docs/report.schema.json"))
        .unwrap()
}

fn verdicts(v: &Value) -> [bool; 4] {
    let x = &v["collection"]["verdicts"];
    ["polar", "complete", "transversal", "generically_flexible"].map(|k| x[k].as_bool().unwrap())
}

#[test]
fn cubic_and_quartic_cuspidal_pencils() {
    let v = json(&["check", "--degree", "3", "--construction", "cuspcubic:last4", "--cone", "B(3)"]);
    assert_eq!(verdicts(&v), [false, true, true, false]);
    let v = json(&["check", "--degree", "4", "--construction", "cuspcubic:last4", "--cone", "B(1)"]);
    assert_eq!(verdicts(&v), [true, true, true, true]);
}

#[test]
fn collinear_sextic_ample_cone() {
    let v = json(&["cones", "--config", "docs/examples/sextic-collinear.json", "--cone", "Ample"]);
    let rays = &v["cones"][0]["rays"];
    let want: Value = serde_json::json!([[1, -1, 0, 0], [1, 0, -1, 0], [1, 0, 0, -1], [1, 0, 0, 0]]);
    assert_eq!(rays, &want);
}

#[test]
fn reports_match_the_schema() {
    let validator = report_validator();
    let runs: Vec<Vec<&str>> = vec![
        vec!["surface", "--degree", "5"],
        vec!["curves", "--config", "docs/examples/sextic-infinitely-near.json"],
        vec!["cones", "--degree", "4"],
        vec!["cones", "--degree", "2", "--cone", "[\"E1\", \"L-E1\"]"],
        vec!["check", "--degree", "3", "--construction", "cuspcubic:last4", "--construction", "lines:1", "--cone", "B(2)", "--volume"],
        vec!["cover", "--degree", "5", "--construction", "lines,cuspcubic", "--cone", "C(1)", "--reduce", "--polar-filter"],
    ];
    for args in runs {
        let v = json(&args);
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
    let config_schema = jsonschema::validator_for(&load("docs/config.schema.json")).unwrap();
    for example in ["docs/examples/sextic-collinear.json", "docs/examples/sextic-infinitely-near.json"] {
        assert!(config_schema.is_valid(&load(example)), "{example}");
    }
    assert!(!config_schema.is_valid(&serde_json::json!({"degree": 3, "colinear": []})));
}

#[test]
fn exit_codes() {
    let bad = [
        vec!["surface", "--degree", "9"],
        vec!["cones", "--degree", "3", "--cone", "B(12)"],
        vec!["check", "--degree", "3", "--construction", "lines:9", "--cone", "B(1)"],
        vec!["check", "--degree", "6", "--construction", "cuspcubic:last4", "--cone", "B(1)"],
        vec!["surface", "--config", "no/such/file.json"],
        vec!["surface"],
    ];
    for args in bad {
        let out = cylflex(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error["), "{args:?}");
    }
    let out = cylflex(&["cover", "--degree", "1", "--construction", "lines", "--cone", "B(1)", "--no-cache"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("EnumerationLimit"));
    // clap's own usage errors share the invalid-input code
    assert_eq!(cylflex(&["check", "--degree", "3"]).status.code(), Some(2));
}

#[test]
fn invalid_configs_name_the_rule() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("four.json");
    std::fs::write(&path, r#"{"degree": 4, "collinear_triples": [[1, 2, 3], [1, 2, 4]]}"#).unwrap();
    let out = cylflex(&["surface", "--config", path.to_str().unwrap(), "--no-cache"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("InvalidConfiguration") && err.contains("four points"), "{err}");
}

#[test]
fn pol_rays_round_trip_as_an_explicit_cone() {
    let args = ["check", "--degree", "2", "--construction", "cuspcubic:last4", "--cone"];
    let first = json(&[&args[..], &["B(2)"]].concat());
    let rays = serde_json::to_string(&first["collection"]["pol"]["rays"]).unwrap();
    let again = json(&[&args[..], &[rays.as_str()]].concat());
    assert_eq!(verdicts(&again)[0], true);
    let cone = serde_json::to_string(&first["cone"]["rays"]).unwrap();
    let explicit = json(&[&args[..], &[cone.as_str()]].concat());
    assert_eq!(verdicts(&explicit), verdicts(&first));
    assert_eq!(explicit["collection"], first["collection"]);
}

#[test]
fn generic_construction_files() {
    let v = json(&[
        "check",
        "--config",
        "docs/examples/sextic-infinitely-near.json",
        "--construction",
        "generic:@docs/examples/infinitely-near-pencil-1.json",
        "--construction",
        "generic:@docs/examples/infinitely-near-pencil-2.json",
        "--cone",
        "Ample",
    ]);
    assert_eq!(verdicts(&v), [true, true, true, true]);
    assert_eq!(v["collection"]["forb"]["rays"], serde_json::json!([[0, 1, -1, 0], [0, 0, 0, 1], [1, -1, -1, 0]]));
}

#[test]
fn text_output_reads_as_classes() {
    let out = cylflex(&["check", "--degree", "3", "--construction", "cuspcubic:last4", "--cone", "B(3)", "--no-cache"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("forb: Cone(E1, E2)"), "{text}");
    assert!(text.contains("generically flexible: false"));
}
