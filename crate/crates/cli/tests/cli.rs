//! End-to-end checks of the command-line surface: exit codes, JSON shapes,
//! round trips, and byte determinism.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_convpart"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, serde_json::Value) {
    let out = run(args);
    let code = out.status.code().unwrap_or(-1);
    let value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad JSON from {args:?}: {e}"));
    (code, value)
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn carries_exit_codes() {
    let (code, v) = run_json(&["carries", &path("ex1.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "carries_proper");

    let (code, v) = run_json(&["carries", &path("polar2.json")]);
    assert_eq!(code, 2);
    assert_eq!(v["verdict"], "carries_nonproper");
    assert_eq!(v["empty_labels"], serde_json::json!([1]));

    let (code, v) = run_json(&["carries", &path("ex1_broken.json")]);
    assert_eq!(code, 3);
    assert_eq!(v["verdict"], "does_not_carry");
    assert!(v["witness"].is_object());
}

#[test]
fn error_exit_code_is_one() {
    let out = run(&["carries", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn faces_output_shape() {
    let (code, v) = run_json(&["faces", &path("ex1.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["faces"].as_object().unwrap().len(), 16);
    assert_eq!(v["minimal_face"], "1234i");
    assert_eq!(v["essential"], true);
    assert_eq!(v["pointed"], false);
    assert_eq!(v["faces"]["34"]["half_linear"], true);
    assert_eq!(v["faces"]["123"]["bounded"], true);
    assert_eq!(v["faces"]["4i"]["at_infinity"], true);
}

#[test]
fn equiv_and_type_hash() {
    let (code, v) = run_json(&["equiv", &path("ex1.json"), &path("ex1_rotated.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["equivalent"], true);

    let (code, v) = run_json(&["equiv", &path("ex1.json"), &path("parl.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["equivalent"], false);

    let (_, ta) = run_json(&["type", &path("ex1.json")]);
    let (_, tb) = run_json(&["type", &path("ex1.json")]);
    assert_eq!(ta, tb);
    assert!(ta["hash"].as_str().unwrap().starts_with("fnv1a64:"));
    let (_, tr) = run_json(&["type", &path("ex1_rotated.json")]);
    // Same certificate, same hash, for an equivalent realization.
    assert_eq!(ta["hash"], tr["hash"]);
}

#[test]
fn distance_output() {
    let (code, v) = run_json(&["distance", &path("ex1.json"), &path("ex1.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["method"], "exact_d2");
    assert_eq!(v["value"].as_f64().unwrap(), 0.0);
    assert_eq!(v["stderr"].as_f64().unwrap(), 0.0);
    assert!(v.get("seed").is_none());
}

#[test]
fn nodes_and_reconstruct_round_trip() {
    let (code, v) = run_json(&["nodes", &path("ex1.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["node_system_dim"], 2);
    let nodes: BTreeMap<String, Vec<String>> =
        serde_json::from_value(v["nodes"].clone()).unwrap();
    assert_eq!(nodes.len(), 6);

    // The identity assignment reconstructs with exit 0.
    let tmp = std::env::temp_dir().join("convpart_identity_ex1.json");
    std::fs::write(&tmp, serde_json::to_string(&nodes).unwrap()).unwrap();
    let (code, v) = run_json(&[
        "reconstruct",
        &path("ex1.json"),
        "--assignment",
        &tmp.to_string_lossy(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["passed"], true);
    assert_eq!(v["comb_equiv"], true);
    assert!(v["regions"]["1"].is_array());

    // The doubled-angle assignment is rejected with exit 2.
    let (code, v) = run_json(&[
        "reconstruct",
        &path("pent.json"),
        "--assignment",
        &path("pent_doubled_assignment.json"),
    ]);
    assert_eq!(code, 2);
    assert_eq!(v["report"]["passed"], false);
    assert_eq!(v["report"]["g_condition"]["passed"], false);
    assert_eq!(v["report"]["cones_containing_g"], 2);
}

#[test]
fn fzcheck_exit_codes() {
    let (code, v) = run_json(&["fzcheck", &path("fz_y3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "tiles");
    assert_eq!(v["cones_containing_g"], 1);

    let (code, v) = run_json(&["fzcheck", &path("fz_pent_doubled.json")]);
    assert_eq!(code, 2);
    assert_eq!(v["verdict"], "not_tiles");
    assert_eq!(v["cones_containing_g"], 2);
}

#[test]
fn enum_d1_output() {
    let (code, v) = run_json(&["enum-d1", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["counts"]["0"], 3);
    assert_eq!(v["counts"]["1"], 6);
    assert_eq!(v["counts"]["2"], 6);
    assert_eq!(v["types"].as_array().unwrap().len(), 15);
}

#[test]
fn constraints_output_shape() {
    let (code, v) = run_json(&["constraints", &path("one_region.json")]);
    assert_eq!(code, 0);
    // Four nodes in R^3.
    assert_eq!(v["variables"].as_array().unwrap().len(), 12);
    let equator_eqs = v["equalities"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|lp| lp["label"].as_str().unwrap().starts_with("equator:"))
        .count();
    assert_eq!(equator_eqs, 3);
}

#[test]
fn byte_determinism() {
    for args in [
        vec!["faces".to_string(), path("ex1.json")],
        vec!["type".to_string(), path("parl.json")],
        vec![
            "render".to_string(),
            path("ex1.json"),
            "--view".to_string(),
            "hemisphere".to_string(),
        ],
        vec![
            "render".to_string(),
            path("y3.json"),
            "--view".to_string(),
            "affine".to_string(),
        ],
    ] {
        let args: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "nondeterministic output for {args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn arrangement_json_round_trip() {
    for name in ["ex1.json", "parl.json", "pent.json", "y3.json", "quad.json"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let file: convpart_cli::json::ArrangementFile = serde_json::from_str(&text).unwrap();
        let core = file.to_core().unwrap();
        let back = convpart_cli::json::ArrangementFile::from_core(&core);
        let again = back.to_core().unwrap();
        assert_eq!(core, again, "{name}");
    }
}

#[test]
fn env_cap_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_convpart"))
        .args(["faces", &path("ex1.json")])
        .env("CONVPART_MAX_HYPERPLANES", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("cap"), "stderr: {err}");
}

#[test]
fn render_rejects_other_dimensions() {
    let tmp = std::env::temp_dir().join("convpart_d1.json");
    std::fs::write(
        &tmp,
        r#"{"d":1,"n":2,"normals":{"1,2":["0","1"]}}"#,
    )
    .unwrap();
    let out = run(&["render", &tmp.to_string_lossy()]);
    assert_eq!(out.status.code(), Some(1));
}
