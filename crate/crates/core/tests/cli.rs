//! Exit-code contract and report shape of the `cubex` binary.

use std::path::PathBuf;
use std::process::Command;

use cubical_exactness::cli::dispatch;
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn cubex(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_cubex")).args(args).output().expect("binary runs");
    let code = out.status.code().expect("exit code");
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, report)
}

#[test]
fn weight_sweep_on_grid_passes() {
    let (code, r) = cubex(&["verify-weights", "--complex", "grid:3x2", "--max-n", "6"]);
    assert_eq!(code, 0);
    assert_eq!(r["schema"], "cubical-exactness/1");
    assert_eq!(r["status"], "pass");
    assert!(r["result"]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    let (alias, _) = cubex(&["verify-thm31", "--complex", "grid:3x2", "--max-n", "2"]);
    assert_eq!(alias, 0);
}

#[test]
fn weight_sweep_with_action_and_ideal_targets() {
    let (code, r) = cubex(&["verify-weights", "--complex", "cube:2", "--max-n", "4", "--action", "builtin:dihedral"]);
    assert_eq!(code, 0, "{r}");
    assert!(r["result"]["checks"].as_array().unwrap().iter().any(|c| c["name"] == "equivariance"));
    let (code, _) = cubex(&["verify-weights", "--complex", "grid:3x3", "--max-n", "3", "--with-ideal"]);
    assert_eq!(code, 0);
}

#[test]
fn triangle_of_threes_is_not_fc() {
    let (code, r) = cubex(&["artin", "fc", "--matrix", &fixture("triangle3.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "fail");
    assert_eq!(r["result"]["witness"], serde_json::json!(["a", "b", "c"]));
    assert_eq!(r["findings"][0]["violation"], true);
}

#[test]
fn artin_report_on_klein_four_is_exact() {
    let (code, r) = cubex(&["artin", "report", "--matrix", &format!("file:{}", fixture("klein4.json"))]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["verdict"], "exact");
    assert_eq!(r["result"]["stabilizer_types"], serde_json::json!(["A1xA1"]));
}

#[test]
fn infinite_entries_parse() {
    let (code, r) = cubex(&["artin", "fc", "--matrix", &format!("file:{}", fixture("infinite.json"))]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["is_fc"], true);
}

#[test]
fn asymmetric_matrix_is_an_input_error() {
    let (code, r) = cubex(&["artin", "fc", "--matrix", &fixture("badmatrix.json")]);
    assert_eq!(code, 2);
    assert_eq!(r["status"], "error");
    assert!(r["findings"][0]["message"].as_str().unwrap().contains("(0,1)"));
}

#[test]
fn broken_complex_reports_the_median_witness() {
    let (code, r) = cubex(&["validate", "--complex", &fixture("broken.json")]);
    assert_eq!(code, 1);
    let f = &r["findings"][0];
    assert_eq!(f["violation"], true);
    assert_eq!(f["witness"]["kind"], "not-median-closed");
    assert_eq!(f["witness"]["triple"], serde_json::json!(["110", "101", "011"]));
}

#[test]
fn valid_complex_validates() {
    let (code, r) = cubex(&["validate", "--complex", "grid:4x4"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["vertices"], 16);
}

#[test]
fn bad_sign_array_length_is_an_input_error() {
    let (code, r) = cubex(&["validate", "--complex", &format!("file:{}", fixture("badlength.json"))]);
    assert_eq!(code, 2);
    assert_eq!(r["findings"][0]["error"], "input");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cubex(&["frobnicate"]).0, 2);
    assert_eq!(cubex(&["validate", "--complex", "grid:2x2", "--bogus"]).0, 2);
    assert_eq!(cubex(&["weights", "--complex", "nosuchfamily:3", "--n", "1", "--source", "a", "--target", "b"]).0, 2);
    assert_eq!(cubex(&["median", "--complex", "grid:2x2", "(0,0)", "(1,1)", "[1,1,1]"]).0, 2);
}

#[test]
fn weights_table_and_mass() {
    let (code, r) =
        cubex(&["weights", "--complex", "grid:3x3", "--n", "2", "--source", "(0,0)", "--target", "(2,1)"]);
    assert_eq!(code, 0);
    let v = &r["result"]["values"];
    assert_eq!(v["(0,1)"], "2");
    assert_eq!(v["(1,1)"], "1");
    assert_eq!(r["result"]["mass"], "6");
    let (_, r) = cubex(&[
        "weights", "--complex", "grid:3x3", "--n", "2", "--source", "(0,0)", "--target", "(2,1)", "--normalized",
    ]);
    assert_eq!(r["result"]["values"]["(0,1)"], "1/3");
}

#[test]
fn weights_with_larger_ambient_dimension() {
    let (code, r) =
        cubex(&["weights", "--complex", "edge", "--n", "2", "--N", "3", "--source", "x", "--target", "y"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["mass"], "10");
}

#[test]
fn median_of_vertices_and_vectors() {
    let (code, r) = cubex(&["median", "--complex", "cube:3", "(1,0,0)", "(0,1,0)", "(0,0,1)"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["vertex"], "(0,0,0)");
    assert_eq!(r["result"]["in_all_intervals"], true);
}

#[test]
fn continuity_on_star_finds_the_discontinuity() {
    let (code, r) = cubex(&["continuity", "--complex", "star:4", "--x", "l1", "--a", "center", "--n", "3", "--z", "center"]);
    assert_eq!(code, 0);
    let cl = &r["result"]["classification"][0]["classification"];
    assert_eq!(cl["verdict"], "discontinuous");
    assert_eq!(cl["witness"]["verified"], true);
    assert_eq!(r["result"]["partition"]["1"], serde_json::json!(["l2", "l3", "l4"]));
}

#[test]
fn continuity_at_grid_ideal_point() {
    let (code, r) = cubex(&[
        "continuity", "--complex", "grid:4x4", "--x", "(0,0)", "--a", "(1,1)", "--n", "4", "--z", "ideal:(+inf,+inf)",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["classification"][0]["point"], "(+inf,+inf)");
}

#[test]
fn property_a_certificate_on_edge() {
    let (code, r) = cubex(&[
        "property-a", "--complex", "edge", "--action", &fixture("edge_swap.json"), "--n", "3", "--epsilon", "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["mu"]["s"], serde_json::json!({"e": "1/4", "s": "3/4"}));
    // a deviation of 1/2 does not beat epsilon 1/2
    let (code, r) = cubex(&[
        "property-a", "--complex", "edge", "--action", "builtin:swap", "--n", "3", "--epsilon", "1/2",
    ]);
    assert_eq!(code, 1);
    assert!(r["findings"].as_array().unwrap().iter().any(|f| f["kind"] == "epsilon-not-reached"));
}

#[test]
fn property_a_on_cube_symmetries() {
    let (code, r) = cubex(&[
        "property-a", "--complex", "cube:3", "--action", "builtin:hyperoctahedral", "--n", "8", "--epsilon", "1",
    ]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["result"]["group_order"], 48);
}

#[test]
fn admissible_on_finite_complex_is_the_vertex_set() {
    let (code, r) = cubex(&["admissible", "--complex", "tree:2,3"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["ideal"], 0);
    assert_eq!(r["result"]["complete"], true);
}

#[test]
fn truncate_lists_ideal_points() {
    let (code, r) = cubex(&["family", "truncate", "--complex", "grid:2x2"]);
    assert_eq!(code, 0);
    // four corners plus a point at each end of every row and column
    assert_eq!(r["result"]["ideal_points"].as_array().unwrap().len(), 12);
    assert_eq!(r["result"]["complex"]["N"], 2);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = Command::new(env!("CARGO_BIN_EXE_cubex"))
        .args(["--out", path.to_str().unwrap(), "validate", "--complex", "edge"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["status"], "pass");
}

#[test]
fn reports_are_deterministic_up_to_timing() {
    for argv in [
        vec!["cubex", "continuity", "--complex", "grid:3x3", "--x", "(0,0)", "--a", "(1,1)", "--n", "3"],
        vec!["cubex", "--jobs", "2", "property-a", "--complex", "cube:2", "--action", "builtin:dihedral", "--n", "4", "--epsilon", "1"],
        vec!["cubex", "verify-weights", "--complex", "star:5", "--max-n", "5"],
    ] {
        let (c1, r1) = dispatch(argv.clone());
        let (c2, r2) = dispatch(argv.clone());
        assert_eq!(c1, c2);
        assert_eq!(
            serde_json::to_string(&r1.deterministic_json()).unwrap(),
            serde_json::to_string(&r2.deterministic_json()).unwrap()
        );
    }
}
