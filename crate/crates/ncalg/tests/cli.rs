//! End-to-end checks of the command-line binary: JSON shape, exit codes,
//! and cache behavior, driven through std::process.

use serde_json::Value;
use std::process::{Command, Output};

fn ncalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn centralizer_run_reports_recognition_and_exits_zero() {
    let out = ncalg(&["centralizer", "-f", "x^2", "-d", "4"]);
    assert_eq!(exit_code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["f"], "z0^2");
    assert_eq!(v["field"], "p:2147483647");
    assert_eq!(v["D"], 4);
    assert_eq!(v["h"], "z0");
    assert_eq!(v["recognized"], true);
    assert_eq!(v["boundary_degree"], 4);
    assert_eq!(v["basis"][0], serde_json::json!([0, ["1"]]));
    assert_eq!(v["basis"][1], serde_json::json!([1, ["z0"]]));
    // every basis member carries a certificate with ascending coefficients
    assert_eq!(v["certificates"].as_array().unwrap().len(), 5);
    assert_eq!(v["certificates"][1]["q"], serde_json::json!([0, 1]));
}

#[test]
fn auto_degree_settles_once_h_stops_moving() {
    let out = ncalg(&["centralizer", "-f", "x*y*x", "--auto-degree"]);
    assert_eq!(exit_code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["h"], "z0*z1*z0");
    assert_eq!(v["D"], 5);
    assert_eq!(v["boundary_degree"], 3);
}

#[test]
fn rational_field_serializes_coefficients_as_strings() {
    let out = ncalg(&["centralizer", "-f", "x*y", "-d", "4", "--field", "q"]);
    assert_eq!(exit_code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["field"], "q");
    assert_eq!(v["certificates"][0]["q"], serde_json::json!(["1"]));
}

#[test]
fn cache_replays_byte_identical_output() {
    let dir = std::env::temp_dir().join(format!("ncalg-cli-cache-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let args = [
        "centralizer",
        "-f",
        "x^2",
        "-d",
        "5",
        "--cache-dir",
        dir.to_str().unwrap(),
    ];
    let first = ncalg(&args);
    let entries = std::fs::read_dir(&dir).unwrap().count();
    let second = ncalg(&args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(exit_code(&second), 0);
    assert_eq!(entries, 1, "one cache file per (f, field, D)");
    assert_eq!(first.stdout, second.stdout);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn pitest_reports_both_verdicts_with_exit_zero() {
    let out = ncalg(&["pitest", "-f", "S4", "-n", "2", "--samples", "25", "--seed", "7"]);
    assert_eq!(exit_code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["verdict"], "Identity");
    assert_eq!(v["confidence_bound"]["den"], 2147483647u32);
    assert_eq!(v["confidence_bound"]["pow"], 25);
    assert!(v.get("witness").is_none());

    let out = ncalg(&["pitest", "-f", "x*y - y*x", "-n", "2", "--samples", "25", "--seed", "1"]);
    assert_eq!(exit_code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["verdict"], "NonIdentity");
    assert_eq!(v["confidence_bound"], Value::Null);
    let witness = v["witness"].as_array().unwrap();
    assert_eq!(witness.len(), 2);
    assert_eq!(witness[0].as_array().unwrap().len(), 4, "2x2 row-major");
}

#[test]
fn charpoly_of_the_generic_two_by_two() {
    let out = ncalg(&["charpoly", "-n", "2"]);
    assert_eq!(exit_code(&out), 0);
    let v = json_of(&out);
    assert_eq!(
        v["coeffs"],
        serde_json::json!(["x1_11*x1_22 - x1_12*x1_21", "-x1_11 - x1_22", "1"])
    );
}

#[test]
fn minpoly_divides_charpoly() {
    let out = ncalg(&["minpoly", "-n", "4", "--seed", "11"]);
    assert_eq!(exit_code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["divides"], true);
    assert_eq!(v["charpoly"].as_array().unwrap().len(), 5);
}

#[test]
fn wordcmp_matches_the_documented_example() {
    let out = ncalg(&["wordcmp", "ab", "aab"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(json_of(&out)["cmp"], "GT");

    // reversing the letter order reverses the comparison here
    let out = ncalg(&["wordcmp", "ab", "aab", "--order", "bac"]);
    assert_eq!(json_of(&out)["cmp"], "LT");
}

#[test]
fn bergman_projects_onto_the_maximal_class() {
    let out = ncalg(&["bergman", "x^2 + x"]);
    assert_eq!(exit_code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["z"], "(a)^inf");
    assert_eq!(v["images"], serde_json::json!(["v^2 + v"]));
}

#[test]
fn ncroot_absent_root_is_an_answer_not_an_error() {
    let out = ncalg(&["ncroot", "-f", "x^2 + y^2", "-k", "2"]);
    assert_eq!(exit_code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["root"], Value::Null);
    assert_eq!(v["verified"], false);

    let out = ncalg(&["ncroot", "-f", "(x + y)^3", "-k", "3"]);
    assert_eq!(exit_code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["root"], "z1 + z0");
    assert_eq!(v["verified"], true);
}

#[test]
fn uttrace_of_a_commutator_is_traceless() {
    let out = ncalg(&["uttrace", "-f", "x*y - y*x", "-n", "3", "--seed", "2"]);
    assert_eq!(exit_code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["trace"], 0);
    assert_eq!(v["matrix"].as_array().unwrap().len(), 9);
}

#[test]
fn failures_exit_two_with_an_error_document() {
    // usage error from the argument parser
    let out = ncalg(&["centralizer"]);
    assert_eq!(exit_code(&out), 2);

    for args in [
        vec!["centralizer", "-f", "x", "-d", "3", "--field", "p:6"],
        vec!["centralizer", "-f", "x*w", "-d", "3"],
        vec!["centralizer", "-f", "3/2", "-d", "3", "--field", "q"],
        vec!["centralizer", "-f", "x^2", "-d", "4", "--field", "p:3"],
        vec!["ncroot", "-f", "x^2", "-k", "1"],
        vec!["wordcmp", "ab", "a1b"],
        vec!["spectral", "-f", "x", "-n", "4", "--trials", "10"],
    ] {
        let out = ncalg(&args);
        assert_eq!(exit_code(&out), 2, "args: {args:?}");
        let v = json_of(&out);
        assert!(v["error"].is_string(), "args: {args:?}");
    }
}
