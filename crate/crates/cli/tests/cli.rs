use std::process::{Command, Output};

use serde_json::Value;

fn weinstein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weinstein"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn associator_obstruction_example_fails_with_its_value() {
    let out = weinstein(&["groupoid", "associator", "--preset", "z2-star-bz2", "--input", "1,1,1,-1", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json_of(&out);
    assert_eq!(r["pass"], false);
    assert_eq!(r["certificates"]["value"], "(-1,-1)");
    assert_eq!(r["certificates"]["expected_identity"], "(-1,1)");
    assert_eq!(r["certificates"]["is_identity"], "false");
}

#[test]
fn trivial_quadruple_passes() {
    let out = weinstein(&["groupoid", "associator", "--preset", "z2-star-bz2", "--input", "1,1,1,1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bz2_weinstein_check_passes() {
    let out = weinstein(&["groupoid", "weinstein", "--preset", "bz2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["pass"], true);
}

#[test]
fn schema_errors_exit_2_with_a_pointer() {
    let doc = r#"{"algebroid": {"family": "tangent", "m": 2},
        "paths": [{"N": 2, "a": [[0, 0], [1, "x"], [0, 0]], "gamma": [[0, 0], [0, 0], [0, 0]]}]}"#;
    let out = weinstein(&["path", "check", "--input", doc]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("/paths/0/a/1/1"), "{err}");
}

#[test]
fn unknown_fields_are_rejected() {
    let out = weinstein(&["path", "check", "--input", r#"{"algebroid": {"family": "lie_algebra", "colour": 1}}"#]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/algebroid"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(weinstein(&["nonsense"]).status.code(), Some(2));
    assert_eq!(weinstein(&["period"]).status.code(), Some(2));
    assert_eq!(weinstein(&["period", "verdict", "--preset", "no-such"]).status.code(), Some(2));
    assert_eq!(weinstein(&["period", "verdict", "--input", "/no/such/file.json"]).status.code(), Some(2));
}

#[test]
fn floating_u_integrals_are_rejected() {
    let doc = r#"{"spec": {"factors": 1, "lambdas": [["1", "0"]]}, "u0": "0.5", "u1": "0"}"#;
    let out = weinstein(&["period", "member", "--input", doc]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/u0"));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = ["homotopy", "check", "--preset", "su2-gauge", "--seed", "3", "--grid", "60", "--json"];
    let (a, b) = (weinstein(&args), weinstein(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("weinstein-report-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = weinstein(&["period", "verdict", "--preset", "paper-s2xs2", "--json", "--out", p]);
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written, out.stdout);
}

#[test]
fn dense_period_verdict_lists_pell_witnesses() {
    let out = weinstein(&["period", "verdict", "--preset", "paper-s2xs2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["certificates"]["verdict"], "NonIntegrable");
    let w = r["certificates"]["witnesses"].as_array().unwrap();
    assert_eq!(w.len(), 7);
    assert_eq!((w[6]["p"].as_str(), w[6]["q"].as_str()), (Some("577"), Some("408")));
}

#[test]
fn constant_convergence_is_reported_exact() {
    let out = weinstein(&["convergence", "--preset", "constant", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["certificates"]["convergence_order"], "exact");
}

#[test]
fn circle_endpoint_gap_converges_at_fourth_order() {
    let out = weinstein(&["convergence", "--preset", "circle", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let p = json_of(&out)["metrics"]["order"].as_f64().unwrap();
    assert!((3.5..=4.5).contains(&p), "{p}");
}

#[test]
fn shifted_family_is_not_a_homotopy() {
    let out = weinstein(&["homotopy", "check", "--preset", "su2-shift", "--grid", "80"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn corrupted_structure_fails_validation() {
    assert_eq!(weinstein(&["algebroid", "validate", "--preset", "so3"]).status.code(), Some(0));
    assert_eq!(weinstein(&["algebroid", "validate", "--preset", "corrupted-so3"]).status.code(), Some(1));
}

#[test]
fn single_criterion_runs_by_name() {
    let out = weinstein(&["paper-suite", "--preset", "bz2-axioms", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["command"], "bz2-axioms");
}
