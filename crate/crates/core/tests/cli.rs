use std::path::PathBuf;
use std::process::{Command, Output};

use apkappa::bordism::{cp_class, BordismClassQ};
use apkappa::constraints::{FeasibilityProblem, ProblemJson, SystemJson};
use apkappa::graded::{parse_polynomial, GradedPolynomial, TensorPolynomial};
use apkappa::linalg::q;
use serde_json::Value;

fn apkappa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apkappa"))
        .args(args)
        .env_remove("APKAPPA_MAX_DEGREE")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_input(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("apkappa-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn ap_basis_golden() {
    let out = apkappa(&["ap-basis", "--d", "6", "--degree", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dim"], 1);
    assert_eq!(v["basis"], serde_json::json!([["ph3"]]));
    let element: GradedPolynomial = serde_json::from_value(v["elements"][0].clone()).unwrap();
    assert_eq!(element, parse_polynomial("ph3", None).unwrap());

    let kernel = apkappa(&["ap-basis", "--d", "6", "--degree", "12", "--method", "kernel"]);
    assert_eq!(json(&kernel)["dim"], 1);
    let np = apkappa(&["np-basis", "--d", "3", "--degree", "8"]);
    assert_eq!(json(&np)["basis"], serde_json::json!([["ph2"]]));
}

#[test]
fn outputs_round_trip_through_the_library() {
    let out = apkappa(&["coproduct", "--x", "ph1 * ph2"]);
    let delta: TensorPolynomial = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(delta.len(), 4);

    let out = apkappa(&["restrict", "--x", "ph2", "--d", "4"]);
    let rho: GradedPolynomial = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rho.to_string(), "p1^2 - 2*e^2");

    let out = apkappa(&["equations", "--d", "8", "--p", "4", "--fibre", "cp4"]);
    assert_eq!(out.status.code(), Some(0));
    let system: SystemJson = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(system.constraints.len(), 3);
    let c = system.constraints.iter().find(|c| c.x == "ph1*ph2").unwrap();
    assert_eq!(c.b_coeffs.len(), 1);
    assert_eq!((c.b_coeffs[0].monomial.as_str(), c.b_coeffs[0].coef.as_str()), ("p1", "-5/1"));
    let fibre = BordismClassQ::try_from(&system.fibre).unwrap();
    assert_eq!(fibre, cp_class(4));
}

#[test]
fn pairing() {
    let out = apkappa(&["pair", "--x", "ph2", "--class", "cp4"]);
    assert_eq!(json(&out)["value"], "5/1");
    let class = serde_json::to_string(&cp_class(2)).unwrap();
    let out = apkappa(&["pair", "--x", "p1", "--class-json", &class]);
    assert_eq!(json(&out)["value"], "3/1");
}

#[test]
fn check_trivial_and_perturbed_data() {
    let f = cp_class(4);
    let b = cp_class(2);
    let problem = FeasibilityProblem::trivial_bundle(&f, &b).unwrap();
    let text = serde_json::to_string(&ProblemJson::from(&problem)).unwrap();
    let path = write_input("trivial.json", &text);
    let out = apkappa(&["check", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["satisfied"], true);

    let mut bumped = problem.clone();
    bumped.total = &problem.total
        + &BordismClassQ::from_fn(12, |m| if m.pairs() == [(1, 3)] { q(1) } else { q(0) });
    let text = serde_json::to_string(&ProblemJson::from(&bumped)).unwrap();
    let path = write_input("bumped.json", &text);
    let out = apkappa(&["check", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["satisfied"], false);
    assert!(!v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn solve_reports_families_and_inconsistency() {
    let path = write_input(
        "solve.json",
        r#"{"d": 8, "p": 4, "fibre": "cp4", "base": "cp2", "kappa": []}"#,
    );
    let out = apkappa(&["solve", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["feasible"], true);
    let unknowns = v["unknowns"].as_array().unwrap();
    assert_eq!(unknowns.len(), 3);
    assert_eq!(v["directions"].as_array().unwrap().len(), 0);

    let path = write_input(
        "inconsistent.json",
        r#"{"d": 8, "p": 4, "fibre": "cp4", "base": "cp2", "total": "zero12", "kappa": []}"#,
    );
    let out = apkappa(&["solve", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["feasible"], false);

    let path = write_input("four.json", r#"{"d": 4, "p": 4, "fibre": "cp2"}"#);
    let out = apkappa(&["solve", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["note"].is_string());
}

#[test]
fn bundle_verification() {
    let out = apkappa(&["verify-bundle", "--m", "1", "--twists", "0,1", "--sweep"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["equal"], true);
    assert_eq!(v["reports"][0]["x"], "ph1");

    let out = apkappa(&["verify-bundle", "--m", "2", "--twists", "0,0,0,0,0", "--x", "ph1*ph2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["middle_term"], "15/1");
    assert_eq!(v["lhs"], "15/1");

    let out = apkappa(&["verify-bundle", "--m", "2", "--twists", "-1,0,1"]);
    assert_eq!(out.status.code(), Some(0));

    let out = apkappa(&["verify-bundle", "--m", "3", "--twists", "0,1", "--x", "ph1^2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(apkappa(&["ap-basis", "--d", "6"]).status.code(), Some(2));
    assert_eq!(apkappa(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(apkappa(&["coproduct", "--x", "ph1 + p1"]).status.code(), Some(2));
    assert_eq!(apkappa(&["verify-bundle"]).status.code(), Some(2));

    let path = write_input("malformed.json", "{\"d\": 8, ");
    let out = apkappa(&["check", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert!(out.stdout.is_empty());
}

#[test]
fn degree_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_apkappa"))
        .args(["ap-basis", "--d", "6", "--degree", "24"])
        .env("APKAPPA_MAX_DEGREE", "20")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("APKAPPA_MAX_DEGREE"));
    assert_eq!(apkappa(&["ap-basis", "--d", "6", "--degree", "36"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["equations", "--d", "6", "--p", "6", "--fibre", "zero6"][..],
        &["coproduct", "--x", "p1^2*p2 - 3*p3", "--system", "ph"][..],
        &["verify-bundle", "--m", "2", "--twists", "0,1,2"][..],
    ] {
        let first = apkappa(args);
        assert_eq!(first.status.code(), Some(0), "{args:?}");
        assert_eq!(first.stdout, apkappa(args).stdout);
    }
}
