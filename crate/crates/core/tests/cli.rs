//! The `torsion-lab` binary against the problem corpus in `tests/data`.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

struct Run {
    code: i32,
    stdout: String,
    json: Option<Value>,
}

fn run(args: &[&str], seed_env: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_torsion-lab"));
    cmd.args(args).env_remove("TORSION_LAB_SEED");
    if let Some(s) = seed_env {
        cmd.env("TORSION_LAB_SEED", s);
    }
    let out = cmd.output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).expect("utf-8 output");
    Run {
        code: out.status.code().expect("exit code"),
        json: serde_json::from_str(&stdout).ok(),
        stdout,
    }
}

fn problem(sub: &str, file: &str, extra: &[&str]) -> Run {
    let path = data(file);
    let mut args = vec![sub, "--input", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args, None)
}

fn complex(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn koszul_of_zero_pair() {
    let r = problem("koszul", "koszul_zero.json", &[]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v = r.json.unwrap();
    assert_eq!(v["status"], "ok");
    assert_eq!(v["value"]["dims"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["value"]["index"], 0);
}

#[test]
fn koszul_of_complementary_projections_is_acyclic() {
    let v = problem("koszul", "koszul_diag.json", &[]).json.unwrap();
    assert_eq!(v["value"]["dims"], serde_json::json!([0, 0, 0]));
}

#[test]
fn ragged_matrix_reports_its_path() {
    let r = problem("koszul", "koszul_ragged.json", &[]);
    assert_eq!(r.code, 2);
    let v = r.json.unwrap();
    assert_eq!(v["status"], "error");
    assert_eq!(v["diagnostics"][0]["path"], "payload.matrices[1][1]");
}

#[test]
fn joint_torsion_of_identities_is_one() {
    let v = problem("joint-torsion", "jt_identity.json", &[]).json.unwrap();
    assert_eq!(complex(&v["value"]), (1.0, 0.0));
}

#[test]
fn joint_torsion_of_truncated_shift() {
    for file in ["jt_shift_invertible.json", "jt_shift_nilpotent.json"] {
        let r = problem("joint-torsion", file, &[]);
        assert_eq!(r.code, 0, "{file}: {}", r.stdout);
        let (re, im) = complex(&r.json.unwrap()["value"]);
        assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-12, "{file}: {re} {im}");
    }
}

#[test]
fn non_commuting_maps_name_the_defect() {
    let r = problem("joint-torsion", "jt_noncommuting.json", &[]);
    assert_eq!(r.code, 2);
    let v = r.json.unwrap();
    assert_eq!(v["diagnostics"][0]["data"]["defect"], 1.0);
}

#[test]
fn koszul_model_cross_check_reports_gaps() {
    let v = problem("joint-torsion", "jt_koszul.json", &["--cross-check"]).json.unwrap();
    let gap = v["details"]["cross_check"]["relative_gap"].as_f64().unwrap();
    assert!(gap < 1e-9, "{v}");
}

#[test]
fn cusp_symbol_is_one() {
    let r = problem("tame-symbol", "cusp.json", &["--trace"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v = r.json.unwrap();
    let (re, im) = complex(&v["value"]);
    assert!((re - 1.0).abs() < 1e-6 && im.abs() < 1e-6);
    assert!(v["details"]["trace"].as_array().map(|t| !t.is_empty()).unwrap_or(false), "{v}");
}

#[test]
fn carey_pincus_of_z_and_z() {
    let v = problem("carey-pincus", "cp_zz.json", &[]).json.unwrap();
    let (re, im) = complex(&v["value"]);
    assert!((re + 1.0).abs() < 1e-12 && im.abs() < 1e-12);
}

#[test]
fn noether_of_z_cubed() {
    let v = problem("noether", "noether_z3.json", &[]).json.unwrap();
    assert_eq!(v["value"], -3);
}

#[test]
fn axioms_pass_at_tolerance() {
    let r = problem("axioms", "axioms.json", &[]);
    assert_eq!(r.code, 0);
    let v = r.json.unwrap();
    assert_eq!(v["status"], "ok");
    assert!(v["details"]["max_deviation"].as_f64().unwrap() <= 1e-6);
}

#[test]
fn unknown_top_level_key_is_rejected() {
    let r = problem("noether", "unknown_key.json", &[]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json.unwrap()["diagnostics"][0]["path"], "polcy");
}

#[test]
fn subcommand_must_match_kind() {
    let r = problem("koszul", "wrong_kind.json", &[]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json.unwrap()["diagnostics"][0]["path"], "kind");
}

#[test]
fn invalid_policy_override_is_a_validation_error() {
    let r = problem("koszul", "koszul_zero.json", &["--policy-rel", "-1"]);
    assert_eq!(r.code, 2, "{}", r.stdout);
}

#[test]
fn repeated_runs_are_identical_modulo_timing() {
    for (sub, file) in [("tame-symbol", "cusp.json"), ("axioms", "axioms.json"), ("joint-torsion", "jt_koszul.json")] {
        let a = problem(sub, file, &["--cross-check", "--seed", "5"]).json.unwrap();
        let b = problem(sub, file, &["--cross-check", "--seed", "5"]).json.unwrap();
        assert_eq!(without_timing(a), without_timing(b), "{file}");
    }
}

#[test]
fn seed_flag_beats_environment() {
    let path = data("cusp.json");
    let p = path.to_str().unwrap();
    let by_flag = run(&["tame-symbol", "--input", p, "--seed", "1"], Some("2")).json.unwrap();
    let by_env = run(&["tame-symbol", "--input", p], Some("1")).json.unwrap();
    let other = run(&["tame-symbol", "--input", p], Some("2")).json.unwrap();
    assert_eq!(by_flag["details"]["theta"], by_env["details"]["theta"]);
    assert_ne!(by_flag["details"]["theta"], other["details"]["theta"]);
}

#[test]
fn human_format_shows_polar_form() {
    let r = problem("carey-pincus", "cp_zz.json", &["--format", "human"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("|z| = 1.0"), "{}", r.stdout);
    assert!(r.stdout.contains("arg = 3.14159"), "{}", r.stdout);
}

#[test]
fn verify_signs_passes() {
    let r = run(&["verify", "--suite", "signs", "--seed", "42"], None);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.json.unwrap()["status"], "ok");
}

#[test]
fn verify_axioms_and_agreement_pass() {
    for suite in ["axioms", "agreement"] {
        let r = run(&["verify", "--suite", suite], None);
        assert_eq!(r.code, 0, "{suite}: {}", r.stdout);
    }
}

#[test]
fn bad_arguments_produce_an_error_envelope() {
    let r = run(&["verify", "--suite", "everything"], None);
    assert_eq!(r.code, 2);
    assert_eq!(r.json.unwrap()["status"], "error");
}

#[test]
fn every_output_is_json_with_a_contract_exit_code() {
    for entry in std::fs::read_dir(data("")).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let kind = serde_json::from_str::<Value>(&text).unwrap()["kind"].as_str().unwrap().to_string();
        let r = run(&[&kind, "--input", path.to_str().unwrap()], None);
        assert!(r.json.is_some(), "{}: {}", path.display(), r.stdout);
        assert!((0..=4).contains(&r.code), "{}", path.display());
    }
}
