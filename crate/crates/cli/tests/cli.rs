use std::path::PathBuf;
use std::process::{Command, Output};

use lhqpf::hamiltonian::{LocalHamiltonian, LocalTerm};
use lhqpf::linalg::ket_bra;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_lhqpf"));
    c.env_remove("LHQPF_SEED");
    c
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn run(args: &[&str]) -> (i32, Value, Output) {
    let out = bin().args(args).output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v, out)
}

const TINY: &str = "c tiny\np cnf 3 2\n1 -2 3 0\n-1 2 0\n";

#[test]
fn cnf_validate_accepts_3cnf() {
    let p = tmp("valid.cnf", TINY);
    let (code, v, _) = run(&["cnf", "validate", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["outputs"]["num_vars"], 3);
    assert_eq!(v["outputs"]["num_clauses"], 2);
    assert_eq!(v["outputs"]["max_width"], 3);
}

#[test]
fn cnf_validate_names_wide_clause() {
    let p = tmp("wide.cnf", "p cnf 4 2\n1 2 0\n1 2 3 4 0\n");
    let (code, v, _) = run(&["cnf", "validate", p.to_str().unwrap(), "--k", "3"]);
    assert_eq!(code, 1);
    assert_eq!(v["outputs"]["offending"][0]["clause"], 2);
}

#[test]
fn missing_file_is_io_error() {
    let (code, _, out) = run(&["cnf", "validate", "/nonexistent/x.cnf"]);
    assert_eq!(code, 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("reading"));
}

#[test]
fn parse_error_is_domain_rejection() {
    let p = tmp("bad.cnf", "p cnf 2 1\n1 5 0\n");
    let (code, _, _) = run(&["cnf", "validate", p.to_str().unwrap()]);
    assert_eq!(code, 1);
}

#[test]
fn pipeline_locality_follows_d() {
    let p = tmp("pipe.cnf", TINY);
    let (code, v, _) = run(&["pipeline", p.to_str().unwrap(), "--d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["locality"], 3);
    let gates = v["outputs"]["elementary_gates"].as_f64().unwrap();
    assert!(gates <= v["outputs"]["gate_bound"].as_f64().unwrap());
    let (code, v, _) = run(&["pipeline", p.to_str().unwrap(), "--d", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["locality"], 2);
    assert!(v["outputs"]["provenance"]["schedule"]
        .as_str()
        .unwrap()
        .starts_with("unary"));
}

#[test]
fn pipeline_rejects_bad_epsilon_with_stage_free_error() {
    let p = tmp("eps.cnf", TINY);
    let (code, _, out) = run(&["pipeline", p.to_str().unwrap(), "--epsilon", "0.3"]);
    assert_eq!(code, 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("ε"));
}

#[test]
fn qpf_zero_hamiltonian_matches_2_to_n() {
    let h = LocalHamiltonian::new(4, vec![]).unwrap();
    let p = tmp("zero.json", &h.to_json().unwrap());
    let (code, v, _) = run(&["qpf", p.to_str().unwrap(), "--beta", "1", "--compare-exact"]);
    assert_eq!(code, 0);
    assert!((v["outputs"]["exact_z"].as_f64().unwrap() - 16.0).abs() < 1e-9);
    assert!(v["outputs"]["relative_error"].as_f64().unwrap().abs() <= 0.25);
}

#[test]
fn qpf_reports_are_reproducible() {
    let terms = (0..4)
        .map(|q| LocalTerm::new(vec![q], ket_bra(1, 1, 2), 0.5 + q as f64 / 4.0))
        .collect();
    let h = LocalHamiltonian::new(4, terms).unwrap();
    let p = tmp("ones.json", &h.to_json().unwrap());
    let args = [
        "qpf",
        p.to_str().unwrap(),
        "--beta",
        "2",
        "--seed",
        "11",
        "--record-counts",
    ];
    let a = bin().args(args).output().unwrap();
    let b = bin().args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = bin().args(args).arg("--sequential").output().unwrap();
    let strip = |o: &[u8]| {
        let mut v: Value = serde_json::from_slice(o).unwrap();
        v["parameters"] = Value::Null;
        v
    };
    assert_eq!(strip(&a.stdout), strip(&c.stdout));
}

#[test]
fn seed_comes_from_environment() {
    let h = LocalHamiltonian::new(2, vec![]).unwrap();
    let p = tmp("zero2.json", &h.to_json().unwrap());
    let out = bin()
        .env("LHQPF_SEED", "42")
        .args(["qpf", p.to_str().unwrap(), "--beta", "1"])
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 42);
}

#[test]
fn statevector_guard_names_limit() {
    let h = LocalHamiltonian::new(8, vec![]).unwrap();
    let p = tmp("wide.json", &h.to_json().unwrap());
    let (code, _, out) = run(&[
        "qpf",
        p.to_str().unwrap(),
        "--beta",
        "1",
        "--backend",
        "statevector",
    ]);
    assert_eq!(code, 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit of 6"));
}

#[test]
fn clock_csv_is_dual_table() {
    let out = bin().args(["clock", "--csv"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 13);
    assert_eq!(lines[5], "4,2,3,010,111");
}

#[test]
fn clock_verify_passes_for_unary() {
    let (code, v, _) = run(&["clock", "--schedule", "unary", "--t", "6", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["outputs"]["conditions"]["violations"],
        Value::Array(vec![])
    );
}

#[test]
fn reduce_trivial_then_spectrum_decides() {
    let cnf = tmp("unsat.cnf", "p cnf 3 2\n1 0\n-1 0\n");
    let out = tmp("unsat_report.json", "");
    let (code, _, _) = run(&[
        "--out",
        out.to_str().unwrap(),
        "reduce",
        cnf.to_str().unwrap(),
        "--emit-ham",
    ]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let ham = tmp(
        "unsat_ham.json",
        &report["outputs"]["hamiltonian"].to_string(),
    );
    let (code, v, _) = run(&[
        "spectrum",
        ham.to_str().unwrap(),
        "--e-yes",
        "0.333",
        "--e-no",
        "0.667",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["decision"], "NO");
    assert_eq!(v["outputs"]["report"]["lambda"], 1.0);
    let (code, v, _) = run(&[
        "spectrum",
        ham.to_str().unwrap(),
        "--e-yes",
        "0.9",
        "--e-no",
        "1.1",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["outputs"]["decision"], "INDETERMINATE");
}

#[test]
fn reduce_to_qpf_agrees_with_sat() {
    let p = tmp("sat.cnf", TINY);
    let (code, v, _) = run(&["reduce", p.to_str().unwrap(), "--to", "qpf"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["decision"], "YES");
}

#[test]
fn config_can_lower_dense_guard() {
    let cfg = tmp("cfg.toml", "[guards]\ndense_width = 2\n");
    let h = LocalHamiltonian::new(4, vec![]).unwrap();
    let p = tmp("zero4.json", &h.to_json().unwrap());
    let (code, _, _) = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "spectrum",
        p.to_str().unwrap(),
        "--method",
        "dense",
    ]);
    assert_eq!(code, 2);
    let bad = tmp("cfg_bad.toml", "[guards]\ndense_width = 30\n");
    let (code, _, _) = run(&[
        "--config",
        bad.to_str().unwrap(),
        "spectrum",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
}

#[test]
fn config_coefficients_reach_the_hamiltonian() {
    let cfg = tmp(
        "coef.toml",
        "[coefficients]\nprofile = \"unscaled\"\nalpha_b = 3.5\n",
    );
    let p = tmp("coef.cnf", TINY);
    let (code, v, _) = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "pipeline",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["provenance"]["coefficients"]["alpha_b"], 3.5);
}

#[test]
fn verifier_report_respects_bounds() {
    let p = tmp("ver.cnf", "p cnf 4 4\n1 -2 3 0\n-1 2 4 0\n2 3 -4 0\n-3 0\n");
    let (code, v, _) = run(&["verifier", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let o = &v["outputs"];
    assert!(o["ancillas"].as_u64() <= o["ancilla_bound"].as_u64());
    assert!(o["elementary_gates"].as_f64() <= o["gate_bound"].as_f64());
}
