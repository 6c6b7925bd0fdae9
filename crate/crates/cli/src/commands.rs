use serde_json::{json, Value};

use lhqpf::circuit::{
    ancilla_bound, build_sat_verifier, canonicalize_for_construction, elementary_count, gate_bound,
    poly_exponent, Circuit,
};
use lhqpf::clock::{check_johnson_equations, clock_table_csv, verify_conditions, ClockSchedule};
use lhqpf::cnf::{brute_force_sat, parse_dimacs, validate_kcnf, CnfFormula};
use lhqpf::hamiltonian::{circuit_to_hamiltonian, LocalHamiltonian};
use lhqpf::par::Mode;
use lhqpf::qpf::{approximate_qpf, Backend, QpfConfig};
use lhqpf::reductions::{decide_lh_via_qpf, lh_to_qpf, sat_to_klh_trivial, sat_to_lh, LhInstance};
use lhqpf::spectrum::{
    decide_lh, exact_partition_function, ground_energy, ln_partition_from_spectrum, spectrum,
    Decision, Method, Thresholds,
};
use lhqpf::Error;

use crate::config::Config;
use crate::report::{read, Failure, Outcome, RunReport};
use crate::{BackendArg, Cli, CnfCommand, Command, MethodArg, ReduceTarget, ScheduleArg};

type Res = Result<Outcome, Failure>;

pub fn run(cli: &Cli, cfg: &Config) -> Res {
    let seed = cli.seed;
    match &cli.command {
        Command::Cnf(CnfCommand::Validate { path, k }) => {
            let f = load_cnf(path)?;
            let r = validate_kcnf(&f, *k);
            let report = RunReport::new(
                "cnf validate",
                seed,
                json!({ "path": path, "k": k }),
                serde_json::to_value(&r).map_err(Error::from)?,
            );
            Ok(if r.accepted {
                Outcome::ok(report)
            } else {
                Outcome::rejected(report)
            })
        }
        Command::Cnf(CnfCommand::Solve { path }) => {
            let f = load_cnf(path)?;
            let model = brute_force_sat(&f)?;
            let out = json!({
                "num_vars": f.num_vars(),
                "num_clauses": f.num_clauses(),
                "satisfiable": model.is_some(),
                "model": model.map(|m| m.iter().map(|&b| b as u8).collect::<Vec<_>>()),
            });
            Ok(Outcome::ok(RunReport::new(
                "cnf solve",
                seed,
                json!({ "path": path }),
                out,
            )))
        }
        Command::Verifier { path, emit_circuit } => verifier(path, *emit_circuit, seed),
        Command::Clock {
            schedule,
            a,
            d,
            t,
            verify,
            csv,
        } => clock(*schedule, *a, *d, *t, *verify, *csv, seed),
        Command::Ham { path, d, emit_ham } => ham(path, *d, *emit_ham, cfg, seed),
        Command::Spectrum {
            path,
            method,
            beta,
            e_yes,
            e_no,
        } => spectrum_cmd(path, *method, *beta, e_yes.zip(*e_no), cfg, seed),
        Command::Reduce {
            path,
            to,
            d,
            epsilon,
            emit_ham,
        } => reduce(path, *to, *d, *epsilon, *emit_ham, cfg, seed),
        Command::Qpf {
            path,
            beta,
            c,
            backend,
            confidence,
            compare_exact,
            adversarial,
            record_counts,
            sequential,
        } => {
            let h = load_ham(path)?;
            let mut qc = QpfConfig {
                c: *c,
                backend: match backend {
                    BackendArg::Exact => Backend::Exact,
                    BackendArg::Oracle => Backend::Oracle,
                    BackendArg::Statevector => Backend::Statevector,
                },
                seed,
                confidence: *confidence,
                record_counts: *record_counts,
                mode: if *sequential {
                    Mode::Sequential
                } else {
                    Mode::default()
                },
                ..QpfConfig::default()
            };
            if *adversarial {
                qc = qc.adversarial();
            }
            qpf(path, &h, *beta, &qc, *compare_exact, cfg, seed)
        }
        Command::Pipeline {
            path,
            d,
            epsilon,
            emit_ham,
        } => pipeline(path, *d, *epsilon, *emit_ham, cfg, seed),
    }
}

fn load_cnf(path: &std::path::Path) -> Result<CnfFormula, Failure> {
    Ok(parse_dimacs(&read(path)?)?)
}

fn load_ham(path: &std::path::Path) -> Result<LocalHamiltonian, Failure> {
    Ok(LocalHamiltonian::from_json(&read(path)?)?)
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value, Failure> {
    Ok(serde_json::to_value(v).map_err(Error::from)?)
}

fn ham_value(h: &LocalHamiltonian) -> Result<Value, Failure> {
    Ok(serde_json::from_str(&h.to_json()?).map_err(Error::from)?)
}

fn dense_check(cfg: &Config, width: usize) -> Result<(), Failure> {
    if width > cfg.dense_width() {
        return Err(Failure::Guard(Error::Guard {
            what: "dense width",
            value: width,
            limit: cfg.dense_width(),
        }));
    }
    Ok(())
}

fn decision_exit(report: RunReport, d: Decision) -> Outcome {
    if d == Decision::Indeterminate {
        Outcome::rejected(report)
    } else {
        Outcome::ok(report)
    }
}

fn verifier(path: &std::path::Path, emit: bool, seed: u64) -> Res {
    let f = load_cnf(path)?;
    let v = build_sat_verifier(&f)?;
    let elementary = v.elementary()?;
    let (n, m, k) = (f.num_vars(), f.num_clauses(), f.max_width());
    let mut out = json!({
        "n": n,
        "m": m,
        "k": k,
        "width": v.circuit.width,
        "ancillas": v.ancillas(),
        "ancilla_bound": ancilla_bound(m),
        "macro_gates": v.circuit.len(),
        "elementary_gates": elementary_count(&elementary),
        "c": poly_exponent(n, m),
        "gate_bound": gate_bound(n, m, k),
        "layout": to_value(&v.layout)?,
    });
    if emit {
        out["circuit"] = to_value(&elementary)?;
    }
    Ok(Outcome::ok(RunReport::new(
        "verifier",
        seed,
        json!({ "path": path }),
        out,
    )))
}

fn clock(
    kind: ScheduleArg,
    a: usize,
    d: usize,
    t: usize,
    verify: bool,
    csv: bool,
    seed: u64,
) -> Res {
    let schedule = match kind {
        ScheduleArg::Unary => ClockSchedule::unary(t),
        ScheduleArg::Johnson => ClockSchedule::johnson(a, d)?,
        ScheduleArg::Dual => ClockSchedule::dual(a, d)?,
    };
    let table = clock_table_csv(&schedule);
    let params = json!({ "schedule": schedule.name(), "a": a, "d": d, "t": t, "verify": verify });
    let mut out = json!({
        "name": schedule.name(),
        "width": schedule.width(),
        "t_max": schedule.t_max(),
        "locality": schedule.op_locality(),
        "table_csv": table,
    });
    let mut passed = true;
    if verify {
        let rep = verify_conditions(&schedule)?;
        passed = rep.passed();
        out["conditions"] = to_value(&rep)?;
        if matches!(kind, ScheduleArg::Johnson) {
            let fails = check_johnson_equations(&schedule)?;
            passed &= fails == 0;
            out["johnson_equation_failures"] = json!(fails);
        }
    }
    let report = RunReport::new("clock", seed, params, out);
    let mut outcome = if passed {
        Outcome::ok(report)
    } else {
        Outcome::rejected(report)
    };
    if csv {
        outcome.raw = Some(table);
    }
    Ok(outcome)
}

fn ham(path: &std::path::Path, d: usize, emit: bool, cfg: &Config, seed: u64) -> Res {
    let circuit = Circuit::from_json(&read(path)?)?;
    let canon = canonicalize_for_construction(&circuit, d)?;
    let coeffs = cfg.coefficients(canon.params.t_max).map_err(Failure::Io)?;
    let (h, schedule) = circuit_to_hamiltonian(&canon, &coeffs)?;
    let mut out = json!({
        "schedule": schedule.name(),
        "clock_width": schedule.width(),
        "width": h.width(),
        "locality": h.locality(),
        "terms": h.terms().len(),
        "norm_bound": h.norm_bound(),
        "params": to_value(&canon.params)?,
        "coefficients": to_value(&coeffs)?,
    });
    if emit {
        out["hamiltonian"] = ham_value(&h)?;
    }
    Ok(Outcome::ok(RunReport::new(
        "ham",
        seed,
        json!({ "path": path, "d": d }),
        out,
    )))
}

fn spectrum_cmd(
    path: &std::path::Path,
    method: MethodArg,
    beta: Option<f64>,
    thresholds: Option<(f64, f64)>,
    cfg: &Config,
    seed: u64,
) -> Res {
    let h = load_ham(path)?;
    let method = match method {
        MethodArg::Dense => Method::Dense,
        MethodArg::Lanczos => Method::Lanczos,
        MethodArg::Auto if h.width() <= cfg.dense_width() => Method::Dense,
        MethodArg::Auto => Method::Lanczos,
    };
    if method == Method::Dense {
        dense_check(cfg, h.width())?;
    }
    let params = json!({ "path": path, "method": method, "beta": beta, "thresholds": thresholds });
    let mut rep = ground_energy(&h, method, seed)?;
    rep.eigenvalues = None;
    let mut out = json!({ "width": h.width(), "report": to_value(&rep)? });
    if let Some(b) = beta {
        dense_check(cfg, h.width())?;
        out["z"] = json!(exact_partition_function(&h, b)?);
        out["ln_z"] = json!(ln_partition_from_spectrum(&spectrum(&h)?, b));
    }
    match thresholds {
        Some((y, n)) => {
            let t = Thresholds::new(y, n)?;
            let (decision, _) = decide_lh(&h, &t, method)?;
            out["decision"] = to_value(&decision)?;
            Ok(decision_exit(
                RunReport::new("spectrum", seed, params, out),
                decision,
            ))
        }
        None => Ok(Outcome::ok(RunReport::new("spectrum", seed, params, out))),
    }
}

fn lh_outputs(inst: &LhInstance, emit: bool) -> Result<Value, Failure> {
    let mut out = json!({
        "width": inst.n(),
        "locality": inst.hamiltonian.locality(),
        "declared_k": inst.k,
        "terms": inst.hamiltonian.terms().len(),
        "norm_bound": inst.hamiltonian.norm_bound(),
        "thresholds": to_value(&inst.thresholds)?,
        "provenance": to_value(&inst.provenance)?,
    });
    if emit {
        out["hamiltonian"] = ham_value(&inst.hamiltonian)?;
    }
    Ok(out)
}

fn circuit_instance(
    f: &CnfFormula,
    d: usize,
    epsilon: f64,
    cfg: &Config,
) -> Result<LhInstance, Failure> {
    let coeffs = if cfg.customizes_coefficients() {
        let v = build_sat_verifier(f)?;
        let canon = canonicalize_for_construction(&v.elementary()?, d)?;
        Some(cfg.coefficients(canon.params.t_max).map_err(Failure::Io)?)
    } else {
        None
    };
    Ok(sat_to_lh(f, d, epsilon, coeffs)?)
}

fn reduce(
    path: &std::path::Path,
    to: ReduceTarget,
    d: usize,
    epsilon: f64,
    emit: bool,
    cfg: &Config,
    seed: u64,
) -> Res {
    let f = load_cnf(path)?;
    let params =
        json!({ "path": path, "to": format!("{to:?}").to_lowercase(), "d": d, "epsilon": epsilon });
    match to {
        ReduceTarget::Trivial => {
            let inst = sat_to_klh_trivial(&f)?;
            Ok(Outcome::ok(RunReport::new(
                "reduce",
                seed,
                params,
                lh_outputs(&inst, emit)?,
            )))
        }
        ReduceTarget::Lh => {
            let inst = circuit_instance(&f, d, epsilon, cfg)?;
            Ok(Outcome::ok(RunReport::new(
                "reduce",
                seed,
                params,
                lh_outputs(&inst, emit)?,
            )))
        }
        ReduceTarget::Qpf => {
            let inst = sat_to_klh_trivial(&f)?;
            let q = lh_to_qpf(&inst)?;
            dense_check(cfg, inst.n())?;
            let (decision, z) =
                decide_lh_via_qpf(&q, |h, beta, _| exact_partition_function(h, beta))?;
            let mut out = lh_outputs(&inst, emit)?;
            out["qpf"] = to_value(&q.summary())?;
            out["z"] = json!(z);
            out["decision"] = to_value(&decision)?;
            Ok(decision_exit(
                RunReport::new("reduce", seed, params, out),
                decision,
            ))
        }
    }
}

fn qpf(
    path: &std::path::Path,
    h: &LocalHamiltonian,
    beta: f64,
    qc: &QpfConfig,
    compare: bool,
    cfg: &Config,
    seed: u64,
) -> Res {
    let est = approximate_qpf(h, beta, qc)?;
    let params = json!({
        "path": path,
        "beta": beta,
        "c": qc.c,
        "backend": qc.backend,
        "confidence": qc.confidence,
        "p_leak": qc.p_leak,
        "compare_exact": compare,
    });
    let mut out = json!({ "estimate": to_value(&est)? });
    if compare {
        dense_check(cfg, h.width())?;
        let ln_z = ln_partition_from_spectrum(&spectrum(h)?, beta);
        out["exact_ln_z"] = json!(ln_z);
        out["exact_z"] = json!(ln_z.exp());
        out["relative_error"] = json!((est.ln_z - ln_z).exp_m1());
        out["tolerance"] = json!(1.0 / (h.width() as f64).powi(qc.c as i32));
    }
    Ok(Outcome::ok(RunReport::new("qpf", seed, params, out)))
}

fn pipeline(
    path: &std::path::Path,
    d: usize,
    epsilon: f64,
    emit: bool,
    cfg: &Config,
    seed: u64,
) -> Res {
    let f = load_cnf(path)?;
    let inst = circuit_instance(&f, d, epsilon, cfg)?;
    let (n, m, k) = (f.num_vars(), f.num_clauses(), f.max_width());
    let gates = inst
        .provenance
        .stages
        .iter()
        .find(|s| s.stage == "elementarize")
        .and_then(|s| s.detail["gates"].as_u64());
    let mut out = lh_outputs(&inst, emit)?;
    out["n"] = json!(n);
    out["m"] = json!(m);
    out["k"] = json!(k);
    out["c"] = json!(poly_exponent(n, m));
    out["elementary_gates"] = json!(gates);
    out["gate_bound"] = json!(gate_bound(n, m, k));
    out["total_qubits"] = json!(inst.provenance.total_qubits());
    let params = json!({ "path": path, "d": d, "epsilon": epsilon });
    Ok(Outcome::ok(RunReport::new("pipeline", seed, params, out)))
}
