//! SAT → local Hamiltonian (trivial diagonal and circuit-based) and
//! local Hamiltonian → quantum partition function.

use serde::{Deserialize, Serialize};

use crate::circuit::{build_sat_verifier, canonicalize_for_construction};
use crate::cnf::{validate_kcnf, CnfFormula};
use crate::error::{Error, Result};
use crate::hamiltonian::{
    circuit_to_hamiltonian, CoefficientSet, LocalHamiltonian, LocalTerm, TermKind,
};
use crate::linalg::{self, CMat};
use crate::spectrum::{Decision, Thresholds};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub stage: String,
    pub detail: serde_json::Value,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub source: String,
    pub stages: Vec<StageRecord>,
    pub input_qubits: usize,
    pub ancilla_qubits: usize,
    pub clock_qubits: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schedule: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<CoefficientSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
}

impl Provenance {
    fn record(&mut self, stage: &str, detail: serde_json::Value) {
        self.stages.push(StageRecord {
            stage: stage.into(),
            detail,
        });
    }

    /// input + ancilla + clock.
    pub fn total_qubits(&self) -> usize {
        self.input_qubits + self.ancilla_qubits + self.clock_qubits
    }
}

#[derive(Clone, Debug)]
pub struct LhInstance {
    pub hamiltonian: LocalHamiltonian,
    pub thresholds: Thresholds,
    /// Declared locality.
    pub k: usize,
    pub provenance: Provenance,
}

impl LhInstance {
    pub fn n(&self) -> usize {
        self.hamiltonian.width()
    }
}

/// One penalty per clause: |y_i⟩⟨y_i| on the clause's variables, where y_i is
/// its unique falsifying assignment. Thresholds (1/n, 1 − 1/n).
pub fn sat_to_klh_trivial(formula: &CnfFormula) -> Result<LhInstance> {
    let n = formula.num_vars();
    let k = formula.max_width();
    let report = validate_kcnf(formula, k);
    if !report.accepted {
        return Err(Error::InvalidFormula(format!("{:?}", report.offending)));
    }
    if n < 3 {
        return Err(Error::arg(format!(
            "thresholds (1/n, 1-1/n) need n >= 3, got n = {n}"
        )));
    }
    let terms = formula
        .clauses()
        .iter()
        .map(|clause| {
            let mut lits = clause.clone();
            lits.sort_by_key(|l| l.var);
            // A literal is false when its variable equals `negated`.
            let y = lits
                .iter()
                .fold(0, |acc, l| (acc << 1) | l.negated as usize);
            let dim = 1 << lits.len();
            LocalTerm::new(
                lits.iter().map(|l| l.var - 1).collect(),
                linalg::ket_bra(y, y, dim),
                1.0,
            )
            .with_kind(TermKind::Penalty)
        })
        .collect();
    let hamiltonian = LocalHamiltonian::new(n, terms)?;
    let nf = n as f64;
    let mut provenance = Provenance {
        source: "cnf".into(),
        input_qubits: n,
        ..Default::default()
    };
    provenance.record(
        "clause_penalties",
        serde_json::json!({ "clauses": formula.num_clauses(), "k": k }),
    );
    Ok(LhInstance {
        hamiltonian,
        thresholds: Thresholds::new(1.0 / nf, 1.0 - 1.0 / nf)?,
        k,
        provenance,
    })
}

/// Verifier circuit → canonical form → (d+1)-local Hamiltonian with a
/// d-dimensional clock. Thresholds (ε, ½ − ε).
pub fn sat_to_lh(
    formula: &CnfFormula,
    d: usize,
    epsilon: f64,
    coeffs: Option<CoefficientSet>,
) -> Result<LhInstance> {
    if !(epsilon > 0.0 && epsilon < 0.25) {
        return Err(Error::arg(format!("ε must lie in (0, 1/4), got {epsilon}")));
    }
    let mut provenance = Provenance {
        source: "cnf".into(),
        epsilon: Some(epsilon),
        ..Default::default()
    };
    let verifier = build_sat_verifier(formula).map_err(|e| e.in_stage("build_sat_verifier"))?;
    provenance.record(
        "build_sat_verifier",
        serde_json::json!({
            "width": verifier.circuit.width,
            "ancillas": verifier.ancillas(),
            "gates": verifier.circuit.len(),
        }),
    );
    let elementary = verifier
        .elementary()
        .map_err(|e| e.in_stage("elementarize"))?;
    provenance.record(
        "elementarize",
        serde_json::json!({ "gates": elementary.len() }),
    );
    let canonical =
        canonicalize_for_construction(&elementary, d).map_err(|e| e.in_stage("canonicalize"))?;
    let p = &canonical.params;
    provenance.record(
        "canonicalize",
        serde_json::json!({
            "d": p.d,
            "a": p.a,
            "t_max": p.t_max,
            "two_qubit_gates": p.two_qubit_slots.len(),
            "dummy_slots": p.dummy_slots.len(),
        }),
    );
    let coeffs = coeffs.unwrap_or_else(|| CoefficientSet::for_t(p.t_max));
    let (hamiltonian, schedule) = circuit_to_hamiltonian(&canonical, &coeffs)
        .map_err(|e| e.in_stage("circuit_to_hamiltonian"))?;
    provenance.record(
        "circuit_to_hamiltonian",
        serde_json::json!({
            "width": hamiltonian.width(),
            "terms": hamiltonian.terms().len(),
            "locality": hamiltonian.locality(),
            "norm_bound": hamiltonian.norm_bound(),
        }),
    );
    provenance.input_qubits = formula.num_vars();
    provenance.ancilla_qubits = elementary.ancilla_size;
    provenance.clock_qubits = schedule.width();
    provenance.schedule = Some(schedule.name());
    provenance.coefficients = Some(coeffs);
    Ok(LhInstance {
        k: d + 1,
        hamiltonian,
        thresholds: Thresholds::new(epsilon, 0.5 - epsilon)?,
        provenance,
    })
}

/// The d = 2 pipeline, giving a 3-local Hamiltonian.
pub fn sat_to_3lh(
    formula: &CnfFormula,
    epsilon: f64,
    coeffs: Option<CoefficientSet>,
) -> Result<LhInstance> {
    sat_to_lh(formula, 2, epsilon, coeffs)
}

#[derive(Clone, Debug)]
pub struct QpfInstance {
    pub hamiltonian: LocalHamiltonian,
    pub n: usize,
    pub thresholds: Thresholds,
    /// n / (E_no − E_yes).
    pub beta0: f64,
    /// Solves (1 − δ)/(1 + δ) = e^{−0.3n}.
    pub delta0: f64,
    pub beta: f64,
    pub delta: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QpfSummary {
    pub n: usize,
    pub beta0: f64,
    pub delta0: f64,
    pub beta: f64,
    pub delta: f64,
    pub z_yes: f64,
    pub z_no: f64,
    pub ln_z_yes: f64,
    pub ln_z_no: f64,
}

pub fn delta0(n: usize) -> f64 {
    let e = (-0.3 * n as f64).exp();
    (1.0 - e) / (1.0 + e)
}

impl QpfInstance {
    /// ln((1 − δ)e^{−βE_yes}).
    pub fn ln_z_yes(&self) -> f64 {
        (1.0 - self.delta).ln() - self.beta * self.thresholds.e_yes
    }

    /// ln((1 + δ)e^{−βE_no + 0.7n}).
    pub fn ln_z_no(&self) -> f64 {
        (1.0 + self.delta).ln() - self.beta * self.thresholds.e_no + 0.7 * self.n as f64
    }

    pub fn z_yes(&self) -> f64 {
        self.ln_z_yes().exp()
    }

    pub fn z_no(&self) -> f64 {
        self.ln_z_no().exp()
    }

    pub fn summary(&self) -> QpfSummary {
        QpfSummary {
            n: self.n,
            beta0: self.beta0,
            delta0: self.delta0,
            beta: self.beta,
            delta: self.delta,
            z_yes: self.z_yes(),
            z_no: self.z_no(),
            ln_z_yes: self.ln_z_yes(),
            ln_z_no: self.ln_z_no(),
        }
    }

    /// Replaces β and/or δ; requires β ≥ β₀ and δ ≤ δ₀.
    pub fn with_overrides(mut self, beta: Option<f64>, delta: Option<f64>) -> Result<Self> {
        if let Some(b) = beta {
            if !(b >= self.beta0) {
                return Err(Error::arg(format!("β = {b} is below β0 = {}", self.beta0)));
            }
            self.beta = b;
        }
        if let Some(d) = delta {
            if !(d > 0.0 && d <= self.delta0) {
                return Err(Error::arg(format!(
                    "δ = {d} outside (0, δ0 = {}]",
                    self.delta0
                )));
            }
            self.delta = d;
        }
        Ok(self)
    }
}

/// δ = δ₀ and β = (n+1)/(E_no − E_yes) = β₀ + 1/(E_no − E_yes). At β₀ itself
/// the two decision thresholds coincide; the extra unit gives z_yes = e·z_no.
pub fn lh_to_qpf(instance: &LhInstance) -> Result<QpfInstance> {
    let t = instance.thresholds;
    let gap = t.e_no - t.e_yes;
    if !(gap > 0.0 && gap.is_finite()) {
        return Err(Error::arg("degenerate thresholds"));
    }
    let n = instance.n();
    let beta0 = n as f64 / gap;
    let delta0 = delta0(n);
    Ok(QpfInstance {
        hamiltonian: instance.hamiltonian.clone(),
        n,
        thresholds: t,
        beta0,
        delta0,
        beta: beta0 + 1.0 / gap,
        delta: delta0,
    })
}

/// Classifies with a QPF estimate supplied by `solver(H, β, δ)`.
pub fn decide_lh_via_qpf<F>(instance: &QpfInstance, solver: F) -> Result<(Decision, f64)>
where
    F: FnOnce(&LocalHamiltonian, f64, f64) -> Result<f64>,
{
    let z = solver(&instance.hamiltonian, instance.beta, instance.delta)?;
    Ok((classify_z(instance, z), z))
}

pub fn classify_z(instance: &QpfInstance, z: f64) -> Decision {
    let ln_z = z.ln();
    if ln_z >= instance.ln_z_yes() {
        Decision::Yes
    } else if ln_z <= instance.ln_z_no() {
        Decision::No
    } else {
        Decision::Indeterminate
    }
}

/// Dense Hermitian matrix of the trivial penalty for a single clause, handy
/// for inspection.
pub fn clause_penalty_matrix(formula: &CnfFormula, clause: usize) -> Result<(Vec<usize>, CMat)> {
    let h = sat_to_klh_trivial(formula)?;
    let t = h
        .hamiltonian
        .terms()
        .get(clause)
        .ok_or_else(|| Error::arg(format!("no clause {clause}")))?;
    Ok((t.support.clone(), t.matrix.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{exact_partition_function, ground_energy_dense};

    #[test]
    fn single_clause_penalty() {
        let f = CnfFormula::from_ints(3, &[&[1, 2]]).unwrap();
        let (s, m) = clause_penalty_matrix(&f, 0).unwrap();
        assert_eq!(s, vec![0, 1]);
        assert_eq!(m, linalg::ket_bra(0, 0, 4));
    }

    #[test]
    fn delta0_at_ten() {
        let want = (1.0 - (-3.0f64).exp()) / (1.0 + (-3.0f64).exp());
        assert!((delta0(10) - want).abs() < 1e-15);
        assert!((delta0(10) - 0.90515).abs() < 1e-5);
    }

    #[test]
    fn beta0_formula() {
        let h = LocalHamiltonian::new(8, vec![]).unwrap();
        let inst = LhInstance {
            hamiltonian: h,
            thresholds: Thresholds::new(0.25, 0.75).unwrap(),
            k: 1,
            provenance: Provenance::default(),
        };
        let q = lh_to_qpf(&inst).unwrap();
        assert_eq!(q.beta0, 16.0);
        assert!(q.z_yes() > q.z_no());
        assert!((q.ln_z_yes() - q.ln_z_no() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn exact_solver_decisions() {
        let sat = CnfFormula::from_ints(3, &[&[1, 2, 3], &[-1, 2]]).unwrap();
        let unsat = CnfFormula::from_ints(3, &[&[1], &[-1]]).unwrap();
        for (f, want) in [(sat, Decision::Yes), (unsat, Decision::No)] {
            let lh = sat_to_klh_trivial(&f).unwrap();
            let q = lh_to_qpf(&lh).unwrap();
            let (d, _) = decide_lh_via_qpf(&q, |h, b, _| exact_partition_function(h, b)).unwrap();
            assert_eq!(d, want);
        }
    }

    #[test]
    fn mid_threshold_is_indeterminate() {
        let lh = sat_to_klh_trivial(&CnfFormula::from_ints(3, &[&[1]]).unwrap()).unwrap();
        let q = lh_to_qpf(&lh).unwrap();
        let mid = ((q.ln_z_yes() + q.ln_z_no()) / 2.0).exp();
        assert_eq!(classify_z(&q, mid), Decision::Indeterminate);
    }

    #[test]
    fn unsat_energy_at_least_one() {
        let f = CnfFormula::from_ints(3, &[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]]).unwrap();
        let r = ground_energy_dense(&sat_to_klh_trivial(&f).unwrap().hamiltonian).unwrap();
        assert_eq!(r.lambda, 1.0);
    }

    #[test]
    fn epsilon_precondition() {
        let f = CnfFormula::from_ints(2, &[&[1, 2]]).unwrap();
        let e = sat_to_3lh(&f, 0.3, None).unwrap_err();
        assert!(matches!(e, Error::InvalidArgument(_)));
    }
}
