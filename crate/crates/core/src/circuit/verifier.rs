//! The ancilla-frugal SAT verification circuit
//! U_Φ = COMPARE · Π_i (W_i† · C-ADDONE · W_i).

use serde::{Deserialize, Serialize};

use super::{elementarize, elementary_count, Circuit, Gate};
use crate::cnf::{validate_kcnf, Clause, CnfFormula};
use crate::error::{Error, Result};

/// Counter width: the bit length of `m`, so that `m` itself is representable.
pub fn counter_width(m: usize) -> usize {
    ((usize::BITS - m.leading_zeros()) as usize).max(1)
}

fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

/// Ancilla budget 2⌈log₂ m⌉ + 2.
pub fn ancilla_bound(m: usize) -> usize {
    2 * ceil_log2(m) + 2
}

/// Smallest integer c ≥ 1 with n^c ≥ m.
pub fn poly_exponent(n: usize, m: usize) -> u32 {
    let n = n.max(2);
    let mut c = 1u32;
    while n.pow(c) < m {
        c += 1;
    }
    c
}

/// Gate budget 34c²nᶜlog²n + (70k+2)nᶜ + 35c·log n with logarithms base 2.
pub fn gate_bound(n: usize, m: usize, k: usize) -> f64 {
    let c = poly_exponent(n, m) as f64;
    let nf = n.max(2) as f64;
    let lg = nf.log2();
    let nc = nf.powf(c);
    34.0 * c * c * nc * lg * lg + (70.0 * k as f64 + 2.0) * nc + 35.0 * c * lg
}

/// Qubit assignment of the verifier registers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifierLayout {
    pub n: usize,
    pub cls: usize,
    /// Counter qubits, most significant first.
    pub cnt: Vec<usize>,
    pub out: usize,
    pub work: Vec<usize>,
}

impl VerifierLayout {
    pub fn r(&self) -> usize {
        self.cnt.len()
    }

    pub fn ancillas(&self) -> usize {
        2 + self.cnt.len() + self.work.len()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SatVerifier {
    pub circuit: Circuit,
    pub layout: VerifierLayout,
}

impl SatVerifier {
    pub fn ancillas(&self) -> usize {
        self.layout.ancillas()
    }

    pub fn elementary(&self) -> Result<Circuit> {
        elementarize(&self.circuit)
    }

    pub fn elementary_count(&self) -> Result<usize> {
        Ok(elementary_count(&self.elementary()?))
    }
}

/// Increment on explicit counter qubits (MSB first), optionally controlled.
pub fn build_addone_on(cnt: &[usize], control: Option<usize>) -> Vec<Gate> {
    let r = cnt.len();
    (0..r)
        .map(|q| {
            let mut ctrl: Vec<usize> = cnt[q + 1..].to_vec();
            ctrl.extend(control);
            Gate::mcx(&ctrl, cnt[q])
        })
        .collect()
}

/// Increment on qubits 0..r (MSB first); qubit r is the control if any.
pub fn build_addone(r: usize, controlled: bool) -> Vec<Gate> {
    let cnt: Vec<usize> = (0..r).collect();
    build_addone_on(&cnt, controlled.then_some(r))
}

/// Equality test of the counter against `m`, result XORed into `out`.
/// Counter flips are undone so the counter is left intact.
pub fn build_compare_on(cnt: &[usize], out: usize, m: usize) -> Result<Vec<Gate>> {
    let r = cnt.len();
    if r == 0 || (r < usize::BITS as usize && m >> r != 0) {
        return Err(Error::arg(format!("{m} is not representable in {r} bits")));
    }
    let flips: Vec<Gate> = (0..r)
        .filter(|&q| (m >> (r - 1 - q)) & 1 == 0)
        .map(|q| Gate::x(cnt[q]))
        .collect();
    let mut g = flips.clone();
    g.push(Gate::mcx(cnt, out));
    g.extend(flips);
    Ok(g)
}

/// Comparison on qubits 0..r with out qubit r.
pub fn build_compare(r: usize, m: usize) -> Result<Vec<Gate>> {
    let cnt: Vec<usize> = (0..r).collect();
    build_compare_on(&cnt, r, m)
}

/// W_i: leaves the clause value in `cls` (inputs are left negated on the
/// positive-literal variables until W_i† runs).
pub fn build_clause_gadget(clause: &Clause, cls: usize) -> Vec<Gate> {
    let pos: Vec<Gate> = clause
        .iter()
        .filter(|l| !l.negated)
        .map(|l| Gate::x(l.var - 1))
        .collect();
    let vars: Vec<usize> = clause.iter().map(|l| l.var - 1).collect();
    let mut g = pos;
    g.push(Gate::mcx(&vars, cls));
    g.push(Gate::x(cls));
    g
}

fn mcx_work(controls: usize) -> usize {
    controls.saturating_sub(2)
}

pub fn build_sat_verifier(formula: &CnfFormula) -> Result<SatVerifier> {
    let m = formula.num_clauses();
    if m == 0 {
        return Err(Error::InvalidFormula("no clauses to verify".into()));
    }
    let report = validate_kcnf(formula, formula.max_width());
    if !report.accepted {
        return Err(Error::InvalidFormula(format!("{:?}", report.offending)));
    }
    let n = formula.num_vars();
    let r = counter_width(m);
    let k = formula.max_width();
    let pool = mcx_work(k).max(mcx_work(r));
    let cls = n;
    let cnt: Vec<usize> = (n + 1..n + 1 + r).collect();
    let out = n + 1 + r;
    let work: Vec<usize> = (out + 1..out + 1 + pool).collect();
    let layout = VerifierLayout {
        n,
        cls,
        cnt: cnt.clone(),
        out,
        work: work.clone(),
    };
    let mut circuit = Circuit::new(n, 2 + r + pool, out);
    circuit.work_qubits = work;
    let addone = build_addone_on(&cnt, Some(cls));
    for clause in formula.clauses() {
        let w = build_clause_gadget(clause, cls);
        circuit.gates.extend(w.iter().cloned());
        circuit.gates.extend(addone.iter().cloned());
        circuit.gates.extend(w.iter().rev().map(Gate::inverse));
    }
    circuit.gates.extend(build_compare_on(&cnt, out, m)?);
    circuit.validate()?;
    Ok(SatVerifier { circuit, layout })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{simulate, StateVector};
    use crate::linalg::{bits_of, index_of};

    fn run_basis(gates: &[Gate], width: usize, idx: usize) -> usize {
        let c = Circuit::new(width, 0, 0).with_gates(gates.to_vec());
        let s = simulate(&c, &StateVector::basis(width, idx)).unwrap();
        let (i, p) = s.peak();
        assert!((p - 1.0).abs() < 1e-12);
        i
    }

    #[test]
    fn counter_width_values() {
        assert_eq!(counter_width(1), 1);
        assert_eq!(counter_width(2), 2);
        assert_eq!(counter_width(3), 2);
        assert_eq!(counter_width(8), 4);
        assert_eq!(ancilla_bound(8), 8);
    }

    #[test]
    fn addone_increments() {
        let g = build_addone(3, false);
        for y in 0..7 {
            assert_eq!(run_basis(&g, 3, y), y + 1);
        }
        assert_eq!(run_basis(&g, 3, 0b011), 0b100);
    }

    #[test]
    fn controlled_addone_respects_control() {
        let g = build_addone(3, true);
        for y in 0..8 {
            assert_eq!(run_basis(&g, 4, y << 1), y << 1);
        }
        for y in 0..7 {
            assert_eq!(run_basis(&g, 4, (y << 1) | 1), ((y + 1) << 1) | 1);
        }
    }

    #[test]
    fn compare_examples() {
        let g = build_compare(2, 3).unwrap();
        assert_eq!(run_basis(&g, 3, 0b110), 0b111);
        let g = build_compare(2, 2).unwrap();
        for y in 0..4 {
            let out = run_basis(&g, 3, y << 1);
            assert_eq!(out >> 1, y);
            assert_eq!(out & 1, (y == 2) as usize);
        }
        let g = build_compare(3, 5).unwrap();
        let flipped: Vec<usize> = g
            .iter()
            .take_while(|g| g.qubits.len() == 1)
            .map(|g| g.qubits[0])
            .collect();
        assert_eq!(flipped, vec![1]);
        assert!(build_compare(2, 4).is_err());
    }

    #[test]
    fn clause_gadget_computes_clause() {
        let f = CnfFormula::from_ints(2, &[&[-1, 2]]).unwrap();
        let w = build_clause_gadget(&f.clauses()[0], 2);
        let mut ww = w.clone();
        ww.extend(w.iter().rev().map(Gate::inverse));
        for x in 0..4usize {
            let bits = bits_of(x, 2);
            let want = !bits[0] || bits[1];
            let out = run_basis(&w, 3, x << 1);
            assert_eq!(out & 1 == 1, want);
            assert_eq!(run_basis(&ww, 3, x << 1), x << 1);
        }
    }

    #[test]
    fn verifier_on_two_clause_formula() {
        let f = CnfFormula::from_ints(2, &[&[1, 2], &[-1, 2]]).unwrap();
        let v = build_sat_verifier(&f).unwrap();
        for (x, want) in [(0b00, 0), (0b01, 1), (0b10, 0), (0b11, 1)] {
            let s = simulate(&v.circuit, &StateVector::basis(2, x)).unwrap();
            let (idx, p) = s.peak();
            assert!(p > 1.0 - 1e-9);
            let bits = bits_of(idx, v.circuit.width);
            assert_eq!(bits[v.layout.out] as usize, want);
            assert!(!bits[v.layout.cls]);
            let cnt: Vec<bool> = v.layout.cnt.iter().map(|&q| bits[q]).collect();
            let sat = crate::cnf::satisfied_count(&f, &bits_of(x, 2));
            assert_eq!(index_of(&cnt), sat);
        }
    }

    #[test]
    fn verifier_rejects_empty_formula() {
        let f = CnfFormula::new(2, vec![]).unwrap();
        assert!(build_sat_verifier(&f).is_err());
    }
}
