//! Rewrites an elementary circuit into the shape the circuit-to-Hamiltonian
//! construction expects: controlled-Z as the only two-qubit gate, each CZ
//! flanked by Z gates on both qubits, CZs spaced at a fixed minimum stride,
//! identity gates on every clock step that moves the Johnson half of a dual
//! clock, and identity padding to the clock length.

use serde::{Deserialize, Serialize};

use super::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::linalg::binomial;

/// Minimum distance between consecutive two-qubit gates.
pub const TWO_QUBIT_STRIDE: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClockParameters {
    pub d: usize,
    /// Unary register size per clock half; 0 for the pure unary clock.
    pub a: usize,
    /// Largest time step T; gates are U_1..U_T.
    pub t_max: usize,
    /// Steps forced to identity because the Johnson half moves there.
    pub dummy_slots: Vec<usize>,
    /// Steps holding a controlled-Z.
    pub two_qubit_slots: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Canonical {
    pub circuit: Circuit,
    pub params: ClockParameters,
}

/// Non-dummy slots of a dual clock: C(a, d−1)·a.
pub fn dual_capacity(a: usize, d: usize) -> usize {
    binomial(a, d - 1) * a
}

enum Item {
    Single(Gate),
    Block(usize, usize),
}

fn expand(circuit: &Circuit) -> Result<Vec<Item>> {
    let mut items = Vec::new();
    for (i, g) in circuit.gates.iter().enumerate() {
        match g.kind {
            k if k.is_macro() => {
                return Err(Error::NotCanonical(format!(
                    "gate {i} is an undecomposed {k:?}"
                )))
            }
            GateKind::ControlledNot => {
                let (c, t) = (g.qubits[0], g.qubits[1]);
                items.push(Item::Single(Gate::h(t)));
                items.push(Item::Block(c, t));
                items.push(Item::Single(Gate::h(t)));
            }
            GateKind::ControlledZ => items.push(Item::Block(g.qubits[0], g.qubits[1])),
            _ => items.push(Item::Single(g.clone())),
        }
    }
    Ok(items)
}

/// Greedy placement into slots 1..; returns slot→gate plus CZ positions, or
/// None if `limit` is exceeded.
fn place(
    items: &[Item],
    is_dummy: &dyn Fn(usize) -> bool,
    limit: Option<usize>,
) -> Option<(Vec<(usize, Gate)>, Vec<usize>, usize)> {
    let mut placed = Vec::new();
    let mut czs = Vec::new();
    let mut cursor = 1usize;
    let mut last = 0usize;
    let fits = |t: usize| limit.is_none_or(|l| t <= l);
    for it in items {
        match it {
            Item::Single(g) => {
                while is_dummy(cursor) {
                    cursor += 1;
                }
                if !fits(cursor) {
                    return None;
                }
                placed.push((cursor, g.clone()));
                last = cursor;
                cursor += 1;
            }
            Item::Block(f, s) => {
                let mut t = (cursor + 2).max(4);
                if let Some(&prev) = czs.last() {
                    t = t.max(prev + TWO_QUBIT_STRIDE);
                }
                while (t - 2..=t + 2).any(is_dummy) {
                    t += 1;
                    if !fits(t) {
                        return None;
                    }
                }
                if !fits(t + 2) {
                    return None;
                }
                let block = [
                    Gate::z(*f),
                    Gate::z(*s),
                    Gate::cz(*f, *s),
                    Gate::z(*f),
                    Gate::z(*s),
                ];
                for (j, g) in block.into_iter().enumerate() {
                    placed.push((t - 2 + j, g));
                }
                czs.push(t);
                last = t + 2;
                cursor = t + 3;
            }
        }
    }
    Some((placed, czs, last))
}

pub fn canonicalize_for_construction(circuit: &Circuit, d: usize) -> Result<Canonical> {
    circuit.validate()?;
    if d == 0 {
        return Err(Error::arg("d must be at least 1"));
    }
    if circuit.width == 0 {
        return Err(Error::arg("circuit has no qubits"));
    }
    let items = expand(circuit)?;

    let (placed, czs, t_max, a, dummies) = if d == 1 {
        let (placed, czs, last) = place(&items, &|_| false, None).expect("unbounded placement");
        (placed, czs, last, 0, Vec::new())
    } else {
        let mut a = d;
        loop {
            let t_max = binomial(a, d - 1) * (a + 1) - 1;
            let is_dummy = |t: usize| t >= 1 && t <= t_max && t.is_multiple_of(a + 1);
            if let Some((placed, czs, _)) = place(&items, &is_dummy, Some(t_max)) {
                let dummies = (1..=t_max).filter(|&t| is_dummy(t)).collect();
                break (placed, czs, t_max, a, dummies);
            }
            a += 1;
        }
    };

    let mut gates = vec![Gate::id(0); t_max];
    for (t, g) in placed {
        gates[t - 1] = g;
    }
    let mut out = circuit.clone();
    out.gates = gates;
    out.work_qubits.clear();
    Ok(Canonical {
        circuit: out,
        params: ClockParameters {
            d,
            a,
            t_max,
            dummy_slots: dummies,
            two_qubit_slots: czs,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{simulate, StateVector};

    #[test]
    fn five_single_gates_fit_a_three() {
        let c = Circuit::new(1, 0, 0).with_gates(vec![Gate::h(0); 5]);
        let k = canonicalize_for_construction(&c, 2).unwrap();
        assert_eq!(k.params.a, 3);
        assert_eq!(k.params.t_max, 11);
        assert_eq!(k.circuit.len(), 11);
        assert_eq!(k.params.dummy_slots, vec![4, 8]);
        assert_eq!(dual_capacity(3, 2), 9);
    }

    #[test]
    fn cnot_becomes_flanked_cz() {
        let c = Circuit::new(2, 0, 1).with_gates(vec![Gate::cnot(0, 1)]);
        let k = canonicalize_for_construction(&c, 1).unwrap();
        let kinds: Vec<GateKind> = k.circuit.gates.iter().map(|g| g.kind).collect();
        let t = k.params.two_qubit_slots[0];
        assert_eq!(kinds[t - 1], GateKind::ControlledZ);
        assert_eq!(kinds[t - 3], GateKind::PauliZ);
        assert_eq!(kinds[t], GateKind::PauliZ);
        assert!(t >= 4 && t + 2 <= k.params.t_max);
        for x in 0..4 {
            let a = simulate(&c, &StateVector::basis(2, x)).unwrap();
            let b = simulate(&k.circuit, &StateVector::basis(2, x)).unwrap();
            assert!(a
                .amps
                .iter()
                .zip(&b.amps)
                .all(|(p, q)| (p - q).norm() < 1e-10));
        }
    }

    #[test]
    fn macros_are_rejected() {
        let c = Circuit::new(3, 0, 0).with_gates(vec![Gate::toffoli(0, 1, 2)]);
        assert!(matches!(
            canonicalize_for_construction(&c, 2),
            Err(Error::NotCanonical(_))
        ));
    }
}
