use super::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct McxDecomposition {
    pub gates: Vec<Gate>,
    /// Work ancillas consumed, all returned to |0⟩.
    pub ancillas_used: usize,
}

/// Toffoli ladder: computes the AND of the controls into `work`, hits the
/// target, then uncomputes. Uses 2k−3 Toffolis and k−2 clean ancillas.
pub fn decompose_mcx(gate: &Gate, work: &[usize]) -> Result<McxDecomposition> {
    let ctrl = gate.controls();
    let k = ctrl.len();
    if !matches!(gate.kind, GateKind::MultiControlledNot | GateKind::Toffoli) || k < 2 {
        return Err(Error::arg(format!(
            "multi-controlled NOT needs at least 2 controls, got {k}"
        )));
    }
    let need = k - 2;
    if work.len() < need {
        return Err(Error::arg(format!(
            "{k}-control NOT needs {need} work ancillas, {} supplied",
            work.len()
        )));
    }
    if let Some(&q) = work[..need].iter().find(|w| gate.qubits.contains(w)) {
        return Err(Error::arg(format!("work ancilla {q} overlaps the gate")));
    }
    let t = gate.target();
    if k == 2 {
        return Ok(McxDecomposition {
            gates: vec![Gate::toffoli(ctrl[0], ctrl[1], t)],
            ancillas_used: 0,
        });
    }
    let mut up = vec![Gate::toffoli(ctrl[0], ctrl[1], work[0])];
    for i in 2..k - 1 {
        up.push(Gate::toffoli(ctrl[i], work[i - 2], work[i - 1]));
    }
    let mut gates = up.clone();
    gates.push(Gate::toffoli(ctrl[k - 1], work[k - 3], t));
    gates.extend(up.into_iter().rev());
    Ok(McxDecomposition {
        gates,
        ancillas_used: need,
    })
}

/// Fifteen-gate Clifford+T realisation of the Toffoli gate.
pub fn decompose_toffoli(gate: &Gate) -> Vec<Gate> {
    let (a, b, c) = (gate.qubits[0], gate.qubits[1], gate.qubits[2]);
    vec![
        Gate::h(c),
        Gate::cnot(b, c),
        Gate::tdg(c),
        Gate::cnot(a, c),
        Gate::t(c),
        Gate::cnot(b, c),
        Gate::tdg(c),
        Gate::cnot(a, c),
        Gate::t(b),
        Gate::t(c),
        Gate::h(c),
        Gate::cnot(a, b),
        Gate::t(a),
        Gate::tdg(b),
        Gate::cnot(a, b),
    ]
}

/// Rewrites every macro gate into {H, T, T†, NOT, CNOT}, drawing scratch
/// space from the circuit's work qubits.
pub fn elementarize(circuit: &Circuit) -> Result<Circuit> {
    let mut out = circuit.clone();
    out.gates.clear();
    for g in &circuit.gates {
        match g.kind {
            GateKind::Toffoli => out.gates.extend(decompose_toffoli(g)),
            GateKind::MultiControlledNot if g.qubits.len() == 2 => {
                out.gates.push(Gate::cnot(g.qubits[0], g.qubits[1]))
            }
            GateKind::MultiControlledNot => {
                let free: Vec<usize> = circuit
                    .work_qubits
                    .iter()
                    .copied()
                    .filter(|q| !g.qubits.contains(q))
                    .collect();
                for t in decompose_mcx(g, &free)?.gates {
                    out.gates.extend(decompose_toffoli(&t));
                }
            }
            _ => out.gates.push(g.clone()),
        }
    }
    Ok(out)
}

/// Number of elementary gates (identity padding excluded).
pub fn elementary_count(circuit: &Circuit) -> usize {
    circuit
        .gates
        .iter()
        .filter(|g| g.kind.is_elementary())
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CMat;

    fn close(a: &CMat, b: &CMat, tol: f64) -> bool {
        (a - b).iter().all(|z| z.norm() <= tol)
    }

    #[test]
    fn toffoli_realisation_is_exact() {
        let t = Gate::toffoli(0, 1, 2);
        let seq = decompose_toffoli(&t);
        assert!(seq.len() <= 17);
        assert!(seq.iter().all(|g| g.kind.is_elementary()));
        let want = Circuit::new(3, 0, 0).with_gates(vec![t]).unitary().unwrap();
        let got = Circuit::new(3, 0, 0)
            .with_gates(seq.clone())
            .unitary()
            .unwrap();
        assert!(close(&want, &got, 1e-10));
        let mut twice = seq.clone();
        twice.extend(seq);
        let id = Circuit::new(3, 0, 0).with_gates(twice).unitary().unwrap();
        assert!(close(&id, &CMat::identity(8, 8), 1e-10));
    }

    #[test]
    fn mcx_two_controls_is_one_toffoli() {
        let d = decompose_mcx(&Gate::toffoli(0, 1, 2), &[]).unwrap();
        assert_eq!(d.gates.len(), 1);
        assert_eq!(d.ancillas_used, 0);
    }

    #[test]
    fn mcx_rejects_single_control_and_short_pool() {
        assert!(decompose_mcx(&Gate::new(GateKind::MultiControlledNot, vec![0, 1]), &[]).is_err());
        assert!(decompose_mcx(&Gate::mcx(&[0, 1, 2], 3), &[]).is_err());
        assert!(decompose_mcx(&Gate::mcx(&[0, 1, 2], 3), &[2]).is_err());
    }
}
