//! Gate-level circuits, exact statevector simulation, decompositions, the SAT
//! verification circuit and the canonical form consumed by the Hamiltonian
//! construction.

mod canon;
mod decompose;
mod verifier;

pub use canon::{
    canonicalize_for_construction, dual_capacity, Canonical, ClockParameters, TWO_QUBIT_STRIDE,
};
pub use decompose::{
    decompose_mcx, decompose_toffoli, elementarize, elementary_count, McxDecomposition,
};
pub use verifier::{
    ancilla_bound, build_addone, build_addone_on, build_clause_gadget, build_compare,
    build_compare_on, build_sat_verifier, counter_width, gate_bound, poly_exponent, SatVerifier,
    VerifierLayout,
};

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMat};
use crate::rng::Rng;
use crate::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GateKind {
    Identity,
    Hadamard,
    PiOver8,
    PiOver8Inv,
    Not,
    PauliZ,
    ControlledNot,
    ControlledZ,
    Toffoli,
    MultiControlledNot,
}

impl GateKind {
    pub fn is_single(self) -> bool {
        matches!(
            self,
            GateKind::Identity
                | GateKind::Hadamard
                | GateKind::PiOver8
                | GateKind::PiOver8Inv
                | GateKind::Not
                | GateKind::PauliZ
        )
    }

    pub fn is_macro(self) -> bool {
        matches!(self, GateKind::Toffoli | GateKind::MultiControlledNot)
    }

    /// Counted in elementary-gate totals (identity padding is not).
    pub fn is_elementary(self) -> bool {
        !self.is_macro() && self != GateKind::Identity
    }
}

/// A gate; qubits are listed controls first, target last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: Vec<usize>) -> Self {
        Gate { kind, qubits }
    }
    pub fn id(q: usize) -> Self {
        Self::new(GateKind::Identity, vec![q])
    }
    pub fn h(q: usize) -> Self {
        Self::new(GateKind::Hadamard, vec![q])
    }
    pub fn t(q: usize) -> Self {
        Self::new(GateKind::PiOver8, vec![q])
    }
    pub fn tdg(q: usize) -> Self {
        Self::new(GateKind::PiOver8Inv, vec![q])
    }
    pub fn x(q: usize) -> Self {
        Self::new(GateKind::Not, vec![q])
    }
    pub fn z(q: usize) -> Self {
        Self::new(GateKind::PauliZ, vec![q])
    }
    pub fn cnot(c: usize, t: usize) -> Self {
        Self::new(GateKind::ControlledNot, vec![c, t])
    }
    pub fn cz(a: usize, b: usize) -> Self {
        Self::new(GateKind::ControlledZ, vec![a, b])
    }
    pub fn toffoli(a: usize, b: usize, t: usize) -> Self {
        Self::new(GateKind::Toffoli, vec![a, b, t])
    }

    /// Multi-controlled NOT using the narrowest gate kind for the arity.
    pub fn mcx(controls: &[usize], target: usize) -> Self {
        match controls.len() {
            0 => Self::x(target),
            1 => Self::cnot(controls[0], target),
            2 => Self::toffoli(controls[0], controls[1], target),
            _ => {
                let mut q = controls.to_vec();
                q.push(target);
                Self::new(GateKind::MultiControlledNot, q)
            }
        }
    }

    pub fn target(&self) -> usize {
        *self.qubits.last().expect("gate without qubits")
    }

    pub fn controls(&self) -> &[usize] {
        &self.qubits[..self.qubits.len() - 1]
    }

    pub fn inverse(&self) -> Gate {
        let kind = match self.kind {
            GateKind::PiOver8 => GateKind::PiOver8Inv,
            GateKind::PiOver8Inv => GateKind::PiOver8,
            k => k,
        };
        Gate::new(kind, self.qubits.clone())
    }

    fn check_arity(&self) -> std::result::Result<(), String> {
        let n = self.qubits.len();
        let ok = match self.kind {
            k if k.is_single() => n == 1,
            GateKind::ControlledNot | GateKind::ControlledZ => n == 2,
            GateKind::Toffoli => n == 3,
            _ => n >= 2,
        };
        if ok {
            Ok(())
        } else {
            Err(format!("{:?} on {n} qubits", self.kind))
        }
    }

    /// 2×2 matrix of a single-qubit gate.
    pub fn single_matrix(kind: GateKind) -> [[C64; 2]; 2] {
        let z = C64::new(0.0, 0.0);
        let o = C64::new(1.0, 0.0);
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        match kind {
            GateKind::Identity => [[o, z], [z, o]],
            GateKind::Hadamard => [[h, h], [h, -h]],
            GateKind::PiOver8 => [[o, z], [z, C64::from_polar(1.0, FRAC_PI_4)]],
            GateKind::PiOver8Inv => [[o, z], [z, C64::from_polar(1.0, -FRAC_PI_4)]],
            GateKind::Not => [[z, o], [o, z]],
            GateKind::PauliZ => [[o, z], [z, -o]],
            k => panic!("{k:?} is not a single-qubit gate"),
        }
    }

    /// Dense unitary on the gate's own qubits (in listed order).
    pub fn matrix(&self) -> CMat {
        let k = self.qubits.len();
        let dim = 1 << k;
        let mut u = CMat::zeros(dim, dim);
        for col in 0..dim {
            let mut amps = vec![C64::new(0.0, 0.0); dim];
            amps[col] = C64::new(1.0, 0.0);
            let local = Gate::new(self.kind, (0..k).collect());
            apply_gate(&mut amps, k, &local);
            for (row, a) in amps.into_iter().enumerate() {
                u[(row, col)] = a;
            }
        }
        u
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub width: usize,
    pub proof_size: usize,
    pub ancilla_size: usize,
    pub out_index: usize,
    pub gates: Vec<Gate>,
    /// Ancillas reserved as clean scratch space for macro-gate decomposition.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub work_qubits: Vec<usize>,
}

impl Circuit {
    pub fn new(proof_size: usize, ancilla_size: usize, out_index: usize) -> Self {
        Circuit {
            width: proof_size + ancilla_size,
            proof_size,
            ancilla_size,
            out_index,
            gates: Vec::new(),
            work_qubits: Vec::new(),
        }
    }

    pub fn with_gates(mut self, gates: Vec<Gate>) -> Self {
        self.gates = gates;
        self
    }

    pub fn push(&mut self, g: Gate) {
        self.gates.push(g);
    }

    /// Gate count T.
    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::arg(m));
        if self.width != self.proof_size + self.ancilla_size {
            return bad(format!(
                "width {} != proof {} + ancilla {}",
                self.width, self.proof_size, self.ancilla_size
            ));
        }
        if self.out_index >= self.width {
            return bad(format!(
                "out index {} outside width {}",
                self.out_index, self.width
            ));
        }
        for (i, g) in self.gates.iter().enumerate() {
            g.check_arity().or_else(|e| bad(format!("gate {i}: {e}")))?;
            for (j, &q) in g.qubits.iter().enumerate() {
                if q >= self.width {
                    return bad(format!("gate {i}: qubit {q} outside width {}", self.width));
                }
                if g.qubits[..j].contains(&q) {
                    return bad(format!("gate {i}: repeated qubit {q}"));
                }
            }
        }
        Ok(())
    }

    pub fn inverse(&self) -> Circuit {
        let mut c = self.clone();
        c.gates = self.gates.iter().rev().map(Gate::inverse).collect();
        c
    }

    pub fn has_macros(&self) -> bool {
        self.gates.iter().any(|g| g.kind.is_macro())
    }

    /// Dense unitary of the whole circuit; for tests at small width.
    pub fn unitary(&self) -> Result<CMat> {
        guard_width(self.width, crate::DENSE_GUARD)?;
        let dim = 1 << self.width;
        let mut u = CMat::zeros(dim, dim);
        for col in 0..dim {
            let mut amps = vec![C64::new(0.0, 0.0); dim];
            amps[col] = C64::new(1.0, 0.0);
            for g in &self.gates {
                apply_gate(&mut amps, self.width, g);
            }
            for (row, a) in amps.into_iter().enumerate() {
                u[(row, col)] = a;
            }
        }
        Ok(u)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Circuit> {
        let c: Circuit = serde_json::from_str(s)?;
        c.validate()?;
        Ok(c)
    }
}

fn guard_width(w: usize, limit: usize) -> Result<()> {
    if w > limit {
        Err(Error::Guard {
            what: "qubit count",
            value: w,
            limit,
        })
    } else {
        Ok(())
    }
}

/// Normalised pure state on `width` qubits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    pub width: usize,
    pub amps: Vec<C64>,
}

impl StateVector {
    pub const NORM_TOL: f64 = 1e-10;

    pub fn basis(width: usize, idx: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); 1 << width];
        amps[idx] = C64::new(1.0, 0.0);
        StateVector { width, amps }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        Self::basis(bits.len(), linalg::index_of(bits))
    }

    pub fn from_amps(amps: Vec<C64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::arg(format!(
                "{} amplitudes is not a power of two",
                amps.len()
            )));
        }
        let width = amps.len().trailing_zeros() as usize;
        let s = StateVector { width, amps };
        let n = s.norm_sqr();
        if (n - 1.0).abs() > Self::NORM_TOL {
            return Err(Error::arg(format!("state norm² is {n}, expected 1")));
        }
        Ok(s)
    }

    /// Haar-like random state (normalised complex Gaussian vector).
    pub fn random(width: usize, rng: &mut Rng) -> Self {
        let mut amps: Vec<C64> = (0..1usize << width)
            .map(|_| C64::new(gauss(rng), gauss(rng)))
            .collect();
        let n = linalg::norm_sqr(&amps).sqrt();
        amps.iter_mut().for_each(|a| *a /= n);
        StateVector { width, amps }
    }

    pub fn norm_sqr(&self) -> f64 {
        linalg::norm_sqr(&self.amps)
    }

    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        StateVector {
            width: self.width + other.width,
            amps,
        }
    }

    pub fn inner(&self, other: &StateVector) -> C64 {
        linalg::inner(&self.amps, &other.amps)
    }

    /// Largest squared amplitude and its index.
    pub fn peak(&self) -> (usize, f64) {
        self.amps
            .iter()
            .enumerate()
            .map(|(i, a)| (i, a.norm_sqr()))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc })
    }

    /// Probability that qubit `q` reads 1.
    pub fn prob_one(&self, q: usize) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| linalg::bit(*i, q, self.width) == 1)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }
}

/// Standard normal sample via Box–Muller.
pub(crate) fn gauss(rng: &mut Rng) -> f64 {
    let u1: f64 = rng.gen::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Applies one gate in place to a `width`-qubit amplitude vector.
pub fn apply_gate(amps: &mut [C64], width: usize, g: &Gate) {
    let mask = |q: usize| 1usize << (width - 1 - q);
    match g.kind {
        GateKind::Identity => {}
        k if k.is_single() => {
            let m = Gate::single_matrix(k);
            let bit = mask(g.qubits[0]);
            for i in 0..amps.len() {
                if i & bit == 0 {
                    let (a0, a1) = (amps[i], amps[i | bit]);
                    amps[i] = m[0][0] * a0 + m[0][1] * a1;
                    amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
                }
            }
        }
        GateKind::ControlledZ => {
            let both = mask(g.qubits[0]) | mask(g.qubits[1]);
            for (i, a) in amps.iter_mut().enumerate() {
                if i & both == both {
                    *a = -*a;
                }
            }
        }
        _ => {
            let cmask = g.controls().iter().fold(0, |acc, &q| acc | mask(q));
            let tbit = mask(g.target());
            for i in 0..amps.len() {
                if i & cmask == cmask && i & tbit == 0 {
                    amps.swap(i, i | tbit);
                }
            }
        }
    }
}

/// Runs the circuit on `input` (proof register) with ancillas in |0⟩.
pub fn simulate(circuit: &Circuit, input: &StateVector) -> Result<StateVector> {
    circuit.validate()?;
    if input.width != circuit.proof_size {
        return Err(Error::Mismatch {
            what: "proof state width",
            expected: circuit.proof_size,
            got: input.width,
        });
    }
    guard_width(circuit.width, 24)?;
    let mut amps = vec![C64::new(0.0, 0.0); 1 << circuit.width];
    for (x, a) in input.amps.iter().enumerate() {
        amps[x << circuit.ancilla_size] = *a;
    }
    for g in &circuit.gates {
        apply_gate(&mut amps, circuit.width, g);
    }
    Ok(StateVector {
        width: circuit.width,
        amps,
    })
}

/// Probability of reading 1 on the out qubit.
pub fn accept_probability(circuit: &Circuit, input: &StateVector) -> Result<f64> {
    Ok(simulate(circuit, input)?.prob_one(circuit.out_index))
}
