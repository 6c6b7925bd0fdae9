//! Local-term Hamiltonians over a circuit⊗clock register and the
//! circuit-to-Hamiltonian assembly.

use serde::{Deserialize, Serialize};

use crate::circuit::{apply_gate, Canonical, Gate, GateKind, StateVector};
use crate::clock::{build_h_clock, ClockOp, ClockSchedule, Role};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat};
use crate::par::{self, Mode};
use crate::{C64, DENSE_GUARD, LANCZOS_GUARD};

const HERMITIAN_TOL: f64 = 1e-12;

/// Which part of the construction a term came from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TermKind {
    #[default]
    Generic,
    In,
    Out,
    Prop,
    Qubit,
    Time,
    Clock,
    Penalty,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalTerm {
    pub support: Vec<usize>,
    pub matrix: CMat,
    pub coefficient: f64,
    pub kind: TermKind,
}

impl LocalTerm {
    pub fn new(support: Vec<usize>, matrix: CMat, coefficient: f64) -> Self {
        LocalTerm {
            support,
            matrix,
            coefficient,
            kind: TermKind::Generic,
        }
    }

    pub fn with_kind(mut self, kind: TermKind) -> Self {
        self.kind = kind;
        self
    }

    fn validate(&self, width: usize) -> Result<()> {
        let dim = 1usize << self.support.len();
        if self.matrix.nrows() != dim || self.matrix.ncols() != dim {
            return Err(Error::Mismatch {
                what: "term block dimension",
                expected: dim,
                got: self.matrix.nrows(),
            });
        }
        if !linalg::is_hermitian(&self.matrix, HERMITIAN_TOL) {
            return Err(Error::arg("term block is not Hermitian"));
        }
        if !(self.coefficient.is_finite() && self.coefficient >= 0.0) {
            return Err(Error::arg(format!("bad coefficient {}", self.coefficient)));
        }
        for (i, &q) in self.support.iter().enumerate() {
            if q >= width || self.support[..i].contains(&q) {
                return Err(Error::arg(format!("bad support {:?}", self.support)));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSet {
    pub alpha_in: f64,
    pub alpha_out: f64,
    pub alpha_a: f64,
    pub alpha_b: f64,
    pub alpha_clock: f64,
}

impl CoefficientSet {
    /// α_A = α_B = T², α_in = α_out = 16T³, α_clock = 16T⁴.
    ///
    /// The propagation gap of a length-T path shrinks like 1/T², so the
    /// propagation weight is raised by T² to keep rejecting circuits at
    /// λ ≥ ½ − ε.
    pub fn for_t(t_max: usize) -> Self {
        Self::unscaled(t_max).scaled((t_max.max(1) as f64).powi(2))
    }

    /// α_A = α_B = 1, α_in = α_out = 16T², α_clock = 16T³.
    pub fn unscaled(t_max: usize) -> Self {
        let t = t_max.max(1) as f64;
        CoefficientSet {
            alpha_in: 16.0 * t * t,
            alpha_out: 16.0 * t * t,
            alpha_a: 1.0,
            alpha_b: 1.0,
            alpha_clock: 16.0 * t * t * t,
        }
    }

    /// Multiplies every coefficient by `s`.
    pub fn scaled(self, s: f64) -> Self {
        CoefficientSet {
            alpha_in: self.alpha_in * s,
            alpha_out: self.alpha_out * s,
            alpha_a: self.alpha_a * s,
            alpha_b: self.alpha_b * s,
            alpha_clock: self.alpha_clock * s,
        }
    }

    /// Largest value allowed for a clock of length `t_max`: 10³·(T+1)⁶.
    pub fn poly_bound(t_max: usize) -> f64 {
        1e3 * ((t_max + 1) as f64).powi(6)
    }

    pub fn validate(&self, t_max: usize) -> Result<()> {
        let bound = Self::poly_bound(t_max);
        let all = [
            self.alpha_in,
            self.alpha_out,
            self.alpha_a,
            self.alpha_b,
            self.alpha_clock,
        ];
        if all
            .iter()
            .all(|a| a.is_finite() && *a >= 0.0 && *a <= bound)
        {
            Ok(())
        } else {
            Err(Error::arg(format!(
                "coefficients must lie in [0, {bound}], got {all:?}"
            )))
        }
    }
}

/// Term with its block pre-scaled and laid out for row-wise application.
#[derive(Clone, Debug)]
struct Compiled {
    shifts: Vec<usize>,
    mask: usize,
    deposit: Vec<usize>,
    rows: Vec<Vec<(usize, C64)>>,
}

impl Compiled {
    fn new(t: &LocalTerm, width: usize) -> Self {
        let shifts: Vec<usize> = t.support.iter().map(|&q| width - 1 - q).collect();
        let k = shifts.len();
        let mask = shifts.iter().fold(0, |m, &s| m | (1 << s));
        let deposit = (0..1usize << k)
            .map(|c| {
                shifts
                    .iter()
                    .enumerate()
                    .fold(0, |acc, (j, &s)| acc | (((c >> (k - 1 - j)) & 1) << s))
            })
            .collect();
        let rows = (0..1usize << k)
            .map(|r| {
                (0..1usize << k)
                    .filter_map(|c| {
                        let v = t.matrix[(r, c)] * t.coefficient;
                        (v.norm() != 0.0).then_some((c, v))
                    })
                    .collect()
            })
            .collect();
        Compiled {
            shifts,
            mask,
            deposit,
            rows,
        }
    }

    #[inline]
    fn local(&self, i: usize) -> usize {
        self.shifts
            .iter()
            .fold(0, |acc, &s| (acc << 1) | ((i >> s) & 1))
    }
}

/// H = Σ terms on `width` qubits.
#[derive(Clone, Debug)]
pub struct LocalHamiltonian {
    width: usize,
    terms: Vec<LocalTerm>,
    locality: usize,
    norm_bound: f64,
    compiled: Vec<Compiled>,
}

impl PartialEq for LocalHamiltonian {
    fn eq(&self, other: &Self) -> bool {
        self.width == other.width && self.terms == other.terms
    }
}

const CHUNK: usize = 1 << 10;

impl LocalHamiltonian {
    pub fn new(width: usize, terms: Vec<LocalTerm>) -> Result<Self> {
        for t in &terms {
            t.validate(width)?;
        }
        let locality = terms.iter().map(|t| t.support.len()).max().unwrap_or(0);
        let norm_bound = terms
            .iter()
            .map(|t| t.coefficient * linalg::hermitian_norm(&t.matrix))
            .sum();
        // Wider Hamiltonians are kept symbolically; they cannot be applied.
        let compiled = if width <= LANCZOS_GUARD {
            terms.iter().map(|t| Compiled::new(t, width)).collect()
        } else {
            Vec::new()
        };
        Ok(LocalHamiltonian {
            width,
            terms,
            locality,
            norm_bound,
            compiled,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn terms(&self) -> &[LocalTerm] {
        &self.terms
    }

    /// Largest support size over all terms.
    pub fn locality(&self) -> usize {
        self.locality
    }

    /// Σ coefficient·‖block‖, an upper bound on ‖H‖.
    pub fn norm_bound(&self) -> f64 {
        self.norm_bound
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.iter().all(|t| linalg::is_diagonal(&t.matrix))
    }

    /// Sub-Hamiltonian made of the terms of one kind.
    pub fn part(&self, kind: TermKind) -> LocalHamiltonian {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.kind == kind)
            .cloned()
            .collect();
        LocalHamiltonian::new(self.width, terms).expect("subset of valid terms")
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != 1usize << self.width {
            return Err(Error::Mismatch {
                what: "vector length",
                expected: 1 << self.width,
                got: len,
            });
        }
        Ok(())
    }

    /// H·v with the default parallel mode.
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        self.apply_with(Mode::default(), v)
    }

    pub fn apply_with(&self, mode: Mode, v: &[C64]) -> Result<Vec<C64>> {
        if self.width > LANCZOS_GUARD {
            return Err(Error::Guard {
                what: "Hamiltonian width",
                value: self.width,
                limit: LANCZOS_GUARD,
            });
        }
        self.check_len(v.len())?;
        let mut out = vec![C64::new(0.0, 0.0); v.len()];
        par::fill_chunks(mode, &mut out, CHUNK, |offset, chunk| {
            for (j, o) in chunk.iter_mut().enumerate() {
                let i = offset + j;
                let mut acc = C64::new(0.0, 0.0);
                for t in &self.compiled {
                    let base = i & !t.mask;
                    for &(c, val) in &t.rows[t.local(i)] {
                        acc += val * v[base | t.deposit[c]];
                    }
                }
                *o = acc;
            }
        });
        Ok(out)
    }

    /// ⟨v|H|v⟩ for a normalized or unnormalized v.
    pub fn expectation(&self, v: &[C64]) -> Result<f64> {
        let hv = self.apply(v)?;
        Ok(linalg::inner(v, &hv).re)
    }

    /// Diagonal of H; only meaningful as a spectrum when [`Self::is_diagonal`].
    pub fn diagonal(&self) -> Result<Vec<f64>> {
        if self.width > LANCZOS_GUARD {
            return Err(Error::Guard {
                what: "Hamiltonian width",
                value: self.width,
                limit: LANCZOS_GUARD,
            });
        }
        let mut out = vec![0.0; 1 << self.width];
        par::fill_chunks(Mode::default(), &mut out, CHUNK, |offset, chunk| {
            for (j, o) in chunk.iter_mut().enumerate() {
                let i = offset + j;
                *o = self
                    .terms
                    .iter()
                    .zip(&self.compiled)
                    .map(|(t, c)| {
                        let r = c.local(i);
                        t.coefficient * t.matrix[(r, r)].re
                    })
                    .sum();
            }
        });
        Ok(out)
    }

    pub fn to_dense(&self) -> Result<CMat> {
        if self.width > DENSE_GUARD {
            return Err(Error::Guard {
                what: "dense width",
                value: self.width,
                limit: DENSE_GUARD,
            });
        }
        let dim = 1usize << self.width;
        let mut m = CMat::zeros(dim, dim);
        for t in &self.compiled {
            for i in 0..dim {
                let base = i & !t.mask;
                for &(c, val) in &t.rows[t.local(i)] {
                    m[(i, base | t.deposit[c])] += val;
                }
            }
        }
        Ok(m)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&HamiltonianJson::from(self))?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: HamiltonianJson = serde_json::from_str(s)?;
        j.into_hamiltonian()
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    support: Vec<usize>,
    coefficient: f64,
    matrix: Vec<[f64; 2]>,
    #[serde(default)]
    kind: TermKind,
}

#[derive(Serialize, Deserialize)]
struct HamiltonianJson {
    width: usize,
    locality: usize,
    terms: Vec<TermJson>,
}

impl From<&LocalHamiltonian> for HamiltonianJson {
    fn from(h: &LocalHamiltonian) -> Self {
        HamiltonianJson {
            width: h.width,
            locality: h.locality,
            terms: h
                .terms
                .iter()
                .map(|t| {
                    let n = t.matrix.nrows();
                    TermJson {
                        support: t.support.clone(),
                        coefficient: t.coefficient,
                        matrix: (0..n * n)
                            .map(|k| {
                                let z = t.matrix[(k / n, k % n)];
                                [z.re, z.im]
                            })
                            .collect(),
                        kind: t.kind,
                    }
                })
                .collect(),
        }
    }
}

impl HamiltonianJson {
    fn into_hamiltonian(self) -> Result<LocalHamiltonian> {
        let terms = self
            .terms
            .into_iter()
            .map(|t| {
                let n = 1usize << t.support.len();
                if t.matrix.len() != n * n {
                    return Err(Error::Mismatch {
                        what: "term matrix entries",
                        expected: n * n,
                        got: t.matrix.len(),
                    });
                }
                let m = CMat::from_fn(n, n, |r, c| {
                    let [re, im] = t.matrix[r * n + c];
                    C64::new(re, im)
                });
                Ok(LocalTerm::new(t.support, m, t.coefficient).with_kind(t.kind))
            })
            .collect::<Result<Vec<_>>>()?;
        let h = LocalHamiltonian::new(self.width, terms)?;
        if h.locality != self.locality {
            return Err(Error::Mismatch {
                what: "declared locality",
                expected: self.locality,
                got: h.locality,
            });
        }
        Ok(h)
    }
}

/// Random k-local Hamiltonian: `m` terms, each a Gaussian Hermitian block
/// rescaled to spectral norm 1 on k distinct qubits, coefficient in [½, 1].
pub fn random_k_local(
    n: usize,
    k: usize,
    m: usize,
    rng: &mut crate::rng::Rng,
) -> Result<LocalHamiltonian> {
    use rand::seq::index::sample;
    use rand::Rng as _;
    if k == 0 || k > n {
        return Err(Error::arg(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    let dim = 1 << k;
    let terms = (0..m)
        .map(|_| {
            let mut support = sample(rng, n, k).into_vec();
            support.sort_unstable();
            let g = CMat::from_fn(dim, dim, |_, _| {
                C64::new(crate::circuit::gauss(rng), crate::circuit::gauss(rng))
            });
            let h = (&g + g.adjoint()) * linalg::c(0.5);
            let h = &h * linalg::c(1.0 / linalg::hermitian_norm(&h));
            LocalTerm::new(support, h, rng.gen_range(0.5..=1.0))
        })
        .collect();
    LocalHamiltonian::new(n, terms)
}

/// Accumulates terms over circuit qubits 0..n and clock qubits n.. .
struct Builder {
    n: usize,
    terms: Vec<LocalTerm>,
}

impl Builder {
    fn clock_support(&self, op: &ClockOp) -> Vec<usize> {
        op.support.iter().map(|q| q + self.n).collect()
    }

    /// coefficient·(A ⊗ op + h.c.) if `hermitize`, else coefficient·(A ⊗ op).
    fn push(
        &mut self,
        kind: TermKind,
        coefficient: f64,
        circ: &[usize],
        a: &CMat,
        op: &CMat,
        clock: Vec<usize>,
        hermitize: bool,
    ) {
        if coefficient == 0.0 {
            return;
        }
        let mut m = linalg::kron(a, op);
        if hermitize {
            m = &m + m.adjoint();
        }
        let mut support = circ.to_vec();
        support.extend(clock);
        self.terms.push(LocalTerm {
            support,
            matrix: m,
            coefficient,
            kind,
        });
    }

    fn clock_only(&mut self, kind: TermKind, coefficient: f64, op: &ClockOp, hermitize: bool) {
        let s = self.clock_support(op);
        self.push(
            kind,
            coefficient,
            &[],
            &CMat::identity(1, 1),
            &op.matrix(),
            s,
            hermitize,
        );
    }
}

fn proj(bit: usize) -> CMat {
    linalg::ket_bra(bit, bit, 2)
}

fn check_canonical(k: &Canonical) -> Result<()> {
    let p = &k.params;
    let gates = &k.circuit.gates;
    if gates.len() != p.t_max {
        return Err(Error::NotCanonical(format!(
            "{} gates for T = {}",
            gates.len(),
            p.t_max
        )));
    }
    for (i, g) in gates.iter().enumerate() {
        let t = i + 1;
        let is_cz = g.kind == GateKind::ControlledZ;
        if is_cz != p.two_qubit_slots.contains(&t) {
            return Err(Error::NotCanonical(format!("slot {t} holds {:?}", g.kind)));
        }
        if !is_cz && !g.kind.is_single() {
            return Err(Error::NotCanonical(format!("slot {t} holds {:?}", g.kind)));
        }
        if p.dummy_slots.contains(&t) && g.kind != GateKind::Identity {
            return Err(Error::NotCanonical(format!(
                "dummy slot {t} holds {:?}",
                g.kind
            )));
        }
        if is_cz && (t < 4 || t + 2 > p.t_max) {
            return Err(Error::NotCanonical(format!(
                "H_time window of slot {t} leaves [0, {}]",
                p.t_max
            )));
        }
    }
    Ok(())
}

/// Assembles α_in H_in + α_out H_out + α_A Σ H_prop + α_B Σ (H_qubit + H_time)
/// + α_clock H_clock with the schedule implied by the canonical parameters.
pub fn circuit_to_hamiltonian(
    k: &Canonical,
    coeffs: &CoefficientSet,
) -> Result<(LocalHamiltonian, ClockSchedule)> {
    check_canonical(k)?;
    let p = &k.params;
    coeffs.validate(p.t_max)?;
    let schedule = ClockSchedule::for_params(p.d, p.a, p.t_max)?;
    let c = &k.circuit;
    let n = c.width;
    let big_t = p.t_max;
    let mut b = Builder {
        n,
        terms: Vec::new(),
    };
    let one = CMat::identity(1, 1);
    let op = |role: Role, t: usize| schedule.op(role, t);

    let stay0 = op(Role::Stay, 0)?;
    for i in c.proof_size..n {
        let s = b.clock_support(&stay0);
        b.push(
            TermKind::In,
            coeffs.alpha_in,
            &[i],
            &proj(1),
            &stay0.matrix(),
            s,
            false,
        );
    }
    let stay_t = op(Role::Stay, big_t)?;
    let s = b.clock_support(&stay_t);
    b.push(
        TermKind::Out,
        coeffs.alpha_out,
        &[c.out_index],
        &proj(0),
        &stay_t.matrix(),
        s,
        false,
    );

    for (i, g) in c.gates.iter().enumerate() {
        let t = i + 1;
        let add = op(Role::Add, t - 1)?;
        if g.kind == GateKind::ControlledZ {
            let (f, sq) = (g.qubits[0], g.qubits[1]);
            let a = coeffs.alpha_b;
            for q in [f, sq] {
                let s = b.clock_support(&add);
                let m = proj(0) * linalg::c(-1.0) + proj(1) * linalg::c(0.5);
                b.push(TermKind::Qubit, a, &[q], &m, &add.matrix(), s, true);
            }
            let w = a / 8.0;
            for (t2, weight) in [
                (t, 1.0),
                (t + 1, 6.0),
                (t + 2, 1.0),
                (t - 3, 1.0),
                (t - 2, 6.0),
                (t - 1, 1.0),
            ] {
                b.clock_only(TermKind::Time, w * weight, &op(Role::Stay, t2)?, false);
            }
            for t2 in [t, t - 1] {
                b.clock_only(TermKind::Time, 2.0 * w, &op(Role::Add2, t2)?, true);
            }
            for t2 in [t, t + 1, t - 3, t - 1] {
                b.clock_only(TermKind::Time, w, &op(Role::Add, t2)?, true);
            }
        } else {
            let a = coeffs.alpha_a / 2.0;
            b.clock_only(TermKind::Prop, a, &op(Role::Stay, t)?, false);
            b.clock_only(TermKind::Prop, a, &op(Role::Stay, t - 1)?, false);
            let s = b.clock_support(&add);
            let neg = add.matrix().map(|z| -z);
            if g.kind == GateKind::Identity {
                b.push(TermKind::Prop, a, &[], &one, &neg, s, true);
            } else {
                b.push(
                    TermKind::Prop,
                    a,
                    &[g.qubits[0]],
                    &g.matrix(),
                    &neg,
                    s,
                    true,
                );
            }
        }
    }

    for term in build_h_clock(&schedule) {
        b.terms.push(LocalTerm {
            support: term.support.iter().map(|q| q + n).collect(),
            matrix: term.matrix,
            coefficient: term.coefficient * coeffs.alpha_clock,
            kind: TermKind::Clock,
        });
    }
    let width = n + schedule.width();
    Ok((LocalHamiltonian::new(width, b.terms)?, schedule))
}

/// (T+1)^{-1/2} Σ_t U_t…U_1|ψ,0⟩ ⊗ |γ_t⟩ over circuit⊗clock.
pub fn history_state(
    k: &Canonical,
    schedule: &ClockSchedule,
    proof: &StateVector,
) -> Result<StateVector> {
    let c = &k.circuit;
    if proof.width != c.proof_size {
        return Err(Error::Mismatch {
            what: "proof state width",
            expected: c.proof_size,
            got: proof.width,
        });
    }
    if schedule.t_max() != c.gates.len() {
        return Err(Error::Mismatch {
            what: "clock length",
            expected: c.gates.len(),
            got: schedule.t_max(),
        });
    }
    let cw = schedule.width();
    let width = c.width + cw;
    if width > LANCZOS_GUARD {
        return Err(Error::Guard {
            what: "history state width",
            value: width,
            limit: LANCZOS_GUARD,
        });
    }
    let mut state = vec![C64::new(0.0, 0.0); 1 << c.width];
    for (x, a) in proof.amps.iter().enumerate() {
        state[x << c.ancilla_size] = *a;
    }
    let norm = 1.0 / ((c.gates.len() + 1) as f64).sqrt();
    let mut out = vec![C64::new(0.0, 0.0); 1 << width];
    let gates: Vec<&Gate> = c.gates.iter().collect();
    for t in 0..=gates.len() {
        if t > 0 {
            apply_gate(&mut state, c.width, gates[t - 1]);
        }
        let g = schedule.legal_index(t)?;
        for (x, a) in state.iter().enumerate() {
            out[(x << cw) | g] += a * norm;
        }
    }
    StateVector::from_amps(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{canonicalize_for_construction, Circuit};

    fn ones(n: usize) -> LocalHamiltonian {
        let terms = (0..n)
            .map(|q| LocalTerm::new(vec![q], proj(1), 1.0))
            .collect();
        LocalHamiltonian::new(n, terms).unwrap()
    }

    #[test]
    fn single_projector_kills_zero_state() {
        let h = ones(1);
        let v = vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        assert!(h.apply(&v).unwrap().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn dense_bit_order() {
        let h = LocalHamiltonian::new(2, vec![LocalTerm::new(vec![1], proj(1), 1.0)]).unwrap();
        let d = h.to_dense().unwrap();
        let diag: Vec<f64> = (0..4).map(|i| d[(i, i)].re).collect();
        assert_eq!(diag, vec![0.0, 1.0, 0.0, 1.0]);
    }

    #[test]
    fn empty_and_identity() {
        let z = LocalHamiltonian::new(2, vec![]).unwrap();
        assert_eq!(z.to_dense().unwrap(), CMat::zeros(4, 4));
        let id = LocalHamiltonian::new(2, vec![LocalTerm::new(vec![], CMat::identity(1, 1), 1.0)])
            .unwrap();
        assert_eq!(id.to_dense().unwrap(), CMat::identity(4, 4));
    }

    #[test]
    fn rejects_non_hermitian() {
        let t = LocalTerm::new(vec![0], linalg::ket_bra(1, 0, 2), 1.0);
        assert!(LocalHamiltonian::new(1, vec![t]).is_err());
    }

    #[test]
    fn identity_circuit_localities() {
        let c = Circuit::new(1, 0, 0).with_gates(vec![Gate::id(0); 3]);
        for (d, want) in [(1, 2), (2, 3)] {
            let k = canonicalize_for_construction(&c, d).unwrap();
            let (h, _) =
                circuit_to_hamiltonian(&k, &CoefficientSet::for_t(k.params.t_max)).unwrap();
            assert_eq!(h.locality(), want, "d = {d}");
        }
    }

    #[test]
    fn history_is_in_prop_kernel() {
        let c = Circuit::new(0, 1, 0).with_gates(vec![Gate::x(0)]);
        for d in [1, 2] {
            let k = canonicalize_for_construction(&c, d).unwrap();
            let (h, s) =
                circuit_to_hamiltonian(&k, &CoefficientSet::for_t(k.params.t_max)).unwrap();
            let hist = history_state(&k, &s, &StateVector::basis(0, 0)).unwrap();
            assert!((hist.norm_sqr() - 1.0).abs() < 1e-12);
            let e = h.part(TermKind::Prop).expectation(&hist.amps).unwrap();
            assert!(e.abs() < 1e-12, "d = {d}: {e}");
            let e = h.part(TermKind::Clock).expectation(&hist.amps).unwrap();
            assert!(e.abs() < 1e-12);
        }
    }

    #[test]
    fn json_round_trip() {
        let c = Circuit::new(1, 1, 1).with_gates(vec![Gate::cnot(0, 1)]);
        let k = canonicalize_for_construction(&c, 1).unwrap();
        let (h, _) = circuit_to_hamiltonian(&k, &CoefficientSet::for_t(k.params.t_max)).unwrap();
        let back = LocalHamiltonian::from_json(&h.to_json().unwrap()).unwrap();
        assert_eq!(h, back);
    }
}
