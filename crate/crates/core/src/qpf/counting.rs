//! Eigenvalue counting: EPR/Choi state, amplitude estimation and the
//! per-interval counting backends.

use std::f64::consts::PI;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::evolution::{hamiltonian_evolution, EvolutionBackend};
use super::normalize::NormalizedHamiltonian;
use super::phase::{
    median_amplify, outcome_energy, phase_estimate_mixed, PhaseDistribution, PHASE_GUARD,
};
use crate::circuit::StateVector;
use crate::error::{Error, Result};
use crate::linalg::{self, CMat};
use crate::rng::{self, Rng};
use crate::spectrum::spectrum;
use crate::C64;

/// System-size guard for the statevector counting backend.
pub const STATEVECTOR_SYSTEM_GUARD: usize = 6;

/// 2^{−n/2} Σ_k |k⟩|k⟩ on 2n qubits, system register first.
pub fn epr_state(n: usize) -> Result<StateVector> {
    if 2 * n > PHASE_GUARD {
        return Err(Error::Guard {
            what: "EPR width",
            value: 2 * n,
            limit: PHASE_GUARD,
        });
    }
    let d = 1usize << n;
    let mut amps = vec![C64::new(0.0, 0.0); d * d];
    let a = (d as f64).powf(-0.5);
    for k in 0..d {
        amps[(k << n) | k] = C64::new(a, 0.0);
    }
    Ok(StateVector { width: 2 * n, amps })
}

/// Applies `u` to the system half of a 2n-qubit state.
pub fn apply_system(u: &CMat, amps: &[C64]) -> Vec<C64> {
    let d = u.nrows();
    let mut out = vec![C64::new(0.0, 0.0); amps.len()];
    for i in 0..d {
        for k in 0..d {
            let uik = u[(i, k)];
            if uik == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..d {
                out[i * d + j] += uik * amps[k * d + j];
            }
        }
    }
    out
}

/// max |((U ⊗ I)|EPR⟩)_{ij} − U_ij/√D|.
pub fn choi_deviation(u: &CMat) -> Result<f64> {
    let d = u.nrows();
    if !d.is_power_of_two() || u.ncols() != d {
        return Err(Error::arg(
            "unitary must be square with power-of-two dimension",
        ));
    }
    let n = d.trailing_zeros() as usize;
    let epr = epr_state(n)?;
    let v = linalg::kron(u, &linalg::identity(d)) * nalgebra::DVector::from_column_slice(&epr.amps);
    let s = (d as f64).sqrt();
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            worst = worst.max((v[i * d + j] - u[(i, j)] / s).norm());
        }
    }
    Ok(worst)
}

/// Register size ⌈n/2⌉ + ⌈c·log₂n⌉ + 3.
pub fn grover_register_bits(n: usize, c: u32) -> usize {
    let lg = (n.max(1) as f64).log2();
    n.div_ceil(2) + (c as f64 * lg).ceil() as usize + 3
}

/// A prepared state A|0⟩ whose marked part is flagged by `flag`.
/// `population` converts a marked fraction into a count.
#[derive(Clone, Debug)]
pub struct MarkedPreparer {
    pub state: Vec<C64>,
    pub flag: usize,
    pub population: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeEstimate {
    /// Estimated marked probability of the prepared state.
    pub fraction: f64,
    /// fraction × population.
    pub count: f64,
    pub register_bits: usize,
    pub samples: Vec<f64>,
}

/// Amplitude estimation with the Grover iterate emulated on the full state.
/// With `extra_qubit` a |+⟩ qubit joins the marking, halving the amplitude.
pub fn amplitude_estimate(
    prep: &MarkedPreparer,
    register_bits: usize,
    extra_qubit: bool,
    reps: usize,
    rng: &mut Rng,
) -> Result<AmplitudeEstimate> {
    let width = prep.state.len().trailing_zeros() as usize;
    if !prep.state.len().is_power_of_two() || prep.flag >= width {
        return Err(Error::arg("preparer state size or flag qubit invalid"));
    }
    let norm = linalg::norm_sqr(&prep.state);
    if (norm - 1.0).abs() > StateVector::NORM_TOL {
        return Err(Error::arg(format!("prepared state has norm² {norm}")));
    }
    let psi: Vec<C64> = if extra_qubit {
        let h = C64::new(0.5f64.sqrt(), 0.0);
        prep.state.iter().flat_map(|a| [a * h, a * h]).collect()
    } else {
        prep.state.clone()
    };
    let total = width + extra_qubit as usize;
    let fshift = total - 1 - prep.flag;
    let marked = move |i: usize| (i >> fshift) & 1 == 1 && (!extra_qubit || i & 1 == 1);
    let grover = |p: usize, v: &[C64]| {
        let mut cur = v.to_vec();
        for _ in 0..p {
            for (i, a) in cur.iter_mut().enumerate() {
                if marked(i) {
                    *a = -*a;
                }
            }
            let ip = linalg::inner(&psi, &cur);
            for (a, s) in cur.iter_mut().zip(&psi) {
                *a = 2.0 * ip * s - *a;
            }
        }
        cur
    };
    let dist = phase_estimate_mixed(grover, &psi, register_bits)?;
    let t = (1usize << register_bits) as f64;
    let scale = if extra_qubit { 2.0 } else { 1.0 };
    let samples: Vec<f64> = (0..reps.max(1))
        .map(|_| scale * (PI * dist.sample_index(rng) as f64 / t).sin().powi(2))
        .collect();
    let fraction = median_amplify(&samples)?;
    Ok(AmplitudeEstimate {
        fraction,
        count: fraction * prep.population,
        register_bits,
        samples,
    })
}

/// Noisy count of the oracle backend: eigenvalues inside always count, each
/// leak candidate counts with probability `p_leak`, and the total is scaled
/// by 1 + u·δ_C.
pub fn oracle_count(
    inside: usize,
    candidates: usize,
    p_leak: f64,
    delta_c: f64,
    rng: &mut Rng,
) -> f64 {
    let leaked = (0..candidates).filter(|_| rng.gen_bool(p_leak)).count();
    let m = inside + leaked;
    if m == 0 {
        return 0.0;
    }
    m as f64 * (1.0 + delta_c * rng.gen_range(-1.0..=1.0))
}

/// Inside count and leak candidates of [lo, hi) over a sorted spectrum.
pub fn interval_tally(sorted: &[f64], lo: f64, hi: f64, delta_e: f64) -> (usize, usize) {
    let at = |x: f64| sorted.partition_point(|&e| e < x);
    let inside = at(hi) - at(lo);
    let below = at(lo) - at(lo - delta_e);
    let above = at(hi + delta_e) - at(hi);
    (inside, below + above)
}

/// Register distribution from phase estimation of e^{2πiH′} on the system
/// half of the EPR state, tabulated by decoded energy.
#[derive(Clone, Debug)]
pub struct EprRegister {
    pub n: usize,
    pub dist: PhaseDistribution,
    energies: Vec<f64>,
    prefix: Vec<f64>,
}

impl EprRegister {
    pub fn new(h: &NormalizedHamiltonian, r: usize) -> Result<Self> {
        let n = h.h.width();
        if n > STATEVECTOR_SYSTEM_GUARD {
            return Err(Error::Guard {
                what: "statevector system width",
                value: n,
                limit: STATEVECTOR_SYSTEM_GUARD,
            });
        }
        if r + 2 * n > PHASE_GUARD {
            return Err(Error::Guard {
                what: "register + EPR qubits",
                value: r + 2 * n,
                limit: PHASE_GUARD,
            });
        }
        let evo = hamiltonian_evolution(&h.h, -2.0 * PI, EvolutionBackend::Exact)?;
        let d = 1usize << n;
        let u = CMat::from_fn(d, d, |i, j| {
            let mut e = vec![C64::new(0.0, 0.0); d];
            e[j] = C64::new(1.0, 0.0);
            evo.apply(&e)[i]
        });
        let epr = epr_state(n)?;
        let dist = phase_estimate_mixed(
            |p, v| (0..p).fold(v.to_vec(), |acc, _| apply_system(&u, &acc)),
            &epr.amps,
            r,
        )?;
        let mut pairs: Vec<(f64, f64)> = dist
            .probs
            .iter()
            .enumerate()
            .map(|(m, &p)| (outcome_energy(m, r, h.upper), p))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let energies = pairs.iter().map(|p| p.0).collect();
        let mut prefix = vec![0.0];
        for (_, p) in &pairs {
            prefix.push(prefix.last().unwrap() + p);
        }
        Ok(EprRegister {
            n,
            dist,
            energies,
            prefix,
        })
    }

    /// Probability that the decoded energy lies in [lo, hi).
    pub fn mass(&self, lo: f64, hi: f64) -> f64 {
        let a = self.energies.partition_point(|&e| e < lo);
        let b = self.energies.partition_point(|&e| e < hi);
        (self.prefix[b] - self.prefix[a]).max(0.0)
    }

    /// Amplitude estimation of the interval probability p with the extra
    /// qubit, sampled from the exact two-dimensional Grover dynamics.
    pub fn count(&self, p: f64, register_bits: usize, reps: usize, rng: &mut Rng) -> Result<f64> {
        let d = (1usize << self.n) as f64;
        if p <= 0.0 {
            return Ok(0.0);
        }
        let samples: Vec<f64> = (0..reps.max(1))
            .map(|_| 2.0 * ae_sample(p / 2.0, register_bits, rng))
            .collect();
        Ok(median_amplify(&samples)? * d)
    }
}

/// Fejér kernel |2^{−t} Σ_x e^{2πixΔ}|².
fn fejer(delta: f64, t: usize) -> f64 {
    let n = (1usize << t) as f64;
    let s = (PI * delta).sin();
    if s.abs() < 1e-12 {
        1.0
    } else {
        ((PI * n * delta).sin() / (n * s)).powi(2)
    }
}

/// One amplitude-estimation outcome sin²(πy/2^t) for marked probability `a`.
pub fn ae_sample(a: f64, t: usize, rng: &mut Rng) -> f64 {
    let theta = a.clamp(0.0, 1.0).sqrt().asin() / PI;
    let n = 1usize << t;
    let probs: Vec<f64> = (0..n)
        .map(|y| {
            let x = y as f64 / n as f64;
            0.5 * (fejer(x - theta, t) + fejer(x + theta, t))
        })
        .collect();
    let dist = PhaseDistribution { r: t, probs };
    (PI * dist.sample_index(rng) as f64 / n as f64)
        .sin()
        .powi(2)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CountBackend {
    Exact,
    Oracle { p_leak: f64 },
    Statevector { register_bits: usize, reps: usize },
}

/// Estimated number of eigenvalues of H′ in [lo, hi).
pub fn count_in_interval(
    h: &NormalizedHamiltonian,
    lo: f64,
    hi: f64,
    delta_c: f64,
    delta_e: f64,
    backend: CountBackend,
    seed: u64,
) -> Result<f64> {
    if !(lo < hi) {
        return Err(Error::arg("empty interval"));
    }
    let mut r = rng::stream(seed, &[0xC0]);
    match backend {
        CountBackend::Exact | CountBackend::Oracle { .. } => {
            let ev = spectrum(&h.h)?;
            let (inside, cands) = interval_tally(&ev, lo, hi, delta_e);
            Ok(match backend {
                CountBackend::Oracle { p_leak } => {
                    oracle_count(inside, cands, p_leak, delta_c, &mut r)
                }
                _ => inside as f64,
            })
        }
        CountBackend::Statevector {
            register_bits,
            reps,
        } => {
            let params = super::phase::EnergyEstimationParams::new(delta_e, 1)?;
            let reg = EprRegister::new(h, params.r)?;
            reg.count(reg.mass(lo, hi), register_bits, reps, &mut r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{LocalHamiltonian, LocalTerm};
    use crate::linalg::ket_bra;

    #[test]
    fn epr_is_normalized() {
        let s = epr_state(3).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        assert!((s.amps[(5 << 3) | 5].re - 8f64.powf(-0.5)).abs() < 1e-15);
        assert_eq!(s.amps[(5 << 3) | 4].norm(), 0.0);
    }

    #[test]
    fn choi_identity_for_random_unitary() {
        let mut r = rng::seeded(4);
        let u = linalg::random_unitary(8, &mut r);
        assert!(choi_deviation(&u).unwrap() < 1e-12);
    }

    #[test]
    fn register_bits_formula() {
        assert_eq!(grover_register_bits(4, 1), 2 + 2 + 3);
        assert_eq!(grover_register_bits(5, 1), 3 + 3 + 3);
    }

    #[test]
    fn tally_counts_edges() {
        let ev = [0.0, 0.09, 0.1, 0.2, 0.29, 0.31];
        assert_eq!(interval_tally(&ev, 0.1, 0.3, 0.02), (3, 2));
    }

    #[test]
    fn amplitude_estimate_recovers_uniform_marks() {
        let n = 4;
        let d = 1usize << n;
        let amp = C64::new((d as f64).powf(-0.5), 0.0);
        // flag = qubit 0, so the upper half of the basis is marked.
        let prep = MarkedPreparer {
            state: vec![amp; d],
            flag: 0,
            population: d as f64,
        };
        let mut r = rng::seeded(5);
        let est = amplitude_estimate(&prep, 8, true, 5, &mut r).unwrap();
        assert!((est.count - 8.0).abs() < 0.5, "{}", est.count);
    }

    #[test]
    fn statevector_count_on_diagonal() {
        let h = LocalHamiltonian::new(
            2,
            vec![
                LocalTerm::new(vec![0], ket_bra(1, 1, 2), 0.5),
                LocalTerm::new(vec![1], ket_bra(1, 1, 2), 0.25),
            ],
        )
        .unwrap();
        let nh = NormalizedHamiltonian::assume_normalized(h).unwrap();
        let be = CountBackend::Statevector {
            register_bits: 9,
            reps: 7,
        };
        let got = count_in_interval(&nh, 0.2, 0.6, 0.1, 1.0 / 64.0, be, 1).unwrap();
        assert!((got - 2.0).abs() < 0.2, "{got}");
        let exact =
            count_in_interval(&nh, 0.2, 0.6, 0.1, 1.0 / 64.0, CountBackend::Exact, 1).unwrap();
        assert_eq!(exact, 2.0);
    }
}
