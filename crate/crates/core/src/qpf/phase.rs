//! Phase estimation on emulated registers, and energy estimation built on it.

use std::f64::consts::PI;

use rand::Rng as _;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::evolution::{hamiltonian_evolution, EvolutionBackend};
use super::normalize::NormalizedHamiltonian;
use crate::error::{Error, Result};
use crate::rng::Rng;
use crate::{linalg, C64};

/// Largest joint register ⊗ system dimension, as a power of two.
pub const PHASE_GUARD: usize = 24;

const EIGEN_TOL: f64 = 1e-8;

/// Outcome distribution of an r-bit phase register; outcome m stands for
/// the phase 2πm/2^r.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseDistribution {
    pub r: usize,
    pub probs: Vec<f64>,
}

impl PhaseDistribution {
    pub fn phase(&self, m: usize) -> f64 {
        2.0 * PI * m as f64 / (1usize << self.r) as f64
    }

    pub fn sample_index(&self, rng: &mut Rng) -> usize {
        let u: f64 = rng.gen::<f64>() * self.probs.iter().sum::<f64>();
        let mut acc = 0.0;
        for (m, p) in self.probs.iter().enumerate() {
            acc += p;
            if u < acc {
                return m;
            }
        }
        self.probs.len() - 1
    }

    /// A sampled phase in [0, 2π).
    pub fn sample(&self, rng: &mut Rng) -> f64 {
        self.phase(self.sample_index(rng))
    }

    /// Probability that the outcome lies within `tol` of `theta` on the circle.
    pub fn mass_within(&self, theta: f64, tol: f64) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .filter(|&(m, _)| circle_distance(self.phase(m), theta) <= tol)
            .map(|(_, p)| p)
            .sum()
    }
}

pub fn circle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

fn check_size(r: usize, dim: usize) -> Result<()> {
    let bits = r + dim.trailing_zeros() as usize;
    if r == 0 || !dim.is_power_of_two() || bits > PHASE_GUARD {
        return Err(Error::Guard {
            what: "phase register + system qubits",
            value: bits,
            limit: PHASE_GUARD,
        });
    }
    Ok(())
}

/// Phase estimation of an eigenstate. `power(p, v)` must return U^p v.
/// Fails when `state` is not an eigenvector of U to within 1e-8.
pub fn phase_estimate<F>(power: F, state: &[C64], r: usize) -> Result<PhaseDistribution>
where
    F: Fn(usize, &[C64]) -> Vec<C64>,
{
    check_size(r, state.len())?;
    let u = power(1, state);
    let lam = linalg::inner(state, &u);
    let res = u
        .iter()
        .zip(state)
        .map(|(a, b)| (a - lam * b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    if res > EIGEN_TOL {
        return Err(Error::arg(format!(
            "input is not an eigenstate (residual {res:.2e})"
        )));
    }
    phase_estimate_mixed(power, state, r)
}

/// Register distribution for an arbitrary input: the weighted mixture of
/// the eigenphase distributions.
pub fn phase_estimate_mixed<F>(power: F, state: &[C64], r: usize) -> Result<PhaseDistribution>
where
    F: Fn(usize, &[C64]) -> Vec<C64>,
{
    check_size(r, state.len())?;
    let n = 1usize << r;
    let dim = state.len();
    let mut rows = Vec::with_capacity(n * dim);
    let mut cur = state.to_vec();
    for x in 0..n {
        if x > 0 {
            cur = power(1, &cur);
        }
        rows.extend_from_slice(&cur);
    }
    let fft = FftPlanner::<f64>::new().plan_fft_forward(n);
    let mut col = vec![C64::new(0.0, 0.0); n];
    let mut probs = vec![0.0; n];
    let norm = 1.0 / (n as f64 * n as f64);
    for s in 0..dim {
        for x in 0..n {
            col[x] = rows[x * dim + s];
        }
        fft.process(&mut col);
        for (p, z) in probs.iter_mut().zip(&col) {
            *p += z.norm_sqr() * norm;
        }
    }
    Ok(PhaseDistribution { r, probs })
}

/// Lower median; NaN entries are rejected.
pub fn median_amplify(values: &[f64]) -> Result<f64> {
    if values.is_empty() || values.iter().any(|v| v.is_nan()) {
        return Err(Error::arg("median of an empty or NaN list"));
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    Ok(v[(v.len() - 1) / 2])
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyEstimationParams {
    pub delta_e: f64,
    /// Accuracy bits ⌈log₂(2π/δE)⌉.
    pub b: usize,
    /// Register size b + 2.
    pub r: usize,
    pub m_rep: usize,
}

impl EnergyEstimationParams {
    pub fn new(delta_e: f64, m_rep: usize) -> Result<Self> {
        if !(delta_e > 0.0 && delta_e < 1.0) || m_rep == 0 {
            return Err(Error::arg("need 0 < δE < 1 and at least one repetition"));
        }
        let b = (2.0 * PI / delta_e).log2().ceil() as usize;
        Ok(EnergyEstimationParams {
            delta_e,
            b,
            r: b + 2,
            m_rep,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyBackend {
    /// Emulated phase estimation of e^{2πiH′}.
    Exact,
    /// E + U[−δE, δE].
    Oracle,
}

/// Register outcome m ↦ energy m/2^r, with values past the midpoint of
/// (upper, 1) wrapped to negative energies.
pub fn outcome_energy(m: usize, r: usize, upper: f64) -> f64 {
    let e = m as f64 / (1usize << r) as f64;
    if e >= (1.0 + upper) / 2.0 {
        e - 1.0
    } else {
        e
    }
}

/// Estimate of the energy of an eigenstate of H′.
pub fn energy_estimate(
    h: &NormalizedHamiltonian,
    state: &[C64],
    params: &EnergyEstimationParams,
    backend: EnergyBackend,
    rng: &mut Rng,
) -> Result<f64> {
    match backend {
        EnergyBackend::Exact => {
            let evo = hamiltonian_evolution(&h.h, -2.0 * PI, EvolutionBackend::Exact)?;
            let dist = phase_estimate(|p, v| evo.apply_power(p, v), state, params.r)?;
            let samples: Vec<f64> = (0..params.m_rep)
                .map(|_| outcome_energy(dist.sample_index(rng), params.r, h.upper))
                .collect();
            median_amplify(&samples)
        }
        EnergyBackend::Oracle => {
            let hv = h.h.apply(state)?;
            let e = linalg::inner(state, &hv).re / linalg::norm_sqr(state);
            let res = hv
                .iter()
                .zip(state)
                .map(|(a, b)| (a - b * e).norm_sqr())
                .sum::<f64>()
                .sqrt();
            if res > EIGEN_TOL {
                return Err(Error::arg(format!(
                    "input is not an eigenstate (residual {res:.2e})"
                )));
            }
            Ok(e + params.delta_e * rng.gen_range(-1.0..=1.0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{LocalHamiltonian, LocalTerm};
    use crate::linalg::ket_bra;
    use crate::rng;

    fn phase_gate(theta: f64) -> impl Fn(usize, &[C64]) -> Vec<C64> {
        move |p, v| {
            let mut out = v.to_vec();
            out[1] *= C64::from_polar(1.0, theta * p as f64);
            out
        }
    }

    #[test]
    fn exact_phase_is_a_point_mass() {
        let theta = 2.0 * PI * 5.0 / 16.0;
        let one = [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
        let d = phase_estimate(phase_gate(theta), &one, 4).unwrap();
        assert!((d.probs[5] - 1.0).abs() < 1e-12);
        assert!((d.probs.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn non_eigenstate_is_rejected() {
        let plus = [C64::new(0.5f64.sqrt(), 0.0), C64::new(0.5f64.sqrt(), 0.0)];
        assert!(phase_estimate(phase_gate(1.0), &plus, 4).is_err());
        let d = phase_estimate_mixed(phase_gate(PI), &plus, 3).unwrap();
        assert!((d.probs[0] - 0.5).abs() < 1e-12 && (d.probs[4] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn wraparound_mass() {
        let d = PhaseDistribution {
            r: 2,
            probs: vec![0.5, 0.0, 0.0, 0.5],
        };
        assert!((d.mass_within(2.0 * PI - 0.1, PI / 2.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn median_examples() {
        assert_eq!(median_amplify(&[0.1, 0.9, 0.1]).unwrap(), 0.1);
        assert_eq!(median_amplify(&[3.0, 1.0, 2.0, 4.0]).unwrap(), 2.0);
        assert!(median_amplify(&[]).is_err());
    }

    #[test]
    fn energy_of_exact_dyadic_eigenvalue() {
        let h = LocalHamiltonian::new(1, vec![LocalTerm::new(vec![0], ket_bra(1, 1, 2), 0.25)])
            .unwrap();
        let nh = NormalizedHamiltonian::assume_normalized(h).unwrap();
        let p = EnergyEstimationParams::new(1.0 / 64.0, 3).unwrap();
        assert_eq!((p.b, p.r), (9, 11));
        let one = [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
        let mut r = rng::seeded(0);
        let e = energy_estimate(&nh, &one, &p, EnergyBackend::Exact, &mut r).unwrap();
        assert!((e - 0.25).abs() < 1e-12);
        let e = energy_estimate(&nh, &one, &p, EnergyBackend::Oracle, &mut r).unwrap();
        assert!((e - 0.25).abs() <= p.delta_e);
    }
}
