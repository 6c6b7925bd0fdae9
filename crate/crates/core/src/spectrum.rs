//! Ground energies, partition functions and the LH decision.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::circuit::gauss;
use crate::error::{Error, Result};
use crate::hamiltonian::LocalHamiltonian;
use crate::linalg;
use crate::{rng, C64, DENSE_GUARD, LANCZOS_GUARD};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Dense,
    Lanczos,
    /// Dense up to the dense guard, Lanczos beyond.
    Auto,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub lambda: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<f64>>,
    pub method: Method,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub e_yes: f64,
    pub e_no: f64,
}

impl Thresholds {
    pub fn new(e_yes: f64, e_no: f64) -> Result<Self> {
        if !(e_no > e_yes) {
            return Err(Error::arg(format!(
                "need E_no > E_yes, got ({e_yes}, {e_no})"
            )));
        }
        Ok(Thresholds { e_yes, e_no })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Decision {
    Yes,
    No,
    Indeterminate,
}

fn dense_guard(h: &LocalHamiltonian) -> Result<()> {
    if h.width() > DENSE_GUARD {
        return Err(Error::Guard {
            what: "dense width",
            value: h.width(),
            limit: DENSE_GUARD,
        });
    }
    Ok(())
}

/// Full spectrum, ascending.
pub fn spectrum(h: &LocalHamiltonian) -> Result<Vec<f64>> {
    dense_guard(h)?;
    if h.is_diagonal() {
        let mut d = h.diagonal()?;
        d.sort_by(f64::total_cmp);
        return Ok(d);
    }
    Ok(linalg::eigh(&h.to_dense()?).values)
}

pub fn ground_energy_dense(h: &LocalHamiltonian) -> Result<SpectrumReport> {
    let values = spectrum(h)?;
    Ok(SpectrumReport {
        lambda: values[0],
        eigenvalues: Some(values),
        method: Method::Dense,
        residual: 0.0,
        iterations: 0,
        converged: true,
    })
}

/// Lanczos with full reorthogonalization from a seeded random start.
/// Non-convergence is reported through `converged` and `residual`.
pub fn ground_energy_lanczos(
    h: &LocalHamiltonian,
    max_iters: usize,
    tol: f64,
    seed: u64,
) -> Result<SpectrumReport> {
    if h.width() > LANCZOS_GUARD {
        return Err(Error::Guard {
            what: "Lanczos width",
            value: h.width(),
            limit: LANCZOS_GUARD,
        });
    }
    let dim = 1usize << h.width();
    let steps = max_iters.clamp(1, dim);
    let mut r = rng::stream(seed, &[0x1a2c]);
    let mut v: Vec<C64> = (0..dim)
        .map(|_| C64::new(gauss(&mut r), gauss(&mut r)))
        .collect();
    normalize(&mut v);

    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(steps);
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut best = (f64::INFINITY, f64::INFINITY, Vec::new());
    let mut iterations = 0;

    for j in 0..steps {
        iterations = j + 1;
        let mut w = h.apply(&v)?;
        let a = linalg::inner(&v, &w).re;
        basis.push(v);
        alpha.push(a);
        for _ in 0..2 {
            for b in &basis {
                let p = linalg::inner(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= p * bi;
                }
            }
        }
        let bnorm = linalg::norm_sqr(&w).sqrt();

        let (theta, s) = smallest_ritz(&alpha, &beta);
        let est = bnorm * s[j].abs();
        best = (theta, est, s);
        if est <= tol || bnorm <= 1e-14 * (1.0 + theta.abs()) {
            break;
        }
        beta.push(bnorm);
        v = w.into_iter().map(|z| z / bnorm).collect();
    }

    let (theta, _, s) = best;
    let mut x = vec![C64::new(0.0, 0.0); dim];
    for (b, &c) in basis.iter().zip(&s) {
        for (xi, bi) in x.iter_mut().zip(b) {
            *xi += bi * c;
        }
    }
    normalize(&mut x);
    let hx = h.apply(&x)?;
    let residual = hx
        .iter()
        .zip(&x)
        .map(|(a, b)| (a - b * theta).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(SpectrumReport {
        lambda: theta,
        eigenvalues: None,
        method: Method::Lanczos,
        residual,
        iterations,
        converged: residual <= tol.max(1e-12),
    })
}

fn normalize(v: &mut [C64]) {
    let n = linalg::norm_sqr(v).sqrt();
    v.iter_mut().for_each(|z| *z /= n);
}

/// Smallest eigenpair of the tridiagonal matrix (alpha, beta).
fn smallest_ritz(alpha: &[f64], beta: &[f64]) -> (f64, Vec<f64>) {
    let m = alpha.len();
    let t = DMatrix::from_fn(m, m, |i, j| {
        if i == j {
            alpha[i]
        } else if i + 1 == j {
            beta[i]
        } else if j + 1 == i {
            beta[j]
        } else {
            0.0
        }
    });
    let e = SymmetricEigen::new(t);
    let k = (0..m)
        .min_by(|&a, &b| e.eigenvalues[a].total_cmp(&e.eigenvalues[b]))
        .unwrap_or(0);
    (
        e.eigenvalues[k],
        e.eigenvectors.column(k).iter().copied().collect(),
    )
}

pub fn ground_energy(h: &LocalHamiltonian, method: Method, seed: u64) -> Result<SpectrumReport> {
    match method {
        Method::Dense => ground_energy_dense(h),
        Method::Lanczos => ground_energy_lanczos(h, 300, 1e-9, seed),
        Method::Auto if h.width() <= DENSE_GUARD => ground_energy_dense(h),
        Method::Auto => ground_energy_lanczos(h, 300, 1e-9, seed),
    }
}

/// Z = Σ_j e^{−βE_j}.
pub fn exact_partition_function(h: &LocalHamiltonian, beta: f64) -> Result<f64> {
    if !(beta >= 0.0) {
        return Err(Error::arg(format!("β must be nonnegative, got {beta}")));
    }
    Ok(partition_from_spectrum(&spectrum(h)?, beta))
}

pub fn partition_from_spectrum(values: &[f64], beta: f64) -> f64 {
    values.iter().map(|e| (-beta * e).exp()).sum()
}

/// ln Σ_j e^{−βE_j}, stable for large β·E.
pub fn ln_partition_from_spectrum(values: &[f64], beta: f64) -> f64 {
    let m = values.iter().fold(f64::INFINITY, |a, &e| a.min(e));
    -beta * m
        + values
            .iter()
            .map(|e| (-beta * (e - m)).exp())
            .sum::<f64>()
            .ln()
}

/// Classifies λ given an uncertainty of `residual`.
pub fn classify(lambda: f64, residual: f64, t: &Thresholds) -> Decision {
    if lambda + residual <= t.e_yes {
        Decision::Yes
    } else if lambda - residual >= t.e_no {
        Decision::No
    } else {
        Decision::Indeterminate
    }
}

pub fn decide_lh(
    h: &LocalHamiltonian,
    thresholds: &Thresholds,
    method: Method,
) -> Result<(Decision, SpectrumReport)> {
    let report = ground_energy(h, method, 0)?;
    let residual = if report.method == Method::Dense {
        0.0
    } else {
        report.residual
    };
    Ok((classify(report.lambda, residual, thresholds), report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::LocalTerm;
    use crate::linalg::{binomial, ket_bra, CMat};

    fn ones(n: usize) -> LocalHamiltonian {
        let terms = (0..n)
            .map(|q| LocalTerm::new(vec![q], ket_bra(1, 1, 2), 1.0))
            .collect();
        LocalHamiltonian::new(n, terms).unwrap()
    }

    #[test]
    fn product_spectrum() {
        let r = ground_energy_dense(&ones(4)).unwrap();
        assert_eq!(r.lambda, 0.0);
        let ev = r.eigenvalues.unwrap();
        for k in 0..=4 {
            let count = ev.iter().filter(|&&e| e == k as f64).count();
            assert_eq!(count, binomial(4, k));
        }
    }

    #[test]
    fn partition_functions() {
        let z = LocalHamiltonian::new(3, vec![]).unwrap();
        assert_eq!(exact_partition_function(&z, 2.0).unwrap(), 8.0);
        let b = 0.7;
        let got = exact_partition_function(&ones(3), b).unwrap();
        assert!((got - (1.0 + (-b as f64).exp()).powi(3)).abs() < 1e-12);
        assert_eq!(exact_partition_function(&ones(3), 0.0).unwrap(), 8.0);
    }

    #[test]
    fn lanczos_on_scaled_identity() {
        let h = LocalHamiltonian::new(4, vec![LocalTerm::new(vec![], CMat::identity(1, 1), 2.5)])
            .unwrap();
        let r = ground_energy_lanczos(&h, 50, 1e-10, 3).unwrap();
        assert!((r.lambda - 2.5).abs() < 1e-10);
        assert!(r.converged);
    }

    #[test]
    fn mid_gap_is_indeterminate() {
        let t = Thresholds::new(0.25, 0.75).unwrap();
        assert_eq!(classify(0.5, 0.0, &t), Decision::Indeterminate);
        assert_eq!(classify(0.1, 0.0, &t), Decision::Yes);
        assert_eq!(classify(0.9, 0.0, &t), Decision::No);
        assert!(Thresholds::new(1.0, 1.0).is_err());
    }
}
