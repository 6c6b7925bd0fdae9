use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::LocalHamiltonian;
use crate::linalg::{self, CMat};
use crate::{C64, DENSE_GUARD, LANCZOS_GUARD};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvolutionBackend {
    Exact,
    Trotter { steps: usize },
}

#[derive(Clone, Debug)]
enum Kind {
    Exact {
        values: Vec<f64>,
        vectors: CMat,
    },
    Trotter {
        factors: Vec<(Vec<usize>, CMat)>,
        steps: usize,
    },
}

/// The map v ↦ e^{−iHt}v.
#[derive(Clone, Debug)]
pub struct Evolution {
    width: usize,
    t: f64,
    kind: Kind,
    /// Bound on ‖e^{−iHt} − (product formula)‖; 0 for the exact backend.
    pub error_bound: f64,
}

pub fn hamiltonian_evolution(
    h: &LocalHamiltonian,
    t: f64,
    backend: EvolutionBackend,
) -> Result<Evolution> {
    let width = h.width();
    match backend {
        EvolutionBackend::Exact => {
            if width > DENSE_GUARD {
                return Err(Error::Guard {
                    what: "exact evolution width",
                    value: width,
                    limit: DENSE_GUARD,
                });
            }
            let e = linalg::eigh(&h.to_dense()?);
            Ok(Evolution {
                width,
                t,
                kind: Kind::Exact {
                    values: e.values,
                    vectors: e.vectors,
                },
                error_bound: 0.0,
            })
        }
        EvolutionBackend::Trotter { steps } => {
            if width > LANCZOS_GUARD {
                return Err(Error::Guard {
                    what: "Trotter width",
                    value: width,
                    limit: LANCZOS_GUARD,
                });
            }
            if steps == 0 {
                return Err(Error::arg("Trotter needs at least one step"));
            }
            let dt = t / steps as f64;
            let terms = h.terms();
            let factors = terms
                .iter()
                .map(|term| {
                    let m = &term.matrix * linalg::c(term.coefficient);
                    (term.support.clone(), linalg::expm_i(&m, dt))
                })
                .collect();
            let norms: Vec<f64> = terms
                .iter()
                .map(|term| term.coefficient * linalg::hermitian_norm(&term.matrix))
                .collect();
            let mut comm = 0.0;
            for i in 0..terms.len() {
                for j in i + 1..terms.len() {
                    if terms[i]
                        .support
                        .iter()
                        .any(|q| terms[j].support.contains(q))
                    {
                        comm += 2.0 * norms[i] * norms[j];
                    }
                }
            }
            Ok(Evolution {
                width,
                t,
                kind: Kind::Trotter { factors, steps },
                error_bound: t * t / (2.0 * steps as f64) * comm,
            })
        }
    }
}

impl Evolution {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        self.apply_power(1, v)
    }

    /// (e^{−iHt})^p v.
    pub fn apply_power(&self, p: usize, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), 1 << self.width, "state length");
        match &self.kind {
            Kind::Exact { values, vectors } => {
                let x = nalgebra::DVector::from_column_slice(v);
                let mut y = vectors.adjoint() * x;
                for (yi, e) in y.iter_mut().zip(values) {
                    *yi *= C64::from_polar(1.0, -self.t * p as f64 * e);
                }
                (vectors * y).as_slice().to_vec()
            }
            Kind::Trotter { factors, steps } => {
                let mut out = v.to_vec();
                for _ in 0..p * steps {
                    for (support, u) in factors {
                        linalg::apply_local(&mut out, self.width, support, u);
                    }
                }
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::random_k_local;
    use crate::rng;

    fn dist(a: &[C64], b: &[C64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    #[test]
    fn zero_time_is_identity() {
        let mut r = rng::seeded(1);
        let h = random_k_local(4, 3, 4, &mut r).unwrap();
        let v = crate::circuit::StateVector::random(4, &mut r).amps;
        let e = hamiltonian_evolution(&h, 0.0, EvolutionBackend::Exact).unwrap();
        assert!(dist(&e.apply(&v), &v) < 1e-12);
    }

    #[test]
    fn eigenstate_picks_up_phase() {
        let mut r = rng::seeded(2);
        let h = random_k_local(4, 3, 4, &mut r).unwrap();
        let eig = linalg::eigh(&h.to_dense().unwrap());
        let e = hamiltonian_evolution(&h, 0.8, EvolutionBackend::Exact).unwrap();
        for j in [0, 7, 15] {
            let v: Vec<C64> = eig.vectors.column(j).iter().copied().collect();
            let want: Vec<C64> = v
                .iter()
                .map(|z| z * C64::from_polar(1.0, -0.8 * eig.values[j]))
                .collect();
            assert!(dist(&e.apply(&v), &want) < 1e-10);
        }
    }

    #[test]
    fn trotter_within_bound() {
        let mut r = rng::seeded(3);
        let h = random_k_local(6, 3, 6, &mut r).unwrap();
        let v = crate::circuit::StateVector::random(6, &mut r).amps;
        let exact = hamiltonian_evolution(&h, 1.0, EvolutionBackend::Exact).unwrap();
        let trot = hamiltonian_evolution(&h, 1.0, EvolutionBackend::Trotter { steps: 64 }).unwrap();
        let d = dist(&exact.apply(&v), &trot.apply(&v));
        assert!(d <= trot.error_bound, "{d} > {}", trot.error_bound);
    }
}
