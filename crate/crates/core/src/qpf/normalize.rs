use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::{LocalHamiltonian, LocalTerm, TermKind};
use crate::linalg::CMat;

/// Default normalization margin: H′ = (H − c)/s with s = 2B(1 + margin).
pub const NORMALIZATION_MARGIN: f64 = 0.01;

/// H = s·H′ + c·I with spectrum(H′) ⊂ [0, 1).
#[derive(Clone, Debug)]
pub struct NormalizedHamiltonian {
    pub h: LocalHamiltonian,
    pub scale: f64,
    pub shift: f64,
    /// Upper bound on the spectrum of H′.
    pub upper: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Normalization {
    pub scale: f64,
    pub shift: f64,
    pub upper: f64,
}

impl NormalizedHamiltonian {
    pub fn normalization(&self) -> Normalization {
        Normalization {
            scale: self.scale,
            shift: self.shift,
            upper: self.upper,
        }
    }

    /// Effective inverse temperature s·β.
    pub fn beta_prime(&self, beta: f64) -> f64 {
        self.scale * beta
    }

    /// Adds −β·c to a normalized ln Z.
    pub fn restore_ln(&self, ln_z_normalized: f64, beta: f64) -> f64 {
        ln_z_normalized - beta * self.shift
    }

    /// Wraps an H′ that is already positive semidefinite with norm bound
    /// below 1 (diagonal H′ is checked exactly).
    pub fn assume_normalized(h: LocalHamiltonian) -> Result<Self> {
        let upper = if h.is_diagonal() {
            let d = h.diagonal()?;
            if d.iter().any(|&e| e < 0.0) {
                return Err(Error::arg("diagonal H′ has a negative entry"));
            }
            d.iter().fold(0.0, |a: f64, &e| a.max(e))
        } else {
            h.norm_bound()
        };
        if upper >= 1.0 {
            return Err(Error::arg(format!(
                "H′ spectrum bound {upper} is not below 1"
            )));
        }
        Ok(NormalizedHamiltonian {
            h,
            scale: 1.0,
            shift: 0.0,
            upper,
        })
    }
}

pub fn normalize(h: &LocalHamiltonian) -> Result<NormalizedHamiltonian> {
    normalize_with_margin(h, NORMALIZATION_MARGIN)
}

/// c = −B, s = 2B(1 + margin) for the norm bound B.
pub fn normalize_with_margin(h: &LocalHamiltonian, margin: f64) -> Result<NormalizedHamiltonian> {
    let b = h.norm_bound();
    if !b.is_finite() || !(margin >= 0.0) {
        return Err(Error::arg(
            "norm bound must be finite and margin nonnegative",
        ));
    }
    if b == 0.0 {
        return Ok(NormalizedHamiltonian {
            h: LocalHamiltonian::new(h.width(), vec![])?,
            scale: 1.0,
            shift: 0.0,
            upper: 0.0,
        });
    }
    let s = 2.0 * b * (1.0 + margin);
    let mut terms: Vec<LocalTerm> = h
        .terms()
        .iter()
        .map(|t| LocalTerm {
            coefficient: t.coefficient / s,
            ..t.clone()
        })
        .collect();
    terms.push(LocalTerm::new(vec![], CMat::identity(1, 1), b / s).with_kind(TermKind::Generic));
    Ok(NormalizedHamiltonian {
        h: LocalHamiltonian::new(h.width(), terms)?,
        scale: s,
        shift: -b,
        upper: 2.0 * b / s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ket_bra;
    use crate::spectrum::{exact_partition_function, spectrum};

    #[test]
    fn zero_is_identity_transform() {
        let n = normalize(&LocalHamiltonian::new(3, vec![]).unwrap()).unwrap();
        assert_eq!((n.scale, n.shift), (1.0, 0.0));
    }

    #[test]
    fn spectrum_maps_into_unit_interval() {
        let h = LocalHamiltonian::new(
            2,
            vec![
                LocalTerm::new(vec![0], ket_bra(1, 1, 2), 3.0),
                LocalTerm::new(vec![1], ket_bra(0, 0, 2) * crate::linalg::c(-1.0), 2.0),
            ],
        )
        .unwrap();
        let ev = spectrum(&h).unwrap();
        assert_eq!((ev[0], ev[3]), (-2.0, 3.0));
        let n = normalize(&h).unwrap();
        let ev2 = spectrum(&n.h).unwrap();
        assert!(ev2.iter().all(|&e| (0.0..1.0).contains(&e)));
        let beta = 0.7;
        let z = exact_partition_function(&h, beta).unwrap();
        let z2 = (-beta * n.shift).exp() * exact_partition_function(&n.h, n.scale * beta).unwrap();
        assert!((z / z2 - 1.0).abs() < 1e-8);
    }
}
