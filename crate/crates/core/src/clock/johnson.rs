use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hamiltonian path through the Johnson graph J(a, d). Elements are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JohnsonPath {
    pub a: usize,
    pub d: usize,
    pub sets: Vec<Vec<usize>>,
}

impl JohnsonPath {
    /// Index of the last vertex, C(a,d) − 1.
    pub fn t_max(&self) -> usize {
        self.sets.len() - 1
    }

    /// Indicator string of vertex `t` over qubits 0..a.
    pub fn indicator(&self, t: usize) -> Vec<bool> {
        let mut bits = vec![false; self.a];
        for &e in &self.sets[t] {
            bits[e - 1] = true;
        }
        bits
    }
}

fn revolving(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if k == n {
        return vec![(1..=n).collect()];
    }
    let mut out = revolving(n - 1, k);
    out.extend(revolving(n - 1, k - 1).into_iter().rev().map(|mut s| {
        s.push(n);
        s
    }));
    out
}

/// Revolving-door Gray code: R(n,k) = R(n−1,k) followed by the reversal of
/// R(n−1,k−1) with n adjoined. Consecutive subsets differ by one swap.
pub fn revolving_door_path(a: usize, d: usize) -> Result<JohnsonPath> {
    if d < 1 || d >= a {
        return Err(Error::arg(format!(
            "Johnson graph needs 1 <= d < a, got a={a}, d={d}"
        )));
    }
    Ok(JohnsonPath {
        a,
        d,
        sets: revolving(a, d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::binomial;

    fn adjacent(x: &[usize], y: &[usize]) -> bool {
        x.iter().filter(|e| y.contains(e)).count() + 1 == x.len()
    }

    #[test]
    fn singletons_in_natural_order() {
        let p = revolving_door_path(3, 1).unwrap();
        assert_eq!(p.sets, vec![vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn paths_are_hamiltonian() {
        for (a, d) in [(4, 2), (6, 3), (7, 2), (8, 5)] {
            let p = revolving_door_path(a, d).unwrap();
            assert_eq!(p.sets.len(), binomial(a, d));
            let mut seen = p.sets.clone();
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len(), p.sets.len());
            assert!(p.sets.iter().all(|s| s.len() == d));
            assert!(p.sets.windows(2).all(|w| adjacent(&w[0], &w[1])));
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(revolving_door_path(3, 3).is_err());
        assert!(revolving_door_path(3, 0).is_err());
    }
}
