use super::{ClockKind, ClockSchedule};
use crate::error::{Error, Result};
use crate::linalg::{self, binomial, CMat};

/// Weighted local term on the clock register. Signs live in the matrix so the
/// coefficient stays nonnegative; an empty support denotes a multiple of I.
#[derive(Clone, Debug, PartialEq)]
pub struct ClockTerm {
    pub support: Vec<usize>,
    pub matrix: CMat,
    pub coefficient: f64,
}

impl ClockTerm {
    /// ⟨x|term|x⟩ for basis state `idx` of a `width`-qubit register.
    pub fn diag(&self, idx: usize, width: usize) -> f64 {
        let local = self
            .support
            .iter()
            .fold(0, |acc, &q| (acc << 1) | linalg::bit(idx, q, width));
        self.coefficient * self.matrix[(local, local)].re
    }
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn all_ones_projector(k: usize) -> CMat {
    let dim = 1 << k;
    linalg::ket_bra(dim - 1, dim - 1, dim)
}

fn h_stab_at(a: usize, d: usize, offset: usize) -> Vec<ClockTerm> {
    let c = binomial(a, d);
    let shift = |s: Vec<usize>| s.into_iter().map(|q| q + offset).collect::<Vec<_>>();
    let mut terms: Vec<ClockTerm> = subsets(a, d + 1)
        .into_iter()
        .map(|s| ClockTerm {
            support: shift(s),
            matrix: all_ones_projector(d + 1),
            coefficient: c as f64,
        })
        .collect();
    let below = linalg::identity(1 << d) - all_ones_projector(d);
    terms.extend(subsets(a, d).into_iter().map(|s| ClockTerm {
        support: shift(s),
        matrix: below.clone(),
        coefficient: 1.0,
    }));
    if c > 1 {
        terms.push(ClockTerm {
            support: vec![],
            matrix: CMat::from_element(1, 1, linalg::c(-((c - 1) as f64))),
            coefficient: 1.0,
        });
    }
    terms
}

/// C(a,d)·H_{>d} + H_{<d} − (C(a,d)−1)·I on qubits 0..a.
pub fn build_h_stab(a: usize, d: usize) -> Result<Vec<ClockTerm>> {
    if d < 1 || d >= a {
        return Err(Error::arg(format!(
            "stabilizer needs 1 <= d < a, got a={a}, d={d}"
        )));
    }
    Ok(h_stab_at(a, d, 0))
}

fn unary_penalty(width: usize, offset: usize) -> Vec<ClockTerm> {
    let m01 = linalg::ket_bra(1, 1, 4);
    subsets(width, 2)
        .into_iter()
        .map(|s| ClockTerm {
            support: vec![s[0] + offset, s[1] + offset],
            matrix: m01.clone(),
            coefficient: 1.0,
        })
        .collect()
}

pub fn build_h_clock(schedule: &ClockSchedule) -> Vec<ClockTerm> {
    match &schedule.kind {
        ClockKind::Unary { t_max } => unary_penalty(*t_max, 0),
        ClockKind::Johnson { path } => h_stab_at(path.a, path.d, 0),
        ClockKind::Dual { a, d, .. } => {
            let mut t = h_stab_at(*a, d - 1, 0);
            t.extend(unary_penalty(*a, *a));
            t
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(terms: &[ClockTerm], idx: usize, width: usize) -> f64 {
        terms.iter().map(|t| t.diag(idx, width)).sum()
    }

    #[test]
    fn h_stab_three_cases_at_a4_d2() {
        let h = build_h_stab(4, 2).unwrap();
        for idx in 0..16usize {
            let w = idx.count_ones();
            let v = diag(&h, idx, 4);
            match w {
                2 => assert_eq!(v, 0.0),
                0 | 1 => assert_eq!(v, 1.0),
                _ => assert!(v >= 1.0),
            }
        }
    }

    #[test]
    fn unary_penalty_fires_on_010() {
        let h = build_h_clock(&ClockSchedule::unary(3));
        assert!(diag(&h, 0b010, 3) >= 1.0);
        assert_eq!(diag(&h, 0b110, 3), 0.0);
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(5, 2).len(), 10);
        assert_eq!(subsets(3, 4).len(), 0);
    }
}
