//! Clock registers for the circuit-to-Hamiltonian construction: the unary
//! clock, the Johnson-graph clock and the dual clock that pairs an (a, d−1)
//! Johnson clock with an a-qubit unary clock sweeping back and forth.

mod johnson;
mod stab;
mod verify;

pub use johnson::{revolving_door_path, JohnsonPath};
pub use stab::{build_h_clock, build_h_stab, ClockTerm};
pub use verify::{
    check_johnson_equations, verify_conditions, verify_op, ConditionReport, Violation,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, binomial, CMat};
use crate::C64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum ClockKind {
    Unary {
        t_max: usize,
    },
    Johnson {
        path: JohnsonPath,
    },
    /// `path` is the (a, d−1) path driving the first half.
    Dual {
        a: usize,
        d: usize,
        path: JohnsonPath,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClockSchedule {
    pub kind: ClockKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Stay,
    Add,
    Add2,
    F,
    P,
}

/// One-qubit factor of a clock operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    /// |0⟩⟨0|
    Zero,
    /// |1⟩⟨1|
    One,
    /// |1⟩⟨0|
    Raise,
    /// |0⟩⟨1|
    Lower,
}

impl Factor {
    fn matrix(self) -> CMat {
        match self {
            Factor::Zero => linalg::ket_bra(0, 0, 2),
            Factor::One => linalg::ket_bra(1, 1, 2),
            Factor::Raise => linalg::ket_bra(1, 0, 2),
            Factor::Lower => linalg::ket_bra(0, 1, 2),
        }
    }
}

/// Operator on the clock register: a product of one-qubit factors on its
/// support (sorted).
#[derive(Clone, Debug, PartialEq)]
pub struct ClockOp {
    pub support: Vec<usize>,
    pub factors: Vec<Factor>,
    pub role: Role,
    pub t: usize,
}

impl ClockOp {
    pub fn from_factors(role: Role, t: usize, mut factors: Vec<(usize, Factor)>) -> Self {
        factors.sort_by_key(|f| f.0);
        ClockOp {
            support: factors.iter().map(|f| f.0).collect(),
            factors: factors.iter().map(|f| f.1).collect(),
            role,
            t,
        }
    }

    pub fn locality(&self) -> usize {
        self.support.len()
    }

    /// Dense 2^k × 2^k block on the support.
    pub fn matrix(&self) -> CMat {
        self.factors
            .iter()
            .fold(CMat::identity(1, 1), |m, f| linalg::kron(&m, &f.matrix()))
    }

    pub fn adjoint(&self) -> ClockOp {
        let factors = self
            .factors
            .iter()
            .map(|f| match f {
                Factor::Raise => Factor::Lower,
                Factor::Lower => Factor::Raise,
                other => *other,
            })
            .collect();
        ClockOp {
            factors,
            ..self.clone()
        }
    }

    /// Applies the operator to basis state `idx` of a `width`-qubit register;
    /// returns the nonzero output amplitudes (at most one).
    pub fn apply_basis(&self, idx: usize, width: usize) -> Vec<(usize, C64)> {
        let mut out = idx;
        for (&q, f) in self.support.iter().zip(&self.factors) {
            let mask = 1 << (width - 1 - q);
            let set = idx & mask != 0;
            match (f, set) {
                (Factor::Zero, false) | (Factor::One, true) => {}
                (Factor::Raise, false) => out |= mask,
                (Factor::Lower, true) => out &= !mask,
                _ => return Vec::new(),
            }
        }
        vec![(out, linalg::c(1.0))]
    }
}

/// g(t) = (1 + ⌊t/(a+1)⌋, min(m, 2a+1−m)) with m = t mod (2a+2).
pub fn g_map(t: usize, a: usize) -> (usize, usize) {
    let m = t % (2 * a + 2);
    (1 + t / (a + 1), m.min(2 * a + 1 - m))
}

impl ClockSchedule {
    pub fn unary(t_max: usize) -> Self {
        ClockSchedule {
            kind: ClockKind::Unary { t_max },
        }
    }

    pub fn johnson(a: usize, d: usize) -> Result<Self> {
        Ok(ClockSchedule {
            kind: ClockKind::Johnson {
                path: revolving_door_path(a, d)?,
            },
        })
    }

    pub fn dual(a: usize, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::arg(
                "the dual clock needs d >= 2; use the unary clock for d = 1",
            ));
        }
        Ok(ClockSchedule {
            kind: ClockKind::Dual {
                a,
                d,
                path: revolving_door_path(a, d - 1)?,
            },
        })
    }

    /// Schedule matching canonicalization parameters.
    pub fn for_params(d: usize, a: usize, t_max: usize) -> Result<Self> {
        if d == 1 {
            Ok(Self::unary(t_max))
        } else {
            let s = Self::dual(a, d)?;
            if s.t_max() != t_max {
                return Err(Error::arg(format!(
                    "dual clock ({a},{d}) has T = {}, circuit has {t_max}",
                    s.t_max()
                )));
            }
            Ok(s)
        }
    }

    pub fn width(&self) -> usize {
        match &self.kind {
            ClockKind::Unary { t_max } => *t_max,
            ClockKind::Johnson { path } => path.a,
            ClockKind::Dual { a, .. } => 2 * a,
        }
    }

    pub fn t_max(&self) -> usize {
        match &self.kind {
            ClockKind::Unary { t_max } => *t_max,
            ClockKind::Johnson { path } => path.t_max(),
            ClockKind::Dual { a, path, .. } => path.sets.len() * (a + 1) - 1,
        }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            ClockKind::Unary { t_max } => format!("unary({t_max})"),
            ClockKind::Johnson { path } => format!("johnson({},{})", path.a, path.d),
            ClockKind::Dual { a, d, .. } => format!("dual({a},{d})"),
        }
    }

    /// Locality bound of the clock operators.
    pub fn op_locality(&self) -> usize {
        match &self.kind {
            ClockKind::Unary { .. } => 2,
            ClockKind::Johnson { path } => path.d + 1,
            ClockKind::Dual { d, .. } => d + 1,
        }
    }

    fn check_t(&self, t: usize, max: usize) -> Result<()> {
        if t > max {
            return Err(Error::arg(format!("time step {t} outside 0..={max}")));
        }
        Ok(())
    }

    pub fn g_map(&self, t: usize) -> Result<(usize, usize)> {
        match &self.kind {
            ClockKind::Dual { a, .. } => {
                self.check_t(t, self.t_max())?;
                Ok(g_map(t, *a))
            }
            _ => Err(Error::arg("g is defined only for the dual clock")),
        }
    }

    pub fn legal_state(&self, t: usize) -> Result<Vec<bool>> {
        self.check_t(t, self.t_max())?;
        Ok(match &self.kind {
            ClockKind::Unary { t_max } => (0..*t_max).map(|i| i < t).collect(),
            ClockKind::Johnson { path } => path.indicator(t),
            ClockKind::Dual { a, path, .. } => {
                let (t1, t2) = g_map(t, *a);
                let mut bits = path.indicator(t1 - 1);
                bits.extend((0..*a).map(|i| i < t2));
                bits
            }
        })
    }

    pub fn legal_index(&self, t: usize) -> Result<usize> {
        Ok(linalg::index_of(&self.legal_state(t)?))
    }

    /// `|1^d⟩⟨1^d|` on the vertex at path index `idx`.
    fn johnson_p(path: &JohnsonPath, idx: usize) -> Vec<(usize, Factor)> {
        path.sets[idx]
            .iter()
            .map(|&e| (e - 1, Factor::One))
            .collect()
    }

    /// Moves path index `idx` to `idx + 1`.
    fn johnson_f(path: &JohnsonPath, idx: usize) -> Vec<(usize, Factor)> {
        let (from, to) = (&path.sets[idx], &path.sets[idx + 1]);
        let mut f: Vec<(usize, Factor)> = Vec::new();
        for &e in from {
            f.push((
                e - 1,
                if to.contains(&e) {
                    Factor::One
                } else {
                    Factor::Lower
                },
            ));
        }
        for &e in to.iter().filter(|e| !from.contains(e)) {
            f.push((e - 1, Factor::Raise));
        }
        f
    }

    /// Pause operator P_t of the Johnson clock.
    pub fn p_op(&self, t: usize) -> Result<ClockOp> {
        match &self.kind {
            ClockKind::Johnson { path } => {
                self.check_t(t, path.t_max())?;
                Ok(ClockOp::from_factors(Role::P, t, Self::johnson_p(path, t)))
            }
            _ => Err(Error::arg("P_t is defined for the Johnson clock")),
        }
    }

    /// Forward operator F_t (t ≥ 1) of the Johnson clock.
    pub fn f_op(&self, t: usize) -> Result<ClockOp> {
        match &self.kind {
            ClockKind::Johnson { path } => {
                if t == 0 {
                    return Err(Error::arg("F_t needs t >= 1"));
                }
                self.check_t(t, path.t_max())?;
                Ok(ClockOp::from_factors(
                    Role::F,
                    t,
                    Self::johnson_f(path, t - 1),
                ))
            }
            _ => Err(Error::arg("F_t is defined for the Johnson clock")),
        }
    }

    /// Local implementation of stay(t), add(t) or add2(t).
    pub fn op(&self, role: Role, t: usize) -> Result<ClockOp> {
        let big_t = self.t_max();
        let max = match role {
            Role::Stay => big_t,
            Role::Add => big_t
                .checked_sub(1)
                .ok_or_else(|| Error::arg("no add on T = 0"))?,
            Role::Add2 => big_t
                .checked_sub(2)
                .ok_or_else(|| Error::arg("no add2 on T < 2"))?,
            _ => return Err(Error::arg("use p_op / f_op for the Johnson primitives")),
        };
        self.check_t(t, max)?;
        let factors = match &self.kind {
            ClockKind::Unary { t_max } => unary_factors(role, t, *t_max),
            ClockKind::Johnson { path } => match role {
                Role::Stay => Self::johnson_p(path, t),
                Role::Add => Self::johnson_f(path, t),
                _ => return Err(Error::arg("the Johnson clock has no two-step operator")),
            },
            ClockKind::Dual { a, path, .. } => dual_factors(role, t, *a, path),
        };
        Ok(ClockOp::from_factors(role, t, factors))
    }
}

fn unary_factors(role: Role, t: usize, t_max: usize) -> Vec<(usize, Factor)> {
    // Qubit p in 1-based numbering is index p − 1.
    match role {
        Role::Stay if t_max == 0 => vec![],
        Role::Stay if t == 0 => vec![(0, Factor::Zero)],
        Role::Stay if t == t_max => vec![(t_max - 1, Factor::One)],
        Role::Stay => vec![(t - 1, Factor::One), (t, Factor::Zero)],
        Role::Add => vec![(t, Factor::Raise)],
        Role::Add2 => vec![(t, Factor::Raise), (t + 1, Factor::Raise)],
        _ => unreachable!(),
    }
}

fn dual_factors(role: Role, t: usize, a: usize, path: &JohnsonPath) -> Vec<(usize, Factor)> {
    let (t1, t2) = g_map(t, a);
    let odd = t1 % 2 == 1;
    let p = || ClockSchedule::johnson_p(path, t1 - 1);
    let f = || ClockSchedule::johnson_f(path, t1 - 1);
    // Unary position u (1-based) lives on clock qubit a + u − 1.
    let u = |pos: usize, fac: Factor| (a + pos - 1, fac);
    let with = |mut base: Vec<(usize, Factor)>, extra: Vec<(usize, Factor)>| {
        base.extend(extra);
        base
    };
    match role {
        Role::Stay => match t2 {
            0 => with(p(), vec![u(1, Factor::Zero)]),
            x if x == a => with(p(), vec![u(a, Factor::One)]),
            x => with(p(), vec![u(x, Factor::One), u(x + 1, Factor::Zero)]),
        },
        Role::Add if odd => {
            if t2 < a {
                with(p(), vec![u(t2 + 1, Factor::Raise)])
            } else {
                with(f(), vec![u(a, Factor::One)])
            }
        }
        Role::Add => {
            if t2 >= 1 {
                with(p(), vec![u(t2, Factor::Lower)])
            } else {
                with(f(), vec![u(1, Factor::Zero)])
            }
        }
        Role::Add2 if odd => {
            if t2 + 2 <= a {
                with(
                    p(),
                    vec![u(t2 + 1, Factor::Raise), u(t2 + 2, Factor::Raise)],
                )
            } else if t2 + 1 == a {
                with(f(), vec![u(a, Factor::Raise)])
            } else {
                with(f(), vec![u(a, Factor::Lower)])
            }
        }
        Role::Add2 => {
            if t2 >= 2 {
                with(p(), vec![u(t2 - 1, Factor::Lower), u(t2, Factor::Lower)])
            } else if t2 == 1 {
                with(f(), vec![u(1, Factor::Lower)])
            } else {
                with(f(), vec![u(1, Factor::Raise)])
            }
        }
        _ => unreachable!(),
    }
}

/// CSV listing of the legal clock states.
pub fn clock_table_csv(schedule: &ClockSchedule) -> String {
    let mut s = String::new();
    let t_max = schedule.t_max();
    match &schedule.kind {
        ClockKind::Dual { a, .. } => {
            s.push_str("t,t1,t2,first,second\n");
            for t in 0..=t_max {
                let bits = schedule.legal_state(t).expect("in range");
                let (t1, t2) = g_map(t, *a);
                s.push_str(&format!(
                    "{t},{t1},{t2},{},{}\n",
                    linalg::bitstring(&bits[..*a]),
                    linalg::bitstring(&bits[*a..])
                ));
            }
        }
        _ => {
            s.push_str("t,state\n");
            for t in 0..=t_max {
                let bits = schedule.legal_state(t).expect("in range");
                s.push_str(&format!("{t},{}\n", linalg::bitstring(&bits)));
            }
        }
    }
    s
}

/// Smallest a with C(a, d−1)(a+1) ≥ steps.
pub fn minimal_dual_a(steps: usize, d: usize) -> usize {
    let mut a = d;
    while binomial(a, d - 1) * (a + 1) < steps {
        a += 1;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_map_examples() {
        assert_eq!(g_map(4, 3), (2, 3));
        assert_eq!(g_map(0, 3), (1, 0));
        assert_eq!(g_map(7, 3), (2, 0));
    }

    #[test]
    fn legal_state_examples() {
        let d = ClockSchedule::dual(3, 2).unwrap();
        assert_eq!(linalg::bitstring(&d.legal_state(0).unwrap()), "100000");
        assert_eq!(linalg::bitstring(&d.legal_state(4).unwrap()), "010111");
        let u = ClockSchedule::unary(4);
        assert_eq!(linalg::bitstring(&u.legal_state(2).unwrap()), "1100");
        assert!(u.legal_state(5).is_err());
    }

    #[test]
    fn unary_table_entries() {
        let u = ClockSchedule::unary(4);
        let s0 = u.op(Role::Stay, 0).unwrap();
        assert_eq!(s0.support, vec![0]);
        assert_eq!(s0.matrix(), linalg::ket_bra(0, 0, 2));
        assert_eq!(u.op(Role::Stay, 2).unwrap().support, vec![1, 2]);
        assert_eq!(u.op(Role::Add2, 1).unwrap().support, vec![1, 2]);
        assert!(u.op(Role::Add, 4).is_err());
        assert!(u.op(Role::Add2, 3).is_err());
    }

    #[test]
    fn dual_localities() {
        for d in 2..=3 {
            let s = ClockSchedule::dual(4, d).unwrap();
            let stay = s.op(Role::Stay, 1).unwrap();
            assert_eq!(stay.locality(), d + 1);
            assert_eq!(s.op(Role::Add, 0).unwrap().locality(), d);
            for t in 0..s.t_max() {
                assert!(s.op(Role::Add, t).unwrap().locality() <= d + 1);
            }
        }
    }

    #[test]
    fn csv_layout() {
        let csv = clock_table_csv(&ClockSchedule::dual(3, 2).unwrap());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 13);
        assert_eq!(lines[5], "4,2,3,010,111");
    }
}
