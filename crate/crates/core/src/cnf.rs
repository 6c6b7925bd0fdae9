//! kCNF formulas: DIMACS parsing, validation, evaluation and a brute-force
//! oracle.

use std::fmt::Write as _;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::Rng;

/// Brute-force enumeration guard on the variable count.
pub const BRUTE_FORCE_GUARD: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            negated: false,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    fn from_dimacs(v: i64) -> Self {
        Literal {
            var: v.unsigned_abs() as usize,
            negated: v < 0,
        }
    }

    pub fn to_dimacs(self) -> i64 {
        if self.negated {
            -(self.var as i64)
        } else {
            self.var as i64
        }
    }

    /// Literal value under `assignment` (index 0 holds x1).
    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var - 1] != self.negated
    }
}

pub type Clause = Vec<Literal>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
}

fn check_clause(num_vars: usize, clause: &[Literal]) -> std::result::Result<(), String> {
    if clause.is_empty() {
        return Err("empty clause".into());
    }
    for (i, lit) in clause.iter().enumerate() {
        if lit.var == 0 || lit.var > num_vars {
            return Err(format!("variable {} out of range 1..={num_vars}", lit.var));
        }
        if clause[..i].iter().any(|l| l.var == lit.var) {
            return Err(format!("variable {} appears twice", lit.var));
        }
    }
    Ok(())
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self> {
        for (i, cl) in clauses.iter().enumerate() {
            check_clause(num_vars, cl)
                .map_err(|e| Error::InvalidFormula(format!("clause {}: {e}", i + 1)))?;
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Builds a formula from DIMACS-style signed integers.
    pub fn from_ints(num_vars: usize, clauses: &[&[i64]]) -> Result<Self> {
        let cls = clauses
            .iter()
            .map(|c| c.iter().map(|&v| Literal::from_dimacs(v)).collect())
            .collect();
        Self::new(num_vars, cls)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for cl in &self.clauses {
            for lit in cl {
                let _ = write!(s, "{} ", lit.to_dimacs());
            }
            s.push_str("0\n");
        }
        s
    }
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Clause = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(perr(lineno, "duplicate header".into()));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(perr(lineno, format!("malformed header `{line}`")));
            }
            let n = parts[2]
                .parse()
                .map_err(|_| perr(lineno, format!("bad variable count `{}`", parts[2])))?;
            let m = parts[3]
                .parse()
                .map_err(|_| perr(lineno, format!("bad clause count `{}`", parts[3])))?;
            header = Some((n, m));
            continue;
        }
        let (n, _) = header.ok_or_else(|| perr(lineno, "clause before header".into()))?;
        for tok in line.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| perr(lineno, format!("bad literal `{tok}`")))?;
            if v == 0 {
                let cl = std::mem::take(&mut current);
                check_clause(n, &cl).map_err(|e| perr(lineno, e))?;
                clauses.push(cl);
            } else {
                let lit = Literal::from_dimacs(v);
                if lit.var > n {
                    return Err(perr(
                        lineno,
                        format!("variable {} out of range 1..={n}", lit.var),
                    ));
                }
                current.push(lit);
            }
        }
    }
    let (n, m) = header.ok_or_else(|| perr(last_line, "missing `p cnf` header".into()))?;
    if !current.is_empty() {
        return Err(perr(last_line, "unterminated clause".into()));
    }
    if clauses.len() != m {
        return Err(perr(
            last_line,
            format!("header declares {m} clauses, found {}", clauses.len()),
        ));
    }
    Ok(CnfFormula {
        num_vars: n,
        clauses,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Offense {
    /// 1-based clause index.
    pub clause: usize,
    pub width: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub accepted: bool,
    pub k: usize,
    pub num_vars: usize,
    pub num_clauses: usize,
    pub max_width: usize,
    pub offending: Vec<Offense>,
}

pub fn validate_kcnf(formula: &CnfFormula, k: usize) -> ValidationReport {
    let mut offending = Vec::new();
    for (i, cl) in formula.clauses.iter().enumerate() {
        if let Err(reason) = check_clause(formula.num_vars, cl) {
            offending.push(Offense {
                clause: i + 1,
                width: cl.len(),
                reason,
            });
        } else if cl.len() > k {
            offending.push(Offense {
                clause: i + 1,
                width: cl.len(),
                reason: format!("width {} exceeds k = {k}", cl.len()),
            });
        }
    }
    ValidationReport {
        accepted: k >= 1 && offending.is_empty(),
        k,
        num_vars: formula.num_vars,
        num_clauses: formula.num_clauses(),
        max_width: formula.max_width(),
        offending,
    }
}

pub fn evaluate(formula: &CnfFormula, assignment: &[bool]) -> Result<bool> {
    if assignment.len() != formula.num_vars {
        return Err(Error::Mismatch {
            what: "assignment length",
            expected: formula.num_vars,
            got: assignment.len(),
        });
    }
    Ok(eval_unchecked(formula, assignment))
}

fn eval_unchecked(formula: &CnfFormula, x: &[bool]) -> bool {
    formula
        .clauses
        .iter()
        .all(|cl| cl.iter().any(|l| l.eval(x)))
}

/// Number of clauses satisfied by `assignment`.
pub fn satisfied_count(formula: &CnfFormula, assignment: &[bool]) -> usize {
    formula
        .clauses
        .iter()
        .filter(|cl| cl.iter().any(|l| l.eval(assignment)))
        .count()
}

/// Assignment for basis index `idx`, with x1 as the most significant bit.
pub fn assignment_of(idx: usize, n: usize) -> Vec<bool> {
    crate::linalg::bits_of(idx, n)
}

/// Lexicographically smallest satisfying assignment, if any.
pub fn brute_force_sat(formula: &CnfFormula) -> Result<Option<Vec<bool>>> {
    let n = formula.num_vars;
    if n > BRUTE_FORCE_GUARD {
        return Err(Error::Guard {
            what: "variable count",
            value: n,
            limit: BRUTE_FORCE_GUARD,
        });
    }
    Ok((0..1usize << n)
        .map(|idx| assignment_of(idx, n))
        .find(|x| eval_unchecked(formula, x)))
}

/// Uniformly random formula with `m` clauses of exactly `k` distinct variables.
pub fn random_kcnf(n: usize, m: usize, k: usize, rng: &mut Rng) -> CnfFormula {
    assert!(k >= 1 && k <= n, "need 1 <= k <= n");
    let clauses = (0..m)
        .map(|_| {
            let vars = rand::seq::index::sample(rng, n, k);
            vars.iter()
                .map(|v| Literal {
                    var: v + 1,
                    negated: rng.gen_bool(0.5),
                })
                .collect()
        })
        .collect();
    CnfFormula {
        num_vars: n,
        clauses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn parses_header_and_clauses() {
        let f = parse_dimacs("c hi\np cnf 3 2\n1 -2 0\n2 3 0\n").unwrap();
        assert_eq!(f.num_vars(), 3);
        assert_eq!(
            f.clauses(),
            &[
                vec![Literal::pos(1), Literal::neg(2)],
                vec![Literal::pos(2), Literal::pos(3)]
            ]
        );
    }

    #[test]
    fn rejects_complementary_literals() {
        assert!(parse_dimacs("p cnf 1 1\n1 -1 0\n").is_err());
    }

    #[test]
    fn empty_formula_is_satisfiable() {
        let f = parse_dimacs("p cnf 2 0\n").unwrap();
        assert_eq!(f.num_clauses(), 0);
        assert!(evaluate(&f, &bits("10")).unwrap());
        assert_eq!(brute_force_sat(&f).unwrap(), Some(bits("00")));
    }

    #[test]
    fn parse_errors() {
        assert!(parse_dimacs("p cnf x 1\n1 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n3 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 2\n1 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 1 0\n").is_err());
        assert!(parse_dimacs("1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 2\n").is_err());
    }

    #[test]
    fn clause_may_span_lines() {
        let f = parse_dimacs("p cnf 3 1\n1\n-2 3\n0\n").unwrap();
        assert_eq!(f.clauses()[0].len(), 3);
    }

    #[test]
    fn validation() {
        let f = CnfFormula::from_ints(4, &[&[1, 2, 3], &[-1, 4]]).unwrap();
        assert!(validate_kcnf(&f, 3).accepted);
        assert!(validate_kcnf(&f, 5).accepted);
        let g = CnfFormula::from_ints(4, &[&[1, 2, 3, 4], &[1]]).unwrap();
        let r = validate_kcnf(&g, 3);
        assert!(!r.accepted);
        assert_eq!(r.offending.len(), 1);
        assert_eq!(r.offending[0].clause, 1);
    }

    #[test]
    fn evaluation_matches_truth_table() {
        let f = CnfFormula::from_ints(2, &[&[1, 2], &[-1, 2]]).unwrap();
        // Φ = (x1 ∨ x2) ∧ (¬x1 ∨ x2) is just x2.
        for idx in 0..4 {
            let x = assignment_of(idx, 2);
            assert_eq!(evaluate(&f, &x).unwrap(), x[1]);
        }
        assert!(evaluate(&f, &bits("01")).unwrap());
        assert!(!evaluate(&f, &bits("10")).unwrap());
        assert!(evaluate(&f, &bits("0")).is_err());
    }

    #[test]
    fn brute_force_examples() {
        let contra = CnfFormula::from_ints(1, &[&[1], &[-1]]).unwrap();
        assert_eq!(brute_force_sat(&contra).unwrap(), None);
        let or = CnfFormula::from_ints(2, &[&[1, 2]]).unwrap();
        assert_eq!(brute_force_sat(&or).unwrap(), Some(bits("01")));
        let big = CnfFormula::new(31, vec![]).unwrap();
        assert!(brute_force_sat(&big).unwrap_err().is_guard());
    }
}
