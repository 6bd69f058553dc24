use super::{Assignment, Formula, FormulaError};
use crate::relations::{closed_under, ClosureOp, Relation};

/// A GF(2) system in reduced row echelon form, pivots ordered by variable id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    n: usize,
    rows: Vec<(Vec<u64>, bool)>,
    pivots: Vec<usize>,
    consistent: bool,
}

#[inline]
fn bit(row: &[u64], i: usize) -> bool {
    row[i / 64] >> (i % 64) & 1 == 1
}

impl LinearSystem {
    /// Row-reduces the given equations `coeffs · x = rhs`.
    pub fn new(n: usize, equations: Vec<(Vec<u64>, bool)>) -> Self {
        let mut rows = equations;
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..n {
            let Some(p) = (r..rows.len()).find(|&i| bit(&rows[i].0, col)) else {
                continue;
            };
            rows.swap(r, p);
            let (pivot_row, pivot_rhs) = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && bit(&row.0, col) {
                    for (w, pw) in row.0.iter_mut().zip(&pivot_row) {
                        *w ^= pw;
                    }
                    row.1 ^= pivot_rhs;
                }
            }
            pivots.push(col);
            r += 1;
        }
        let consistent = rows[r..].iter().all(|(_, rhs)| !rhs);
        rows.truncate(r);
        LinearSystem {
            n,
            rows,
            pivots,
            consistent,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    /// Equations as (variables with coefficient 1, right-hand side).
    pub fn equations(&self) -> Vec<(Vec<usize>, bool)> {
        self.rows
            .iter()
            .map(|(row, rhs)| ((0..self.n).filter(|&i| bit(row, i)).collect(), *rhs))
            .collect()
    }

    /// Variables with a nonzero coefficient in some equation.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| self.rows.iter().any(|(row, _)| bit(row, i)))
            .collect()
    }

    pub fn is_solution(&self, a: &Assignment) -> bool {
        self.consistent
            && self.rows.iter().all(|(row, rhs)| {
                (0..self.n).filter(|&i| bit(row, i) && a.get(i)).count() % 2 == usize::from(*rhs)
            })
    }

    /// Pivot variables, one per row.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The solution with every free variable set to 0.
    pub fn solve(&self) -> Option<Assignment> {
        self.solve_with_free(&[])
    }

    /// The solution whose free variables are 1 exactly on `ones`.
    pub fn solve_with_free(&self, ones: &[usize]) -> Option<Assignment> {
        if !self.consistent {
            return None;
        }
        let mut a = Assignment::zeros(self.n);
        for &v in ones {
            debug_assert!(!self.pivots.contains(&v));
            a.set(v, true);
        }
        for ((row, rhs), &p) in self.rows.iter().zip(&self.pivots) {
            let parity = ones.iter().filter(|&&v| bit(row, v)).count() % 2 == 1;
            a.set(p, *rhs ^ parity);
        }
        Some(a)
    }
}

/// Equations `h · x = h · m0` spanning the orthogonal complement of an affine
/// relation's direction space.
fn relation_equations(rel: &Relation) -> Vec<(u32, bool)> {
    let k = rel.arity();
    let m0 = rel.members()[0];
    let dirs: Vec<u32> = rel.members().iter().map(|&m| m ^ m0).collect();
    let dot = |a: u32, b: u32| (a & b).count_ones() % 2 == 1;
    let mut basis: Vec<u32> = Vec::new();
    for h in 1..(1u32 << k) {
        if dirs.iter().all(|&d| !dot(h, d)) {
            let mut v = h;
            for &b in &basis {
                v = v.min(v ^ b);
            }
            if v != 0 {
                basis.push(v);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
    }
    basis.into_iter().map(|h| (h, dot(h, m0))).collect()
}

/// Linear system of a formula whose clause relations are all affine.
pub fn affine_system(f: &Formula) -> Result<LinearSystem, FormulaError> {
    let n = f.n();
    let words = n.div_ceil(64).max(1);
    let mut equations = Vec::new();
    for ci in 0..f.clauses().len() {
        let (rel, vars) = match f.clause_relation(ci) {
            Ok(Some(x)) => x,
            Ok(None) => continue,
            Err(FormulaError::Relation(_)) => {
                // unsatisfiable clause: 0 = 1
                equations.push((vec![0u64; words], true));
                continue;
            }
            Err(e) => return Err(e),
        };
        if !closed_under(&rel, ClosureOp::Xor3) {
            return Err(FormulaError::NotAffine { clause: ci });
        }
        let k = rel.arity();
        for (h, rhs) in relation_equations(&rel) {
            let mut row = vec![0u64; words];
            for (p, &v) in vars.iter().enumerate() {
                if h >> (k - 1 - p) & 1 == 1 {
                    row[v / 64] |= 1 << (v % 64);
                }
            }
            equations.push((row, rhs));
        }
    }
    Ok(LinearSystem::new(n, equations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::named::*;

    #[test]
    fn equality_gives_one_equation() {
        let mut f = Formula::new(2);
        f.push(&eq(), &[0, 1]).unwrap();
        let s = affine_system(&f).unwrap();
        assert_eq!(s.equations(), vec![(vec![0, 1], false)]);
        assert_eq!(s.rank(), 1);
        assert_eq!(s.support(), vec![0, 1]);
    }

    #[test]
    fn full_relation_gives_nothing() {
        let mut f = Formula::new(2);
        f.push(&Relation::full("F", 2).unwrap(), &[0, 1]).unwrap();
        let s = affine_system(&f).unwrap();
        assert_eq!(s.rank(), 0);
        assert!(s.support().is_empty());
    }

    #[test]
    fn one_in_three_not_affine() {
        let mut f = Formula::new(3);
        f.push(&one_in_three(), &[0, 1, 2]).unwrap();
        assert_eq!(affine_system(&f), Err(FormulaError::NotAffine { clause: 0 }));
    }

    #[test]
    fn solutions_match_enumeration() {
        let odd = Relation::from_tuples("ODD", 3, &["001", "010", "100", "111"]).unwrap();
        let mut f = Formula::new(4);
        f.push(&odd, &[0, 1, 2]).unwrap();
        f.push(&eq(), &[2, 3]).unwrap();
        let s = affine_system(&f).unwrap();
        for code in 0..16 {
            let a = Assignment::from_code(code, 4);
            assert_eq!(s.is_solution(&a), f.evaluate(&a), "{a}");
        }
        assert!(f.evaluate(&s.solve().unwrap()));
    }

    #[test]
    fn inconsistency_detected() {
        let one = Relation::from_tuples("ONE", 1, &["1"]).unwrap();
        let zero = Relation::from_tuples("ZERO", 1, &["0"]).unwrap();
        let mut f = Formula::new(1);
        f.push(&one, &[0]).unwrap();
        f.push(&zero, &[0]).unwrap();
        assert!(!affine_system(&f).unwrap().is_consistent());
    }
}
