//! CNF(S)-formulas: clauses applying named relations to variables and
//! constants, plus the clausal and linear normal forms used by the
//! polynomial deciders.

mod clausal;
mod horn;
mod linear;
mod text;
mod twosat;

pub use clausal::{clausal_form, clauses_satisfied_by, ClauseShape, Lit};
pub use horn::horn_sat;
pub use linear::{affine_system, LinearSystem};
pub use text::{parse_formula, parse_formula_file, serialize_formula};
pub use twosat::{two_sat, TwoSat};

use crate::relations::{Binding, Relation, RelationError};
use serde::{Serialize, Serializer};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: unknown relation `{name}`")]
    UnknownRelation { line: usize, name: String },
    #[error("relation `{relation}` has arity {expected} but the clause has {found} arguments")]
    ArityMismatch {
        relation: String,
        expected: usize,
        found: usize,
    },
    #[error("variable x{} out of range for {n} variables", var + 1)]
    VarOutOfRange { var: usize, n: usize },
    #[error("relation `{0}` declared twice with different tuples")]
    RelationConflict(String),
    #[error("relation index {0} out of range")]
    RelationIndex(usize),
    #[error("clause index {0} out of range")]
    ClauseIndex(usize),
    #[error("assignment has {found} bits, formula has {expected} variables")]
    LengthMismatch { expected: usize, found: usize },
    #[error("clause {clause} is not affine")]
    NotAffine { clause: usize },
    #[error("clause {clause} is not Horn")]
    NotHorn { clause: usize },
    #[error("clause {clause} has more than two literals")]
    NotTwoCnf { clause: usize },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Relation(#[from] RelationError),
}

/// A hypercube vertex. Variable 1 is the leftmost bit; ordering follows the
/// integer encoding with variable 1 most significant.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    n: usize,
    words: Vec<u64>,
}

impl Assignment {
    pub fn zeros(n: usize) -> Self {
        Assignment {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut a = Assignment::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            a.set(i, b);
        }
        a
    }

    /// From an integer code where variable `i` (0-based) is bit `n-1-i`.
    pub fn from_code(code: u64, n: usize) -> Self {
        assert!(n <= 64);
        let mut a = Assignment::zeros(n);
        for i in 0..n {
            a.set(i, code >> (n - 1 - i) & 1 == 1);
        }
        a
    }

    pub fn to_code(&self) -> Option<u64> {
        if self.n > 64 {
            return None;
        }
        Some((0..self.n).fold(0u64, |acc, i| acc << 1 | u64::from(self.get(i))))
    }

    pub fn parse(s: &str) -> Result<Self, FormulaError> {
        let s = s.trim();
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => {
                    return Err(FormulaError::Parse {
                        line: 0,
                        message: format!("assignment `{s}` must be a binary string"),
                    })
                }
            }
        }
        Ok(Assignment::from_bits(&bits))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        self.words[i / 64] >> (63 - i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.n);
        let mask = 1u64 << (63 - i % 64);
        if v {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (63 - i % 64);
    }

    pub fn flipped(&self, i: usize) -> Self {
        let mut a = self.clone();
        a.flip(i);
        a
    }

    pub fn hamming(&self, other: &Assignment) -> usize {
        assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Indices where the two assignments differ, ascending.
    pub fn diff(&self, other: &Assignment) -> Vec<usize> {
        (0..self.n).filter(|&i| self.get(i) != other.get(i)).collect()
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn bits(&self) -> Vec<bool> {
        (0..self.n).map(|i| self.get(i)).collect()
    }

    /// Restriction to the listed variables, in the given order.
    pub fn restrict(&self, vars: &[usize]) -> Assignment {
        Assignment::from_bits(&vars.iter().map(|&v| self.get(v)).collect::<Vec<_>>())
    }

    /// Complement of every bit.
    pub fn complement(&self) -> Assignment {
        let mut a = self.clone();
        for i in 0..self.n {
            a.flip(i);
        }
        a
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Assignment({self})")
    }
}

impl Serialize for Assignment {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A clause argument: a 0-based variable or a constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Arg {
    Var(usize),
    Const(bool),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clause {
    pub relation: usize,
    pub args: Vec<Arg>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    n: usize,
    relations: Vec<Relation>,
    clauses: Vec<Clause>,
}

impl Formula {
    pub fn new(n: usize) -> Self {
        Formula {
            n,
            relations: Vec::new(),
            clauses: Vec::new(),
        }
    }

    pub fn with_relations(n: usize, relations: impl IntoIterator<Item = Relation>) -> Result<Self, FormulaError> {
        let mut f = Formula::new(n);
        for r in relations {
            f.add_relation(r)?;
        }
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn relation(&self, idx: usize) -> &Relation {
        &self.relations[idx]
    }

    pub fn relation_index(&self, name: &str) -> Option<usize> {
        self.relations.iter().position(|r| r.name() == name)
    }

    /// Adds a fresh variable and returns its index.
    pub fn add_var(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    /// Registers a relation, reusing an existing one with the same name and
    /// tuples.
    pub fn add_relation(&mut self, rel: Relation) -> Result<usize, FormulaError> {
        if let Some(i) = self.relation_index(rel.name()) {
            if self.relations[i].same_tuples(&rel) {
                return Ok(i);
            }
            return Err(FormulaError::RelationConflict(rel.name().to_string()));
        }
        self.relations.push(rel);
        Ok(self.relations.len() - 1)
    }

    pub fn add_clause(&mut self, relation: usize, args: Vec<Arg>) -> Result<(), FormulaError> {
        let rel = self
            .relations
            .get(relation)
            .ok_or(FormulaError::RelationIndex(relation))?;
        if rel.arity() != args.len() {
            return Err(FormulaError::ArityMismatch {
                relation: rel.name().to_string(),
                expected: rel.arity(),
                found: args.len(),
            });
        }
        for a in &args {
            if let Arg::Var(v) = *a {
                if v >= self.n {
                    return Err(FormulaError::VarOutOfRange { var: v, n: self.n });
                }
            }
        }
        self.clauses.push(Clause { relation, args });
        Ok(())
    }

    /// Adds a clause over variables only, registering the relation if needed.
    pub fn push(&mut self, rel: &Relation, vars: &[usize]) -> Result<(), FormulaError> {
        let idx = self.add_relation(rel.clone())?;
        self.add_clause(idx, vars.iter().map(|&v| Arg::Var(v)).collect())
    }

    /// Adds a clause with explicit arguments, registering the relation if needed.
    pub fn push_args(&mut self, rel: &Relation, args: Vec<Arg>) -> Result<(), FormulaError> {
        let idx = self.add_relation(rel.clone())?;
        self.add_clause(idx, args)
    }

    /// Tuple index of a clause under an assignment.
    #[inline]
    fn clause_tuple(&self, c: &Clause, a: &Assignment) -> u32 {
        c.args.iter().fold(0u32, |acc, arg| {
            acc << 1
                | u32::from(match *arg {
                    Arg::Var(v) => a.get(v),
                    Arg::Const(b) => b,
                })
        })
    }

    pub fn clause_satisfied(&self, idx: usize, a: &Assignment) -> bool {
        let c = &self.clauses[idx];
        self.relations[c.relation].contains(self.clause_tuple(c, a))
    }

    pub fn evaluate(&self, a: &Assignment) -> bool {
        assert_eq!(a.len(), self.n, "assignment length must match the formula");
        self.clauses
            .iter()
            .all(|c| self.relations[c.relation].contains(self.clause_tuple(c, a)))
    }

    pub fn try_evaluate(&self, a: &Assignment) -> Result<bool, FormulaError> {
        if a.len() != self.n {
            return Err(FormulaError::LengthMismatch {
                expected: self.n,
                found: a.len(),
            });
        }
        Ok(self.evaluate(a))
    }

    /// Distinct variables of a clause in order of first occurrence.
    pub fn clause_vars(&self, idx: usize) -> Vec<usize> {
        let mut vars = Vec::new();
        for a in &self.clauses[idx].args {
            if let Arg::Var(v) = *a {
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
        }
        vars
    }

    /// Effective relation of a clause on its distinct variables (returned
    /// alongside, in first-occurrence order). A clause without variables
    /// yields `Ok(None)` when satisfied.
    pub fn clause_relation(&self, idx: usize) -> Result<Option<(Relation, Vec<usize>)>, FormulaError> {
        let c = self.clauses.get(idx).ok_or(FormulaError::ClauseIndex(idx))?;
        let rel = &self.relations[c.relation];
        let bindings: Vec<Binding> = c
            .args
            .iter()
            .map(|a| match *a {
                Arg::Var(v) => Binding::Var(v),
                Arg::Const(b) => Binding::Const(b),
            })
            .collect();
        let vars = self.clause_vars(idx);
        if vars.is_empty() {
            let tuple = c.args.iter().fold(0u32, |acc, a| {
                acc << 1 | u32::from(matches!(a, Arg::Const(true)))
            });
            return if rel.contains(tuple) {
                Ok(None)
            } else {
                Err(RelationError::EmptyResult.into())
            };
        }
        let r = rel.substitute(&bindings)?;
        Ok(Some((r, vars)))
    }

    /// Precomputed evaluator over integer codes, for `n ≤ 64`.
    pub fn compile(&self) -> CompiledFormula {
        assert!(self.n <= 64);
        CompiledFormula::new(self)
    }
}

/// Clause data laid out for fast evaluation on integer codes.
#[derive(Clone, Debug)]
pub struct CompiledFormula {
    n: usize,
    clauses: Vec<CompiledClause>,
}

#[derive(Clone, Debug)]
struct CompiledClause {
    /// For each argument, shift of the variable in the code, or a constant.
    args: Vec<Result<u32, bool>>,
    bits: Vec<u64>,
}

impl CompiledFormula {
    fn new(f: &Formula) -> Self {
        let n = f.n;
        let clauses = f
            .clauses
            .iter()
            .map(|c| {
                let rel = &f.relations[c.relation];
                let size = 1usize << rel.arity();
                let mut bits = vec![0u64; size.div_ceil(64)];
                for &m in rel.members() {
                    bits[m as usize / 64] |= 1 << (m % 64);
                }
                CompiledClause {
                    args: c
                        .args
                        .iter()
                        .map(|a| match *a {
                            Arg::Var(v) => Ok((n - 1 - v) as u32),
                            Arg::Const(b) => Err(b),
                        })
                        .collect(),
                    bits,
                }
            })
            .collect();
        CompiledFormula { n, clauses }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn eval(&self, code: u64) -> bool {
        self.clauses.iter().all(|c| {
            let t = c.args.iter().fold(0usize, |acc, a| {
                acc << 1
                    | match *a {
                        Ok(shift) => (code >> shift & 1) as usize,
                        Err(b) => b as usize,
                    }
            });
            c.bits[t / 64] >> (t % 64) & 1 == 1
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::named::*;

    fn m_formula() -> Formula {
        let mut f = Formula::new(3);
        f.push(&m(), &[0, 1, 2]).unwrap();
        f
    }

    #[test]
    fn evaluate_examples() {
        let f = m_formula();
        assert!(f.evaluate(&Assignment::parse("100").unwrap()));
        assert!(!f.evaluate(&Assignment::parse("000").unwrap()));
        assert!(Formula::new(2).evaluate(&Assignment::parse("10").unwrap()));
    }

    #[test]
    fn compiled_agrees_with_evaluate() {
        let mut f = m_formula();
        f.push_args(&nae(), vec![Arg::Var(0), Arg::Const(true), Arg::Var(2)]).unwrap();
        let c = f.compile();
        for code in 0..8 {
            assert_eq!(c.eval(code), f.evaluate(&Assignment::from_code(code, 3)));
        }
    }

    #[test]
    fn clause_relation_examples() {
        let mut f = Formula::new(2);
        f.push(&nae(), &[0, 0, 1]).unwrap();
        f.push_args(&or(), vec![Arg::Var(0), Arg::Const(true)]).unwrap();
        f.push_args(&or(), vec![Arg::Var(0), Arg::Const(false)]).unwrap();
        let (r0, v0) = f.clause_relation(0).unwrap().unwrap();
        assert_eq!(r0.members(), &[0b01, 0b10]);
        assert_eq!(v0, vec![0, 1]);
        assert_eq!(f.clause_relation(1).unwrap().unwrap().0.members(), &[0, 1]);
        assert_eq!(f.clause_relation(2).unwrap().unwrap().0.members(), &[1]);
    }

    #[test]
    fn arity_and_range_checked() {
        let mut f = Formula::new(2);
        assert!(matches!(f.push(&nae(), &[0, 1]), Err(FormulaError::ArityMismatch { .. })));
        assert!(matches!(f.push(&or(), &[0, 5]), Err(FormulaError::VarOutOfRange { .. })));
        assert!(matches!(
            f.add_relation(or().renamed("NAE")),
            Err(FormulaError::RelationConflict(_))
        ));
    }

    #[test]
    fn assignment_basics() {
        let a = Assignment::parse("1011").unwrap();
        assert_eq!(a.to_code(), Some(0b1011));
        assert_eq!(Assignment::from_code(0b1011, 4), a);
        assert_eq!(a.hamming(&Assignment::parse("0010").unwrap()), 2);
        assert!(Assignment::parse("0111").unwrap() < a);
        assert_eq!(a.restrict(&[3, 0]).to_string(), "11");
        let wide = Assignment::zeros(130).flipped(129);
        assert!(wide.get(129) && !wide.get(128));
        assert!(Assignment::zeros(130) < wide);
    }
}
