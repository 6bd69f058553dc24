use super::ExpressError;
use crate::formulas::{Arg, Assignment, Formula};
use crate::relations::{named, Relation};

/// Negation pattern of a relation that is a single clause: `true` where
/// the literal is negated. `None` unless exactly one tuple is missing.
pub fn clause_literals(rel: &Relation) -> Option<Vec<bool>> {
    let k = rel.arity();
    let total = 1usize << k;
    if rel.len() + 1 != total {
        return None;
    }
    let missing = (0..total as u32).find(|&t| !rel.contains(t))?;
    Some((0..k).map(|p| rel.coord(missing, p)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KcnfReduction {
    /// Original variables first, then one witness per split.
    pub formula: Formula,
    pub witnesses: Vec<usize>,
    pub splits: Vec<Split>,
}

impl KcnfReduction {
    /// Extends values of the original variables with the canonical witnesses.
    pub fn complete(&self, a: &mut Assignment) {
        for s in &self.splits {
            s.fill(a);
        }
    }
}

/// One clause wider than three: its literals `(arg, negated)` and the
/// witness chain introduced for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub literals: Vec<(Arg, bool)>,
    pub witnesses: Vec<usize>,
}

impl Split {
    /// Sets witness `k` to 1 iff none of the first `k + 2` literals holds,
    /// the unique choice when at most one literal holds.
    pub fn fill(&self, a: &mut Assignment) {
        let mut any = false;
        for (k, &y) in self.witnesses.iter().enumerate() {
            for &(arg, neg) in &self.literals[if k == 0 { 0 } else { k + 1 }..k + 2] {
                let v = match arg {
                    Arg::Var(v) => a.get(v),
                    Arg::Const(c) => c,
                };
                any |= v != neg;
            }
            a.set(y, !any);
        }
    }
}

/// Pushes a clause over at most three literals as some `D_i`, negated
/// literals first.
fn push_clause(f: &mut Formula, lits: &[(Arg, bool)]) -> Result<(), ExpressError> {
    let mut sorted: Vec<(Arg, bool)> = lits.to_vec();
    sorted.sort_by_key(|&(_, neg)| !neg);
    let negated = sorted.iter().filter(|(_, n)| *n).count();
    let rel = if sorted.len() == 3 {
        named::d(negated)
    } else {
        Relation::clause(format!("C{}_{}", sorted.len(), negated), sorted.len(), negated)?
    };
    f.push_args(&rel, sorted.into_iter().map(|(a, _)| a).collect())?;
    Ok(())
}

/// Appends the clause `∨ literals` to `f`, split into 3-clauses over fresh
/// witnesses when wider than three. Returns the split, if any.
pub fn push_reduced_clause(f: &mut Formula, literals: &[(Arg, bool)]) -> Result<Option<Split>, ExpressError> {
    if literals.len() <= 3 {
        push_clause(f, literals)?;
        return Ok(None);
    }
    let mut witnesses = Vec::new();
    let mut rest = literals.to_vec();
    while rest.len() > 3 {
        let y = f.add_var();
        witnesses.push(y);
        push_clause(f, &[rest[0], rest[1], (Arg::Var(y), false)])?;
        let mut next = vec![(Arg::Var(y), true)];
        next.extend_from_slice(&rest[2..]);
        rest = next;
    }
    push_clause(f, &rest)?;
    Ok(Some(Split {
        literals: literals.to_vec(),
        witnesses,
    }))
}

/// Splits every clause wider than three by
/// `(l1 ∨ … ∨ lw) = ∃y (l1 ∨ l2 ∨ y) ∧ (¬y ∨ l3 ∨ … ∨ lw)`.
pub fn kcnf_reduce(f: &Formula) -> Result<KcnfReduction, ExpressError> {
    let mut out = Formula::new(f.n());
    let mut witnesses = Vec::new();
    let mut splits = Vec::new();
    for (ci, c) in f.clauses().iter().enumerate() {
        let rel = f.relation(c.relation);
        let pattern = clause_literals(rel).ok_or(ExpressError::NotClausal { clause: ci })?;
        if rel.arity() <= 3 {
            out.push_args(rel, c.args.clone())?;
            continue;
        }
        let lits: Vec<(Arg, bool)> = c.args.iter().copied().zip(pattern).collect();
        if let Some(split) = push_reduced_clause(&mut out, &lits)? {
            witnesses.extend_from_slice(&split.witnesses);
            splits.push(split);
        }
    }
    Ok(KcnfReduction {
        formula: out,
        witnesses,
        splits,
    })
}
