use crate::relations::Relation;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A literal over a 0-based variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, positive: false }
    }

    pub fn negated(self) -> Self {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }

    pub fn holds(self, value: bool) -> bool {
        value == self.positive
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var + 1)
        } else {
            write!(f, "!x{}", self.var + 1)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClauseShape {
    /// Unit clauses and 2-clauses.
    TwoCnf,
    /// At most one positive literal.
    Horn,
    /// Units, `(x ∨ ¬y)`, and all-negative clauses of any width.
    IhsbMinus,
    /// Units, `(x ∨ ¬y)`, and all-positive clauses of any width.
    IhsbPlus,
}

impl ClauseShape {
    fn admits(self, width: usize, positives: usize) -> bool {
        let negatives = width - positives;
        match self {
            ClauseShape::TwoCnf => width <= 2,
            ClauseShape::Horn => positives <= 1,
            ClauseShape::IhsbMinus => width <= 1 || (width == 2 && positives <= 1) || positives == 0,
            ClauseShape::IhsbPlus => width <= 1 || (width == 2 && negatives <= 1) || negatives == 0,
        }
    }
}

/// Subsumption-minimal implied clauses of `shape` over the coordinates of
/// `rel` (variables `0..arity`), or `None` if their conjunction is not `rel`.
/// Clauses are sorted literal lists; the list is sorted lexicographically.
pub fn clausal_form(rel: &Relation, shape: ClauseShape) -> Option<Vec<Vec<Lit>>> {
    let k = rel.arity();
    let full = (1u32 << k) - 1;
    let mut masks: Vec<u32> = (1..=full).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));

    let mut kept: Vec<(u32, u32)> = Vec::new(); // (var mask, falsifying values)
    for &mask in &masks {
        let width = mask.count_ones() as usize;
        if shape == ClauseShape::TwoCnf && width > 2 {
            break;
        }
        let mut seen = vec![false; 1usize << width];
        for &m in rel.members() {
            seen[compress(m & mask, mask) as usize] = true;
        }
        for (pattern, &hit) in seen.iter().enumerate() {
            if hit {
                continue;
            }
            let falsifier = expand(pattern as u32, mask);
            // positive literal where the falsifying value is 0
            let positives = (mask & !falsifier).count_ones() as usize;
            if !shape.admits(width, positives) {
                continue;
            }
            let subsumed = kept
                .iter()
                .any(|&(m2, f2)| m2 & mask == m2 && falsifier & m2 == f2);
            if !subsumed {
                kept.push((mask, falsifier));
            }
        }
    }

    let clauses_hold = |t: u32| kept.iter().all(|&(m, f)| t & m != f);
    if (0..=full).any(|t| clauses_hold(t) != rel.contains(t)) {
        return None;
    }

    let mut out: Vec<Vec<Lit>> = kept
        .iter()
        .map(|&(mask, falsifier)| {
            (0..k)
                .filter(|&p| mask >> (k - 1 - p) & 1 == 1)
                .map(|p| Lit {
                    var: p,
                    positive: falsifier >> (k - 1 - p) & 1 == 0,
                })
                .collect()
        })
        .collect();
    out.sort();
    out.dedup();
    Some(out)
}

/// True iff `values` satisfies every clause.
pub fn clauses_satisfied_by(clauses: &[Vec<Lit>], values: &[bool]) -> bool {
    clauses
        .iter()
        .all(|c| c.iter().any(|l| l.holds(values[l.var])))
}

/// Packs the bits of `x` selected by `mask` into the low bits, preserving order.
fn compress(x: u32, mask: u32) -> u32 {
    let mut out = 0;
    let mut bit = 0;
    for p in 0..32 {
        if mask >> p & 1 == 1 {
            out |= (x >> p & 1) << bit;
            bit += 1;
        }
    }
    out
}

fn expand(x: u32, mask: u32) -> u32 {
    let mut out = 0;
    let mut bit = 0;
    for p in 0..32 {
        if mask >> p & 1 == 1 {
            out |= (x >> bit & 1) << p;
            bit += 1;
        }
    }
    out
}
