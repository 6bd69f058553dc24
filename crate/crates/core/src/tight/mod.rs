//! Polynomial deciders for tight relation sets: st-connectivity by greedy
//! walks, connectivity for bijunctive, affine and componentwise-IHSB
//! formulas, and disconnection certificates.

mod conn;

pub use conn::{conn_auto, conn_poly};

use crate::formulas::{Assignment, Formula, FormulaError};
use crate::relations::{Relation, RelationFlags, TightClass};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TightError {
    #[error("relation `{relation}` is not {class}")]
    NotTight { relation: String, class: TightClass },
    #[error("{0} is not a solution")]
    NotASolution(String),
    #[error("method {method} does not apply: {reason}")]
    MethodInapplicable { method: String, reason: String },
    #[error("the formula is unsatisfiable")]
    Unsatisfiable,
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

/// Evidence attached to a negative connectivity answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// Two solutions in different components.
    Pair(Assignment, Assignment),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub answer: bool,
    pub path: Option<Vec<Assignment>>,
    pub certificate: Option<Certificate>,
    pub method: String,
}

/// Relations referenced by at least one clause.
pub fn used_relations(f: &Formula) -> Vec<Relation> {
    let mut used = vec![false; f.relations().len()];
    for c in f.clauses() {
        used[c.relation] = true;
    }
    f.relations()
        .iter()
        .zip(used)
        .filter(|(_, u)| *u)
        .map(|(r, _)| r.clone())
        .collect()
}

fn check_branch(f: &Formula, class: TightClass) -> Result<(), TightError> {
    for r in used_relations(f) {
        if !RelationFlags::of(&r).tight(class) {
            return Err(TightError::NotTight {
                relation: r.name().to_string(),
                class,
            });
        }
    }
    Ok(())
}

fn check_solution(f: &Formula, a: &Assignment) -> Result<(), TightError> {
    if a.len() != f.n() || !f.evaluate(a) {
        return Err(TightError::NotASolution(a.to_string()));
    }
    Ok(())
}

/// Clause indices per variable, for incremental satisfaction checks.
struct Occurrences {
    by_var: Vec<Vec<usize>>,
}

impl Occurrences {
    fn new(f: &Formula) -> Self {
        let mut by_var = vec![Vec::new(); f.n()];
        for ci in 0..f.clauses().len() {
            for v in f.clause_vars(ci) {
                by_var[v].push(ci);
            }
        }
        Occurrences { by_var }
    }

    /// Whether flipping `v` in the solution `a` keeps every clause satisfied.
    fn flip_ok(&self, f: &Formula, a: &Assignment, v: usize) -> bool {
        let b = a.flipped(v);
        self.by_var[v].iter().all(|&ci| f.clause_satisfied(ci, &b))
    }
}

/// st-connectivity for a formula whose relations all lie in `class`.
pub fn stconn_tight(
    f: &Formula,
    class: TightClass,
    s: &Assignment,
    t: &Assignment,
) -> Result<Decision, TightError> {
    check_branch(f, class)?;
    check_solution(f, s)?;
    check_solution(f, t)?;
    let occ = Occurrences::new(f);
    let method = format!("greedy-{class}");
    if s == t {
        return Ok(Decision {
            answer: true,
            path: Some(vec![s.clone()]),
            certificate: None,
            method,
        });
    }
    match class {
        TightClass::ComponentwiseBijunctive => {
            let mut cur = s.clone();
            let mut path = vec![cur.clone()];
            while &cur != t {
                let step = cur.diff(t).into_iter().find(|&i| occ.flip_ok(f, &cur, i));
                match step {
                    Some(i) => {
                        cur.flip(i);
                        path.push(cur.clone());
                    }
                    None => {
                        return Ok(Decision {
                            answer: false,
                            path: None,
                            certificate: Some(Certificate::Pair(s.clone(), t.clone())),
                            method,
                        })
                    }
                }
            }
            Ok(Decision {
                answer: true,
                path: Some(path),
                certificate: None,
                method,
            })
        }
        TightClass::OrFree | TightClass::NandFree => {
            let toward = class == TightClass::NandFree;
            let down_s = monotone_walk(f, &occ, s, toward);
            let down_t = monotone_walk(f, &occ, t, toward);
            if down_s.last() != down_t.last() {
                return Ok(Decision {
                    answer: false,
                    path: None,
                    certificate: Some(Certificate::Pair(s.clone(), t.clone())),
                    method,
                });
            }
            let mut path = down_s;
            path.extend(down_t.into_iter().rev().skip(1));
            Ok(Decision {
                answer: true,
                path: Some(path),
                certificate: None,
                method,
            })
        }
    }
}

/// Repeatedly flips the lowest-index variable whose value differs from
/// `target` while staying a solution. Returns the walk including `a`.
fn monotone_walk(f: &Formula, occ: &Occurrences, a: &Assignment, target: bool) -> Vec<Assignment> {
    let mut cur = a.clone();
    let mut walk = vec![cur.clone()];
    'outer: loop {
        for i in 0..f.n() {
            if cur.get(i) != target && occ.flip_ok(f, &cur, i) {
                cur.flip(i);
                walk.push(cur.clone());
                continue 'outer;
            }
        }
        return walk;
    }
}

/// Local minimum (or maximum, for `target = true`) reached by the monotone
/// walk from a solution.
pub fn monotone_endpoint(f: &Formula, a: &Assignment, target: bool) -> Assignment {
    let occ = Occurrences::new(f);
    monotone_walk(f, &occ, a, target).pop().unwrap()
}

/// True iff `s` and `t` are solutions in different components, decided by
/// the tight st-connectivity algorithm.
pub fn certificate_check(
    f: &Formula,
    class: TightClass,
    s: &Assignment,
    t: &Assignment,
) -> Result<bool, TightError> {
    check_branch(f, class)?;
    if s.len() != f.n() || t.len() != f.n() || !f.evaluate(s) || !f.evaluate(t) {
        return Ok(false);
    }
    Ok(!stconn_tight(f, class, s, t)?.answer)
}
