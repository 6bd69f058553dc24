//! Faithful expressions: gadgets `R(x) = ∃y φ(x, y)` whose witness spaces
//! are connected and shared across edges of `G(R)`, so that substituting
//! them into a formula preserves connectivity.
//!
//! The construction turns any non-tight relation set into gadgets for the
//! 2-clauses, the six length-4 path relations and the 3-clauses.

mod base;
mod kcnf;
mod pipeline;
mod steps;

pub use base::{base_two_clauses, faithfulness_examples, TwoClauses};
pub use kcnf::{clause_literals, kcnf_reduce, push_reduced_clause, KcnfReduction, Split};
pub use pipeline::{express_s3, Pipeline};
pub use steps::{
    path_relation, step1_expand, step2_isolate, step3_path4, step4_three_clauses, PathFamily, Step1, Step2,
    PATH_REPRESENTATIVES,
};

use crate::formulas::{Arg, Assignment, Formula, FormulaError};
use crate::oracle::{enumerate_by_search, OracleError, DEFAULT_CAP};
use crate::relations::{io, Relation, RelationError};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExpressError {
    #[error("the relation set is tight")]
    NotNonTight,
    #[error("relation `{0}` is componentwise bijunctive")]
    AlreadyBijunctive(String),
    #[error("no pair of solutions has an expanding distance")]
    NoExpansion,
    #[error("not a path of length 4: {0}")]
    NotAPath(String),
    #[error("no gadget for relation `{0}`")]
    MissingGadget(String),
    #[error("clause {clause} repeats a variable")]
    RepeatedVariable { clause: usize },
    #[error("clause {clause} is not a disjunction of literals")]
    NotClausal { clause: usize },
    #[error("construction check failed: {0}")]
    Postcondition(String),
    #[error("gadget header: {0}")]
    Header(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Relation(#[from] RelationError),
}

/// `target(x) = ∃y formula(x, y)`, with `x_vars` listed in coordinate order.
/// Every formula variable is in exactly one of `x_vars`, `y_vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaithfulExpression {
    pub target: Relation,
    pub formula: Formula,
    pub x_vars: Vec<usize>,
    pub y_vars: Vec<usize>,
}

/// First failed faithfulness condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum Violation {
    /// Condition 1: the projection has `tuple` iff the target does not.
    Projection { tuple: String, in_target: bool },
    /// Condition 2: the witnesses of `a` are disconnected.
    WitnessDisconnected { a: String },
    /// Condition 3: neighbours `a`, `b` of the target share no witness.
    NoCommonWitness { a: String, b: String },
}

impl Violation {
    pub fn condition(&self) -> u8 {
        match self {
            Violation::Projection { .. } => 1,
            Violation::WitnessDisconnected { .. } => 2,
            Violation::NoCommonWitness { .. } => 3,
        }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Projection { tuple, in_target: true } => {
                write!(f, "condition 1: {tuple} is in the target but has no witness")
            }
            Violation::Projection { tuple, in_target: false } => {
                write!(f, "condition 1: {tuple} has a witness but is not in the target")
            }
            Violation::WitnessDisconnected { a } => write!(f, "condition 2: witnesses of {a} are disconnected"),
            Violation::NoCommonWitness { a, b } => {
                write!(f, "condition 3: neighbours {a} and {b} share no witness")
            }
        }
    }
}

impl FaithfulExpression {
    /// The relation expressed by itself, without witnesses.
    pub fn identity(target: &Relation) -> Self {
        let k = target.arity();
        let mut formula = Formula::new(k);
        formula
            .push(target, &(0..k).collect::<Vec<_>>())
            .expect("fresh formula");
        FaithfulExpression {
            target: target.clone(),
            formula,
            x_vars: (0..k).collect(),
            y_vars: Vec::new(),
        }
    }

    pub fn total_vars(&self) -> usize {
        self.formula.n()
    }

    /// Witness sets keyed by the projection onto `x_vars`, both sides in
    /// ascending encoding order.
    pub fn witness_sets(&self) -> Result<BTreeMap<Assignment, Vec<Assignment>>, ExpressError> {
        self.witness_sets_capped(DEFAULT_CAP)
    }

    pub fn witness_sets_capped(&self, cap: usize) -> Result<BTreeMap<Assignment, Vec<Assignment>>, ExpressError> {
        self.check_layout()?;
        let n = self.formula.n();
        if n > cap {
            return Err(OracleError::CapExceeded { n, cap }.into());
        }
        let limit = 1usize << cap.min(30);
        let mut sets: BTreeMap<Assignment, Vec<Assignment>> = BTreeMap::new();
        for s in enumerate_by_search(&self.formula, limit)? {
            sets.entry(s.restrict(&self.x_vars))
                .or_default()
                .push(s.restrict(&self.y_vars));
        }
        for w in sets.values_mut() {
            w.sort_unstable();
        }
        Ok(sets)
    }

    fn check_layout(&self) -> Result<(), ExpressError> {
        let n = self.formula.n();
        let mut seen = vec![false; n];
        for &v in self.x_vars.iter().chain(&self.y_vars) {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(ExpressError::Postcondition(format!(
                    "variable x{} is listed twice or out of range",
                    v + 1
                )));
            }
        }
        if seen.iter().any(|s| !s) || self.x_vars.len() != self.target.arity() {
            return Err(ExpressError::Postcondition(
                "x_vars and y_vars must partition the variables, x_vars matching the target arity".into(),
            ));
        }
        Ok(())
    }
}

/// Checks the three faithfulness conditions by enumeration. `Ok(None)`
/// means faithful.
pub fn verify_faithful(e: &FaithfulExpression) -> Result<Option<Violation>, ExpressError> {
    verify_faithful_capped(e, DEFAULT_CAP)
}

pub fn verify_faithful_capped(e: &FaithfulExpression, cap: usize) -> Result<Option<Violation>, ExpressError> {
    let sets = e.witness_sets_capped(cap)?;
    let k = e.target.arity();
    let projected: BTreeSet<u32> = sets.keys().map(|a| a.to_code().unwrap() as u32).collect();
    for t in 0..(1u32 << k) {
        let in_target = e.target.contains(t);
        if in_target != projected.contains(&t) {
            return Ok(Some(Violation::Projection {
                tuple: e.target.format_tuple(t),
                in_target,
            }));
        }
    }
    for (a, w) in &sets {
        if !cube_connected(w) {
            return Ok(Some(Violation::WitnessDisconnected { a: a.to_string() }));
        }
    }
    for (a, wa) in &sets {
        for i in 0..k {
            let b = a.flipped(i);
            if b <= *a {
                continue;
            }
            if let Some(wb) = sets.get(&b) {
                let common = wa.iter().any(|w| wb.binary_search(w).is_ok());
                if !common {
                    return Ok(Some(Violation::NoCommonWitness {
                        a: a.to_string(),
                        b: b.to_string(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Connectivity of a sorted vertex set in the hypercube.
fn cube_connected(points: &[Assignment]) -> bool {
    if points.is_empty() {
        return true;
    }
    let n = points[0].len();
    let mut seen = vec![false; points.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let mut count = 1;
    while let Some(i) = queue.pop_front() {
        for b in 0..n {
            if let Ok(j) = points.binary_search(&points[i].flipped(b)) {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    queue.push_back(j);
                }
            }
        }
    }
    count == points.len()
}

/// A formula with gadgets substituted for its clauses. Variables
/// `0..psi.n()` are the original ones; the rest are witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    pub formula: Formula,
    /// Name of each witness variable, `y<clause>_<k>` (both 1-based).
    pub witness_names: Vec<String>,
}

impl Composition {
    pub fn witness_vars(&self, original: usize) -> Vec<usize> {
        (original..self.formula.n()).collect()
    }
}

/// Replaces every clause of `psi` by its gadget with a fresh witness block.
pub fn compose(psi: &Formula, gadgets: &HashMap<String, FaithfulExpression>) -> Result<Composition, ExpressError> {
    let mut out = Formula::new(psi.n());
    let mut witness_names = Vec::new();
    for (ci, clause) in psi.clauses().iter().enumerate() {
        let rel = psi.relation(clause.relation);
        let g = gadgets
            .get(rel.name())
            .ok_or_else(|| ExpressError::MissingGadget(rel.name().to_string()))?;
        if !g.target.same_tuples(rel) {
            return Err(ExpressError::Postcondition(format!(
                "gadget for `{}` expresses a different relation",
                rel.name()
            )));
        }
        let vars: Vec<usize> = clause
            .args
            .iter()
            .filter_map(|a| match a {
                Arg::Var(v) => Some(*v),
                Arg::Const(_) => None,
            })
            .collect();
        if vars.iter().collect::<BTreeSet<_>>().len() != vars.len() {
            return Err(ExpressError::RepeatedVariable { clause: ci });
        }
        let mut map: Vec<Option<Arg>> = vec![None; g.formula.n()];
        for (p, &x) in g.x_vars.iter().enumerate() {
            map[x] = Some(clause.args[p]);
        }
        for (k, &y) in g.y_vars.iter().enumerate() {
            map[y] = Some(Arg::Var(out.add_var()));
            witness_names.push(format!("y{}_{}", ci + 1, k + 1));
        }
        append_mapped(&mut out, &g.formula, &map)?;
    }
    Ok(Composition { formula: out, witness_names })
}

/// Copies the clauses of `g` into `out`, renaming variables through `map`.
pub(crate) fn append_mapped(out: &mut Formula, g: &Formula, map: &[Option<Arg>]) -> Result<(), ExpressError> {
    for c in g.clauses() {
        let rel = out.add_relation(g.relation(c.relation).clone())?;
        let args = c
            .args
            .iter()
            .map(|a| match *a {
                Arg::Var(v) => map[v].expect("every gadget variable is mapped"),
                k => k,
            })
            .collect();
        out.add_clause(rel, args)?;
    }
    Ok(())
}

/// Rewrites a gadget over derived relations into one over `base`, expanding
/// every non-base relation through `gadgets` until none remain.
pub fn lower(
    e: &FaithfulExpression,
    gadgets: &HashMap<String, FaithfulExpression>,
    base: &[Relation],
) -> Result<FaithfulExpression, ExpressError> {
    let mut memo = HashMap::new();
    lower_memo(e, gadgets, base, &mut memo, 0)
}

fn lower_memo(
    e: &FaithfulExpression,
    gadgets: &HashMap<String, FaithfulExpression>,
    base: &[Relation],
    memo: &mut HashMap<String, FaithfulExpression>,
    depth: usize,
) -> Result<FaithfulExpression, ExpressError> {
    if depth > 64 {
        return Err(ExpressError::Postcondition("gadget definitions are cyclic".into()));
    }
    let mut level: HashMap<String, FaithfulExpression> = HashMap::new();
    for r in e.formula.relations() {
        if level.contains_key(r.name()) {
            continue;
        }
        let lowered = if base.iter().any(|b| b.name() == r.name()) {
            FaithfulExpression::identity(r)
        } else if let Some(done) = memo.get(r.name()) {
            done.clone()
        } else {
            let g = gadgets
                .get(r.name())
                .ok_or_else(|| ExpressError::MissingGadget(r.name().to_string()))?;
            let done = lower_memo(g, gadgets, base, memo, depth + 1)?;
            memo.insert(r.name().to_string(), done.clone());
            done
        };
        level.insert(r.name().to_string(), lowered);
    }
    let composed = compose(&e.formula, &level)?;
    let mut y_vars = e.y_vars.clone();
    y_vars.extend(composed.witness_vars(e.formula.n()));
    Ok(FaithfulExpression {
        target: e.target.clone(),
        formula: composed.formula,
        x_vars: e.x_vars.clone(),
        y_vars,
    })
}

/// `.csp` text with `#@` header lines naming the target and the variable
/// roles.
pub fn serialize_gadget(e: &FaithfulExpression) -> String {
    let names = |vs: &[usize]| vs.iter().map(|v| format!("x{}", v + 1)).collect::<Vec<_>>().join(" ");
    let mut s = format!("#@ target {}\n", io::relation_line(&e.target));
    s.push_str(&format!("#@ x_vars {}\n", names(&e.x_vars)));
    s.push_str(&format!("#@ y_vars {}\n", names(&e.y_vars)));
    s.push_str(&crate::formulas::serialize_formula(&e.formula));
    s
}

pub fn parse_gadget(text: &str) -> Result<FaithfulExpression, ExpressError> {
    let mut target = None;
    let mut x_vars = None;
    let mut y_vars = None;
    let parse_vars = |rest: &str| -> Result<Vec<usize>, ExpressError> {
        rest.split_whitespace()
            .map(|w| {
                w.strip_prefix('x')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&i| i >= 1)
                    .map(|i| i - 1)
                    .ok_or_else(|| ExpressError::Header(format!("bad variable `{w}`")))
            })
            .collect()
    };
    for line in text.lines() {
        let Some(rest) = line.strip_prefix("#@") else {
            continue;
        };
        let rest = rest.trim();
        let (key, value) = rest.split_once(' ').unwrap_or((rest, ""));
        match key {
            "target" => {
                target = Some(io::parse_relation_line(value.trim())?);
            }
            "x_vars" => x_vars = Some(parse_vars(value)?),
            "y_vars" => y_vars = Some(parse_vars(value)?),
            other => return Err(ExpressError::Header(format!("unknown key `{other}`"))),
        }
    }
    let e = FaithfulExpression {
        target: target.ok_or_else(|| ExpressError::Header("missing target".into()))?,
        formula: crate::formulas::parse_formula(text)?,
        x_vars: x_vars.ok_or_else(|| ExpressError::Header("missing x_vars".into()))?,
        y_vars: y_vars.unwrap_or_default(),
    };
    e.check_layout()?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::named::*;

    #[test]
    fn identity_is_faithful() {
        for r in [nae(), m(), or(), one_in_three()] {
            assert_eq!(verify_faithful(&FaithfulExpression::identity(&r)).unwrap(), None);
        }
    }

    #[test]
    fn projection_mismatch_reported() {
        let mut e = FaithfulExpression::identity(&nand());
        e.target = or();
        let v = verify_faithful(&e).unwrap().unwrap();
        assert_eq!(v.condition(), 1);
        assert_eq!(
            v,
            Violation::Projection {
                tuple: "00".into(),
                in_target: false
            }
        );
    }

    #[test]
    fn equality_witness_is_disconnected() {
        // x free, with witnesses y1 = y2 ranging over {00, 11}
        let mut f = Formula::new(3);
        f.push(&eq(), &[1, 2]).unwrap();
        f.push(&Relation::full("T", 1).unwrap(), &[0]).unwrap();
        let e = FaithfulExpression {
            target: Relation::full("T", 1).unwrap(),
            formula: f,
            x_vars: vec![0],
            y_vars: vec![1, 2],
        };
        assert_eq!(
            verify_faithful(&e).unwrap(),
            Some(Violation::WitnessDisconnected { a: "0".into() })
        );
    }

    #[test]
    fn compose_single_clause_renames() {
        let g = FaithfulExpression::identity(&nae());
        let mut psi = Formula::new(4);
        psi.push(&nae(), &[3, 1, 0]).unwrap();
        let c = compose(&psi, &HashMap::from([("NAE".to_string(), g)])).unwrap();
        assert_eq!(c.formula, psi);
        assert!(c.witness_names.is_empty());
    }

    #[test]
    fn compose_rejects_missing_and_repeated() {
        let mut psi = Formula::new(2);
        psi.push(&nae(), &[0, 1, 0]).unwrap();
        let empty = HashMap::new();
        assert_eq!(compose(&psi, &empty), Err(ExpressError::MissingGadget("NAE".into())));
        let g = HashMap::from([("NAE".to_string(), FaithfulExpression::identity(&nae()))]);
        assert_eq!(compose(&psi, &g), Err(ExpressError::RepeatedVariable { clause: 0 }));
    }

    #[test]
    fn gadget_text_round_trip() {
        let tc = base_two_clauses(&[nae()]).unwrap();
        let text = serialize_gadget(&tc.imp);
        assert!(text.starts_with("#@ target relation IMP 2 : 00 10 11\n"));
        assert_eq!(parse_gadget(&text).unwrap(), tc.imp);
    }
}
