use super::{lower, ExpressError, FaithfulExpression};
use crate::formulas::{Arg, Formula};
use crate::relations::{classify_set, named, Binding, Relation, SubstitutionWitness};
use std::collections::HashMap;

/// Gadgets for `OR`, `NAND` and `IMP = (x1 ∨ ¬x2)` over a non-tight set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoClauses {
    pub or: FaithfulExpression,
    pub nand: FaithfulExpression,
    pub imp: FaithfulExpression,
}

impl TwoClauses {
    pub fn as_map(&self) -> HashMap<String, FaithfulExpression> {
        [&self.or, &self.nand, &self.imp]
            .into_iter()
            .map(|g| (g.target.name().to_string(), g.clone()))
            .collect()
    }
}

fn by_substitution(rel: &Relation, w: &SubstitutionWitness, target: Relation) -> FaithfulExpression {
    let args = w
        .bindings(rel.arity(), 0, 1)
        .into_iter()
        .map(|b| match b {
            Binding::Var(v) => Arg::Var(v),
            Binding::Const(c) => Arg::Const(c),
            Binding::Free => unreachable!("every position is bound"),
        })
        .collect();
    let mut formula = Formula::new(2);
    formula.push_args(rel, args).expect("fresh formula");
    FaithfulExpression {
        target,
        formula,
        x_vars: vec![0, 1],
        y_vars: Vec::new(),
    }
}

pub fn base_two_clauses(rels: &[Relation]) -> Result<TwoClauses, ExpressError> {
    if rels.is_empty() || classify_set(rels).verdict.is_tight() {
        return Err(ExpressError::NotNonTight);
    }
    let mut or = None;
    let mut nand = None;
    for r in rels {
        let report = r.or_nand_free();
        if or.is_none() {
            or = report.or_witness.map(|w| by_substitution(r, &w, named::or()));
        }
        if nand.is_none() {
            nand = report.nand_witness.map(|w| by_substitution(r, &w, named::nand()));
        }
    }
    let (or, nand) = (or.unwrap(), nand.unwrap());

    // (x1 ∨ ¬x2) = ∃y (x1 ∨ y) ∧ (¬y ∨ ¬x2)
    let mut f = Formula::new(3);
    f.push(&named::or(), &[0, 2]).unwrap();
    f.push(&named::nand(), &[2, 1]).unwrap();
    let working = FaithfulExpression {
        target: named::imp(),
        formula: f,
        x_vars: vec![0, 1],
        y_vars: vec![2],
    };
    let gadgets = HashMap::from([("OR".to_string(), or.clone()), ("NAND".to_string(), nand.clone())]);
    let imp = lower(&working, &gadgets, rels)?;
    Ok(TwoClauses { or, nand, imp })
}

/// The two expressions of `(x1 ∨ x2 ∨ x3)` by not-all-equal constraints:
/// `NAE(x1,x2,y1) ∧ NAE(x2,x3,y2) ∧ NAE(y1,y2,1)`, which is faithful, and
/// `NAE(x1,x2,y1) ∧ NAE(¬y1,x3,0) ∧ NAE(y1,x2,1)`, which is not.
pub fn faithfulness_examples() -> (FaithfulExpression, FaithfulExpression) {
    let nae = named::nae();
    let target = named::d(0);
    let v = Arg::Var;

    let mut good = Formula::new(5);
    good.push(&nae, &[0, 1, 3]).unwrap();
    good.push(&nae, &[1, 2, 4]).unwrap();
    good.push_args(&nae, vec![v(3), v(4), Arg::Const(true)]).unwrap();

    let nae_neg = nae.negate_coords(0b100, "NAE_N1");
    let mut bad = Formula::new(4);
    bad.push(&nae, &[0, 1, 3]).unwrap();
    bad.push_args(&nae_neg, vec![v(3), v(2), Arg::Const(false)]).unwrap();
    bad.push_args(&nae, vec![v(3), v(1), Arg::Const(true)]).unwrap();

    (
        FaithfulExpression {
            target: target.clone(),
            formula: good,
            x_vars: vec![0, 1, 2],
            y_vars: vec![3, 4],
        },
        FaithfulExpression {
            target,
            formula: bad,
            x_vars: vec![0, 1, 2],
            y_vars: vec![3],
        },
    )
}
