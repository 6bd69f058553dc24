//! Random relations and formulas for property tests, acceptance runs and
//! benchmarks.

use crate::formulas::{Arg, Formula};
use crate::relations::{closed_under, ClosureOp, ConnMethod, Relation, RelationFlags, TightClass};
use rand::seq::SliceRandom;
use rand::Rng;

/// Every non-empty relation of arity `1..=max_arity`, named `R<k>_<hex>`
/// after its membership mask.
pub fn all_relations(max_arity: usize) -> Vec<Relation> {
    assert!(max_arity <= 4, "enumerating all relations is only feasible up to arity 4");
    let mut out = Vec::new();
    for k in 1..=max_arity {
        let size = 1u32 << k;
        for mask in 1u64..(1u64 << size) {
            out.push(relation_from_mask(k, mask));
        }
    }
    out
}

/// The relation whose membership vector is `mask` (bit `i` for tuple `i`).
pub fn relation_from_mask(k: usize, mask: u64) -> Relation {
    Relation::from_indices(
        format!("R{k}_{mask:x}"),
        k,
        (0..(1u32 << k)).filter(|&t| mask >> t & 1 == 1),
    )
    .expect("mask is non-zero")
}

pub fn random_relation<R: Rng + ?Sized>(rng: &mut R, arity: usize) -> Relation {
    let size = 1u32 << arity;
    loop {
        let members: Vec<u32> = (0..size).filter(|_| rng.gen_bool(0.5)).collect();
        if !members.is_empty() {
            let mask = members.iter().fold(0u64, |m, &t| m | 1 << t);
            return relation_from_mask(arity, mask);
        }
    }
}

/// Arity-`1..=3` relations in one tight branch.
pub fn tight_pool(class: TightClass) -> Vec<Relation> {
    all_relations(3)
        .into_iter()
        .filter(|r| RelationFlags::of(r).tight(class))
        .collect()
}

/// Arity-`1..=3` relations to which a connectivity method applies.
pub fn method_pool(method: ConnMethod) -> Vec<Relation> {
    all_relations(3)
        .into_iter()
        .filter(|r| match method {
            ConnMethod::Bijunctive => closed_under(r, ClosureOp::Maj3),
            ConnMethod::Affine => closed_under(r, ClosureOp::Xor3),
            ConnMethod::IhsbMinus => {
                let f = RelationFlags::of(r);
                f.horn && f.componentwise_ihsb_minus
            }
            ConnMethod::IhsbPlus => {
                let f = RelationFlags::of(r);
                f.dual_horn && f.componentwise_ihsb_plus
            }
        })
        .collect()
}

/// A formula over `n` variables with `clauses` clauses drawn from `pool`.
/// Each argument is a constant with probability `const_prob`; variables in a
/// clause are distinct unless the relation's arity exceeds `n`.
pub fn random_formula<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    clauses: usize,
    pool: &[Relation],
    const_prob: f64,
) -> Formula {
    assert!(!pool.is_empty());
    let mut f = Formula::new(n);
    let vars: Vec<usize> = (0..n).collect();
    for _ in 0..clauses {
        let rel = pool.choose(rng).unwrap();
        let k = rel.arity();
        let picked: Vec<usize> = if k <= n {
            vars.choose_multiple(rng, k).copied().collect()
        } else {
            (0..k).map(|_| rng.gen_range(0..n)).collect()
        };
        let args = picked
            .into_iter()
            .map(|v| {
                if rng.gen_bool(const_prob) {
                    Arg::Const(rng.gen())
                } else {
                    Arg::Var(v)
                }
            })
            .collect();
        f.push_args(rel, args).expect("pool relations have unique names");
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn counts_of_small_relations() {
        assert_eq!(all_relations(3).len(), 3 + 15 + 255);
    }

    #[test]
    fn pools_are_non_trivial() {
        for class in TightClass::ALL {
            assert!(tight_pool(class).len() > 50, "{class}");
        }
        for m in ConnMethod::ALL {
            assert!(method_pool(m).len() > 10, "{m}");
        }
    }

    #[test]
    fn formulas_respect_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pool = tight_pool(TightClass::OrFree);
        let f = random_formula(&mut rng, 10, 25, &pool, 0.1);
        assert_eq!(f.n(), 10);
        assert_eq!(f.clauses().len(), 25);
    }
}
