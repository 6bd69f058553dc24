//! Seeded inputs shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use solgraph::oracle::enumerate_by_search;
use solgraph::random::{method_pool, random_formula, tight_pool};
use solgraph::{Assignment, ConnMethod, Formula, TightClass};

pub const SEED: u64 = 0x5eed;

/// Random formula over one tight branch, without constants.
pub fn tight_instance(class: TightClass, n: usize, clauses: usize) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    random_formula(&mut rng, n, clauses, &tight_pool(class), 0.0)
}

/// Random formula a connectivity method applies to.
pub fn method_instance(method: ConnMethod, n: usize, clauses: usize) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    random_formula(&mut rng, n, clauses, &method_pool(method), 0.0)
}

/// Satisfiable instance of `class` together with two of its solutions.
pub fn tight_with_endpoints(class: TightClass, n: usize, clauses: usize) -> (Formula, Assignment, Assignment) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let pool = tight_pool(class);
    loop {
        let f = random_formula(&mut rng, n, clauses, &pool, 0.0);
        if let Ok(sols) = enumerate_by_search(&f, 256) {
            if sols.len() >= 2 {
                let t = sols.last().unwrap().clone();
                return (f, sols[0].clone(), t);
            }
        }
    }
}
