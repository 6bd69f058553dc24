use super::{FormulaError, Lit};
use crate::graph::tarjan_scc;

/// A 2-CNF with its literal implication graph. Literal `x_v` is node `2v`,
/// `¬x_v` is node `2v+1`.
#[derive(Clone, Debug)]
pub struct TwoSat {
    n: usize,
    adj: Vec<Vec<usize>>,
    has_empty_clause: bool,
}

#[inline]
fn node(l: Lit) -> usize {
    2 * l.var + usize::from(!l.positive)
}

impl TwoSat {
    pub fn new(n: usize, clauses: &[Vec<Lit>]) -> Result<Self, FormulaError> {
        let mut adj = vec![Vec::new(); 2 * n];
        let mut has_empty_clause = false;
        for (ci, c) in clauses.iter().enumerate() {
            match c.as_slice() {
                [] => has_empty_clause = true,
                [a] => adj[node(a.negated())].push(node(*a)),
                [a, b] => {
                    adj[node(a.negated())].push(node(*b));
                    adj[node(b.negated())].push(node(*a));
                }
                _ => return Err(FormulaError::NotTwoCnf { clause: ci }),
            }
        }
        Ok(TwoSat { n, adj, has_empty_clause })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn implication_graph(&self) -> &[Vec<usize>] {
        &self.adj
    }

    /// A model, or `None` if unsatisfiable.
    pub fn solve(&self) -> Option<Vec<bool>> {
        self.solve_with(&[])
    }

    /// A model with the given literals forced true.
    pub fn solve_with(&self, forced: &[Lit]) -> Option<Vec<bool>> {
        if self.has_empty_clause {
            return None;
        }
        let mut adj = self.adj.clone();
        for &l in forced {
            adj[node(l.negated())].push(node(l));
        }
        let (_, comp) = tarjan_scc(&adj);
        let mut model = Vec::with_capacity(self.n);
        for v in 0..self.n {
            let (p, q) = (comp[2 * v], comp[2 * v + 1]);
            if p == q {
                return None;
            }
            // reverse topological ids: the literal later in topological order wins
            model.push(p < q);
        }
        Some(model)
    }
}

/// Convenience: solve a 2-CNF directly.
pub fn two_sat(n: usize, clauses: &[Vec<Lit>]) -> Result<Option<Vec<bool>>, FormulaError> {
    Ok(TwoSat::new(n, clauses)?.solve())
}
