use super::OracleError;
use crate::formulas::{Arg, Assignment, Formula};

struct SearchClause {
    /// Per argument: variable index or constant.
    args: Vec<Arg>,
    members: Vec<u32>,
}

struct Search<'a> {
    clauses: Vec<SearchClause>,
    occ: Vec<Vec<usize>>,
    value: Vec<Option<bool>>,
    trail: Vec<usize>,
    out: &'a mut Vec<Assignment>,
    limit: usize,
}

/// Exact enumeration by backtracking with per-clause support propagation.
/// Errors once more than `limit` solutions are found.
pub fn enumerate_by_search(f: &Formula, limit: usize) -> Result<Vec<Assignment>, OracleError> {
    let n = f.n();
    let clauses: Vec<SearchClause> = f
        .clauses()
        .iter()
        .map(|c| SearchClause {
            args: c.args.clone(),
            members: f.relation(c.relation).members().to_vec(),
        })
        .collect();
    let mut occ = vec![Vec::new(); n];
    for (ci, c) in clauses.iter().enumerate() {
        for a in &c.args {
            if let Arg::Var(v) = *a {
                if !occ[v].contains(&ci) {
                    occ[v].push(ci);
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut s = Search {
        clauses,
        occ,
        value: vec![None; n],
        trail: Vec::new(),
        out: &mut out,
        limit,
    };
    let all: Vec<usize> = (0..s.clauses.len()).collect();
    if s.propagate_clauses(all) {
        s.branch(0)?;
    }
    out.sort_unstable();
    Ok(out)
}

impl Search<'_> {
    fn assign(&mut self, v: usize, b: bool) {
        self.value[v] = Some(b);
        self.trail.push(v);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            self.value[v] = None;
        }
    }

    /// Narrows every listed clause to its supported values; false on conflict.
    fn propagate_clauses(&mut self, mut work: Vec<usize>) -> bool {
        while let Some(ci) = work.pop() {
            let c = &self.clauses[ci];
            let k = c.args.len();
            let mut seen0 = 0u32;
            let mut seen1 = 0u32;
            let mut any = false;
            'tuples: for &t in &c.members {
                for (p, a) in c.args.iter().enumerate() {
                    let bit = t >> (k - 1 - p) & 1 == 1;
                    let fixed = match *a {
                        Arg::Const(b) => Some(b),
                        Arg::Var(v) => self.value[v],
                    };
                    if fixed.is_some_and(|b| b != bit) {
                        continue 'tuples;
                    }
                }
                // repeated variables must agree within the tuple
                for (p, a) in c.args.iter().enumerate() {
                    if let Arg::Var(v) = *a {
                        for (q, b) in c.args.iter().enumerate().skip(p + 1) {
                            if *b == Arg::Var(v) && (t >> (k - 1 - p) & 1) != (t >> (k - 1 - q) & 1) {
                                continue 'tuples;
                            }
                        }
                    }
                }
                any = true;
                seen0 |= !t;
                seen1 |= t;
            }
            if !any {
                return false;
            }
            let mut forced = Vec::new();
            for (p, a) in c.args.iter().enumerate() {
                if let Arg::Var(v) = *a {
                    if self.value[v].is_none() {
                        let s0 = seen0 >> (k - 1 - p) & 1 == 1;
                        let s1 = seen1 >> (k - 1 - p) & 1 == 1;
                        if s0 != s1 {
                            forced.push((v, s1));
                        }
                    }
                }
            }
            for (v, b) in forced {
                if self.value[v].is_none() {
                    self.assign(v, b);
                    work.extend(self.occ[v].iter().copied());
                }
            }
        }
        true
    }

    fn branch(&mut self, from: usize) -> Result<(), OracleError> {
        let Some(v) = (from..self.value.len()).find(|&v| self.value[v].is_none()) else {
            if self.out.len() >= self.limit {
                return Err(OracleError::SolutionLimit { limit: self.limit });
            }
            let bits: Vec<bool> = self.value.iter().map(|b| b.unwrap()).collect();
            self.out.push(Assignment::from_bits(&bits));
            return Ok(());
        };
        for b in [false, true] {
            let mark = self.trail.len();
            self.assign(v, b);
            let work = self.occ[v].clone();
            if self.propagate_clauses(work) {
                self.branch(v + 1)?;
            }
            self.undo_to(mark);
        }
        Ok(())
    }
}
