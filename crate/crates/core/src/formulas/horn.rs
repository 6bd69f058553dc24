use super::{FormulaError, Lit};
use std::collections::VecDeque;

/// Minimal model of a Horn clause set extending the `fixed` partial
/// assignment, by unit propagation. `Ok(None)` means unsatisfiable.
pub fn horn_sat(
    n: usize,
    clauses: &[Vec<Lit>],
    fixed: &[Option<bool>],
) -> Result<Option<Vec<bool>>, FormulaError> {
    let fixed_at = |v: usize| fixed.get(v).copied().flatten();
    let mut value = vec![false; n];
    let mut remaining = vec![0usize; clauses.len()];
    let mut head: Vec<Option<usize>> = vec![None; clauses.len()];
    let mut neg_occ: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut queue = VecDeque::new();

    for (v, val) in value.iter_mut().enumerate() {
        if fixed_at(v) == Some(true) {
            *val = true;
            queue.push_back(v);
        }
    }

    let mut triggered = Vec::new();
    'clauses: for (ci, c) in clauses.iter().enumerate() {
        let mut negs: Vec<usize> = Vec::new();
        for l in c {
            if l.positive {
                match head[ci] {
                    Some(h) if h != l.var => return Err(FormulaError::NotHorn { clause: ci }),
                    _ => head[ci] = Some(l.var),
                }
            } else if !negs.contains(&l.var) {
                negs.push(l.var);
            }
        }
        if let Some(h) = head[ci] {
            if negs.contains(&h) {
                // tautology
                remaining[ci] = usize::MAX;
                continue 'clauses;
            }
        }
        remaining[ci] = negs.len();
        for v in negs {
            neg_occ[v].push(ci);
        }
        if remaining[ci] == 0 {
            triggered.push(ci);
        }
    }

    let fire = |ci: usize, value: &mut Vec<bool>, queue: &mut VecDeque<usize>| -> bool {
        match head[ci] {
            None => false,
            Some(h) if value[h] => true,
            Some(h) if fixed_at(h) == Some(false) => false,
            Some(h) => {
                value[h] = true;
                queue.push_back(h);
                true
            }
        }
    };

    for ci in triggered {
        if !fire(ci, &mut value, &mut queue) {
            return Ok(None);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &ci in &neg_occ[v] {
            remaining[ci] -= 1;
            if remaining[ci] == 0 && !fire(ci, &mut value, &mut queue) {
                return Ok(None);
            }
        }
    }
    Ok(Some(value))
}
