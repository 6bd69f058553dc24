use super::HardnessError;
use crate::formulas::{Assignment, Formula};
use crate::relations::named;

/// Largest `n` accepted by [`gen_long_path`].
pub const MAX_LONG_PATH: usize = 4096;

/// A formula over `n` variables whose solution graph is a simple path on
/// `2^(n/2+1) − 1` vertices.
///
/// `φ_2 = (¬x1 ∨ x2)`; `φ_n` adds to `φ_{n−2}` the clause `(¬x_{n−1} ∨ x_n)`,
/// `(x_{n−1} ∨ ¬x_n ∨ ¬x_i)` for `i ≤ n−4` and `(x_{n−1} ∨ ¬x_n ∨ x_i)` for
/// `i ∈ {n−3, n−2}`. The solutions are `(v,0,0)` and `(v,1,1)` for `v` on
/// the previous path, joined through `(t_{n−2},0,1)`.
pub fn gen_long_path(n: usize) -> Result<Formula, HardnessError> {
    if n < 2 || n % 2 == 1 || n > MAX_LONG_PATH {
        return Err(HardnessError::OddN(n));
    }
    let mut f = Formula::new(n);
    let imp = named::imp();
    // IMP(a, b) = a ∨ ¬b
    f.push(&imp, &[1, 0])?;
    for m in (4..=n).step_by(2) {
        let (hi, lo) = (m - 1, m - 2);
        f.push(&imp, &[hi, lo])?;
        for i in 0..m - 2 {
            if i + 5 <= m {
                // ¬x_n ∨ ¬x_i ∨ x_{n−1}
                f.push(&named::d(2), &[hi, i, lo])?;
            } else {
                // ¬x_n ∨ x_{n−1} ∨ x_i
                f.push(&named::d(1), &[hi, lo, i])?;
            }
        }
    }
    Ok(f)
}

/// Exact clause count of `gen_long_path(n)`: `Σ_{m=2,4,…,n} (m − 1)`.
pub fn long_path_clause_count(n: usize) -> usize {
    (2..=n).step_by(2).map(|m| m - 1).sum()
}

/// The two ends `s_n = 0…0` and `t_n = 0…011` of the path.
pub fn long_path_ends(n: usize) -> (Assignment, Assignment) {
    let s = Assignment::zeros(n);
    let mut t = s.clone();
    t.set(n - 2, true);
    t.set(n - 1, true);
    (s, t)
}
