use super::{ExpressError, FaithfulExpression};
use crate::formulas::{Arg, Assignment, Formula, Lit};
use crate::oracle::{build_graph, SolutionGraph};
use crate::relations::{named, Relation};
use std::collections::{BTreeMap, VecDeque};

/// Negation vectors of the six length-4 path relations, one per class
/// under reversal of the coordinates.
pub const PATH_REPRESENTATIVES: [u32; 6] = [0b000, 0b001, 0b010, 0b011, 0b101, 0b111];

/// `M(x ⊕ c)`: the path relation `M` with coordinates negated by `c`
/// (tuple encoding, bit 2 is coordinate 1). Named `M` or `M_<c>`.
pub fn path_relation(c: u32) -> Relation {
    assert!(c < 8);
    let name = if c == 0 {
        "M".to_string()
    } else {
        format!("M_{}", crate::relations::format_tuple(c, 3))
    };
    named::m().negate_coords(c, name)
}

/// Adds the 2-clause `a ∨ b` using `OR`, `NAND` or `IMP`.
pub(crate) fn push_two_clause(f: &mut Formula, a: Lit, b: Lit) {
    let (rel, x, y) = match (a.positive, b.positive) {
        (true, true) => (named::or(), a.var, b.var),
        (false, false) => (named::nand(), a.var, b.var),
        (true, false) => (named::imp(), a.var, b.var),
        (false, true) => (named::imp(), b.var, a.var),
    };
    f.push(&rel, &[x, y]).expect("2-clause names are reserved");
}

/// Forbids `x_i = vi ∧ x_j = vj`.
fn exclude_pair(f: &mut Formula, i: usize, vi: bool, j: usize, vj: bool) {
    push_two_clause(
        f,
        Lit {
            var: i,
            positive: !vi,
        },
        Lit {
            var: j,
            positive: !vj,
        },
    );
}

fn post(ok: bool, what: impl FnOnce() -> String) -> Result<(), ExpressError> {
    if ok {
        Ok(())
    } else {
        Err(ExpressError::Postcondition(what()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step1 {
    /// `R` conjoined with 2-clauses, over the coordinates of `R`.
    pub q: Formula,
    pub a: Assignment,
    pub b: Assignment,
    /// The triple `(a, b, c)` when 2-clauses were needed.
    pub triple: Option<(Assignment, Assignment, Assignment)>,
}

fn positions(mask: u32, k: usize) -> Vec<usize> {
    (0..k).filter(|&p| mask >> (k - 1 - p) & 1 == 1).collect()
}

/// A relation with a pair whose graph distance exceeds its Hamming
/// distance, built from `rel` and 2-clauses.
pub fn step1_expand(rel: &Relation) -> Result<Step1, ExpressError> {
    if rel.componentwise_flags().bijunctive {
        return Err(ExpressError::AlreadyBijunctive(rel.name().to_string()));
    }
    let k = rel.arity();
    let ms = rel.members();
    let dist = rel.graph_distances();
    let ham = |i: usize, j: usize| (ms[i] ^ ms[j]).count_ones();
    let mut q = Formula::new(k);
    q.push(rel, &(0..k).collect::<Vec<_>>())?;
    let asg = |t: u32| Assignment::from_code(u64::from(t), k);

    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            if dist[i][j].is_some_and(|d| d > ham(i, j)) {
                return Ok(Step1 {
                    q,
                    a: asg(ms[i]),
                    b: asg(ms[j]),
                    triple: None,
                });
            }
        }
    }

    // minimal triple in one component whose majority leaves it; ties by
    // the encodings of (b, c, a)
    type Candidate = ((u32, u32, u32, u32), (usize, usize, usize));
    let mut best: Option<Candidate> = None;
    for a in 0..ms.len() {
        for b in 0..ms.len() {
            let Some(dab) = dist[a][b] else { continue };
            for c in 0..ms.len() {
                let (Some(dbc), Some(dca)) = (dist[b][c], dist[c][a]) else {
                    continue;
                };
                let maj = ms[a] & ms[b] | ms[b] & ms[c] | ms[c] & ms[a];
                let inside = ms.binary_search(&maj).is_ok_and(|x| dist[a][x].is_some());
                if inside {
                    continue;
                }
                let key = (dab + dbc + dca, ms[b], ms[c], ms[a]);
                if best.as_ref().is_none_or(|(k0, _)| key < *k0) {
                    best = Some((key, (a, b, c)));
                }
            }
        }
    }
    let (_, (ia, ib, ic)) = best.ok_or_else(|| {
        ExpressError::Postcondition("a non-componentwise-bijunctive relation has a bad triple".into())
    })?;
    let (ta, tb, tc) = (ms[ia], ms[ib], ms[ic]);
    let u = ta ^ tb;
    let v = tb ^ tc;
    let w = tc ^ ta;
    post(u ^ v ^ w == 0, || "every index lies in exactly two of U, V, W".into())?;
    post(u & v != 0 && v & w != 0 && w & u != 0, || "pairwise intersections of U, V, W are non-empty".into())?;
    post((u & v) | (u & w) == u && (u & v) & (u & w) == 0, || "U ∩ V and U ∩ W partition U".into())?;
    for i in positions(u & w, k) {
        post(!rel.contains(ta ^ (1 << (k - 1 - i))), || format!("a ⊕ e_{} lies outside R", i + 1))?;
    }

    let coord = |t: u32, p: usize| t >> (k - 1 - p) & 1 == 1;
    for i in positions(u & w, k) {
        for j in positions(u & v, k) {
            // x_i x_j ∈ {a_i a_j, ¬a_i a_j, ¬a_i ¬a_j}
            exclude_pair(&mut q, i, coord(ta, i), j, !coord(ta, j));
        }
    }
    let (a, b) = (asg(ta), asg(tb));
    let g = build_graph(&q)?;
    let d = g.distance(&a, &b)?;
    post(d.is_some_and(|d| d as usize > a.hamming(&b)), || {
        format!("distance between {a} and {b} expands in Q")
    })?;
    Ok(Step1 {
        q,
        a,
        b,
        triple: Some((asg(ta), asg(tb), asg(tc))),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step2 {
    /// Over `r + 1` variables: the flipped set in flip order, then the
    /// extra variable. `G(t)` is a path of length `r + 2` from `a` to `b`.
    pub t: Formula,
    pub a: Assignment,
    pub b: Assignment,
    pub r: usize,
    /// Source variables of `t`'s variables.
    pub source_vars: Vec<usize>,
}

fn sorted_neighbors(g: &SolutionGraph, i: usize) -> Vec<usize> {
    let mut v: Vec<usize> = g.neighbors(i).collect();
    v.sort_unstable();
    v
}

/// Restricts `q` to a single path between an expanding pair.
pub fn step2_isolate(q: &Formula, a: &Assignment, b: &Assignment) -> Result<Step2, ExpressError> {
    let g = build_graph(q)?;
    if g.distance(a, b)?.is_none_or(|d| d as usize <= a.hamming(b)) {
        return Err(ExpressError::NoExpansion);
    }
    let sols = g.solutions();
    let mut best: Option<(u32, usize, usize)> = None;
    for i in 0..sols.len() {
        let dist = g.distances_from(i);
        for j in i + 1..sols.len() {
            if let Some(d) = dist[j] {
                if d as usize > sols[i].hamming(&sols[j]) && best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                }
            }
        }
    }
    let (d, si, ti) = best.ok_or(ExpressError::NoExpansion)?;

    let mut parent = vec![usize::MAX; sols.len()];
    parent[si] = si;
    let mut queue = VecDeque::from([si]);
    while let Some(i) = queue.pop_front() {
        for j in sorted_neighbors(&g, i) {
            if parent[j] == usize::MAX {
                parent[j] = i;
                queue.push_back(j);
            }
        }
    }
    let mut path = vec![ti];
    while *path.last().unwrap() != si {
        path.push(parent[*path.last().unwrap()]);
    }
    path.reverse();
    let flips: Vec<usize> = path
        .windows(2)
        .map(|w| sols[w[0]].diff(&sols[w[1]])[0])
        .collect();
    let (a, b) = (&sols[si], &sols[ti]);
    let u = a.diff(b);
    let r = u.len();
    let e = flips[0];
    post(
        flips.len() == r + 2 && flips[r + 1] == e && !u.contains(&e),
        || "shortest path flips one extra variable first and last".into(),
    )?;
    let order: Vec<usize> = flips[1..=r].to_vec();
    let mut sorted = order.clone();
    sorted.sort_unstable();
    post(sorted == u, || "shortest path flips every differing variable once".into())?;
    debug_assert_eq!(d as usize, r + 2);

    let mut source_vars = order.clone();
    source_vars.push(e);
    let mut map: Vec<Arg> = (0..q.n()).map(|v| Arg::Const(a.get(v))).collect();
    for (new, &old) in source_vars.iter().enumerate() {
        map[old] = Arg::Var(new);
    }
    let mut t = Formula::new(r + 1);
    for c in q.clauses() {
        let rel = t.add_relation(q.relation(c.relation).clone())?;
        let args = c
            .args
            .iter()
            .map(|x| match *x {
                Arg::Var(v) => map[v],
                k => k,
            })
            .collect();
        t.add_clause(rel, args)?;
    }
    for p in 0..r {
        for s in p + 1..r {
            // x_p flips before x_s
            exclude_pair(&mut t, p, a.get(order[p]), s, !a.get(order[s]));
        }
    }
    let ta = a.restrict(&source_vars);
    let tb = b.restrict(&source_vars);
    let gt = build_graph(&t)?;
    post(gt.is_simple_path() && gt.len() == r + 3, || "G(T) is a simple path of length r+2".into())?;
    post(gt.distance(&ta, &tb)? == Some(r as u32 + 2), || "endpoints at distance r+2".into())?;
    Ok(Step2 {
        t,
        a: ta,
        b: tb,
        r,
        source_vars,
    })
}

/// Gadgets for all eight `M(x ⊕ c)`, over `T`'s relations and 2-clauses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathFamily {
    /// `T` with all but three variables projected out.
    pub p: FaithfulExpression,
    /// Negation vector of the relation `p` expresses.
    pub c0: u32,
    pub gadgets: BTreeMap<u32, FaithfulExpression>,
}

impl PathFamily {
    pub fn gadget(&self, c: u32) -> &FaithfulExpression {
        &self.gadgets[&c]
    }

    pub fn representatives(&self) -> Vec<&FaithfulExpression> {
        PATH_REPRESENTATIVES.iter().map(|c| self.gadget(*c)).collect()
    }
}

fn reverse3(c: u32) -> u32 {
    (c & 0b010) | (c >> 2 & 1) | (c & 1) << 2
}

/// Literal that is true iff `x_var ⊕ c = 1`.
fn lit(var: usize, c: bool) -> Lit {
    Lit { var, positive: !c }
}

fn derive_path(from: u32, op: u8) -> (u32, FaithfulExpression) {
    let bit = |p: usize| from >> (2 - p) & 1 == 1;
    let src = path_relation(from);
    let (to, formula, y_vars) = match op {
        // M(¬l1, l2, l3) = ∃y (¬l1 ∨ ¬λ) ∧ (l1 ∨ ¬l3) ∧ M(λ, l2, l3)
        0 => {
            let mut f = Formula::new(4);
            f.push(&src, &[3, 1, 2]).unwrap();
            push_two_clause(&mut f, lit(0, bit(0)).negated(), lit(3, bit(0)).negated());
            push_two_clause(&mut f, lit(0, bit(0)), lit(2, bit(2)).negated());
            (from ^ 0b100, f, vec![3])
        }
        // M(l1, ¬l2, l3) = ∃y (¬λ ∨ ¬l2) ∧ M(l1, λ, l3)
        1 => {
            let mut f = Formula::new(4);
            f.push(&src, &[0, 3, 2]).unwrap();
            push_two_clause(&mut f, lit(3, bit(1)).negated(), lit(1, bit(1)).negated());
            (from ^ 0b010, f, vec![3])
        }
        _ => {
            let mut f = Formula::new(3);
            f.push(&src, &[2, 1, 0]).unwrap();
            (reverse3(from), f, vec![])
        }
    };
    let e = FaithfulExpression {
        target: path_relation(to),
        formula,
        x_vars: vec![0, 1, 2],
        y_vars,
    };
    (to, e)
}

/// Projects the path `T` onto its first two flipped variables and the
/// extra one, then derives the other path relations by resolution.
pub fn step3_path4(s2: &Step2) -> Result<PathFamily, ExpressError> {
    let r = s2.r;
    if r < 2 {
        return Err(ExpressError::NotAPath(format!("{r} variables flip along the path")));
    }
    let c0 = u32::from(!s2.a.get(0)) << 2 | u32::from(s2.a.get(r)) << 1 | u32::from(s2.a.get(1));
    let p = FaithfulExpression {
        target: path_relation(c0),
        formula: s2.t.clone(),
        x_vars: vec![0, r, 1],
        y_vars: (2..r).collect(),
    };
    let projected: Vec<u32> = p
        .witness_sets()?
        .keys()
        .map(|x| x.to_code().unwrap() as u32)
        .collect();
    if projected != p.target.members() {
        return Err(ExpressError::NotAPath(format!(
            "projection is {{{}}}",
            projected.iter().map(|&t| crate::relations::format_tuple(t, 3)).collect::<Vec<_>>().join(", ")
        )));
    }
    let mut gadgets = BTreeMap::from([(c0, p.clone())]);
    let mut queue = VecDeque::from([c0]);
    while let Some(c) = queue.pop_front() {
        for op in 0..3 {
            let (to, e) = derive_path(c, op);
            if let std::collections::btree_map::Entry::Vacant(slot) = gadgets.entry(to) {
                slot.insert(e);
                queue.push_back(to);
            }
        }
    }
    Ok(PathFamily { p, c0, gadgets })
}

/// Gadgets for `D_0..D_3` over `M`, `M_010` and the 2-clauses.
pub fn step4_three_clauses(family: &PathFamily) -> Result<[FaithfulExpression; 4], ExpressError> {
    for c in [0b000, 0b010] {
        if !family.gadgets.contains_key(&c) {
            return Err(ExpressError::MissingGadget(path_relation(c).name().to_string()));
        }
    }
    let imp = named::imp();
    let nand = named::nand();
    // (x1 ∨ x2 ∨ x3) = ∃y (x1 ∨ ¬y1) ∧ (x2 ∨ ¬y2) ∧ (x3 ∨ ¬y3) ∧ (x3 ∨ ¬y4)
    //                   ∧ M(y1, y5, y3) ∧ M(y2, ¬y5, y4)
    let mut d0 = Formula::new(8);
    d0.push(&imp, &[0, 3])?;
    d0.push(&imp, &[1, 4])?;
    d0.push(&imp, &[2, 5])?;
    d0.push(&imp, &[2, 6])?;
    d0.push(&path_relation(0b000), &[3, 7, 5])?;
    d0.push(&path_relation(0b010), &[4, 7, 6])?;
    let mut out = vec![FaithfulExpression {
        target: named::d(0),
        formula: d0,
        x_vars: vec![0, 1, 2],
        y_vars: (3..8).collect(),
    }];
    // D_i = ∃y (¬x_i ∨ ¬y) ∧ D_{i-1} with y in place of x_i
    for i in 1..=3 {
        let prev = named::d(i - 1);
        let mut f = Formula::new(4);
        f.push(&nand, &[i - 1, 3])?;
        let mut args = vec![0, 1, 2];
        args[i - 1] = 3;
        f.push(&prev, &args)?;
        out.push(FaithfulExpression {
            target: named::d(i),
            formula: f,
            x_vars: vec![0, 1, 2],
            y_vars: vec![3],
        });
    }
    Ok(out.try_into().unwrap())
}

#[cfg(test)]
mod tests {
    use super::super::verify_faithful;
    use super::*;
    use crate::relations::named::*;

    fn a(s: &str) -> Assignment {
        Assignment::parse(s).unwrap()
    }

    #[test]
    fn path_relations_have_path_graphs() {
        let mut seen = Vec::new();
        for c in 0..8 {
            let r = path_relation(c);
            assert_eq!(r.len(), 5);
            assert_eq!(r.components().len(), 1);
            let d = r.graph_distances();
            assert_eq!(d.iter().flatten().flatten().max(), Some(&4));
            seen.push(r.members().to_vec());
        }
        assert_eq!(path_relation(0).members(), m().members());
        assert_eq!(path_relation(0b100).members(), Relation::from_tuples("X", 3, &["000", "010", "110", "111", "101"]).unwrap().members());
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn nae_step1_matches_worked_example() {
        let s = step1_expand(&nae()).unwrap();
        assert_eq!((s.a.to_string(), s.b.to_string()), ("100".into(), "001".into()));
        let (_, _, c) = s.triple.clone().unwrap();
        assert_eq!(c.to_string(), "010");
        // Q = NAE ∧ (¬x1 ∨ ¬x3)
        assert_eq!(s.q.clauses().len(), 2);
        assert_eq!(s.q.relation(s.q.clauses()[1].relation).name(), "NAND");
        assert_eq!(s.q.clauses()[1].args, vec![Arg::Var(0), Arg::Var(2)]);
        let g = build_graph(&s.q).unwrap();
        assert_eq!(g.distance(&s.a, &s.b).unwrap(), Some(4));
    }

    #[test]
    fn cw_bijunctive_rejected() {
        assert!(matches!(step1_expand(&one_in_three()), Err(ExpressError::AlreadyBijunctive(_))));
        assert!(matches!(step1_expand(&or()), Err(ExpressError::AlreadyBijunctive(_))));
    }

    #[test]
    fn existing_expansion_is_used_directly() {
        let s = step1_expand(&m()).unwrap();
        assert!(s.triple.is_none());
        assert_eq!((s.a.to_string(), s.b.to_string()), ("001".into(), "100".into()));
    }

    #[test]
    fn nae_isolates_a_five_vertex_path() {
        let s1 = step1_expand(&nae()).unwrap();
        let s2 = step2_isolate(&s1.q, &s1.a, &s1.b).unwrap();
        assert_eq!(s2.r, 2);
        let g = build_graph(&s2.t).unwrap();
        assert!(g.is_simple_path());
        assert_eq!(g.len(), 5);
        assert_eq!(s2.a.hamming(&s2.b), 2);
        assert_eq!(g.distance(&s2.a, &s2.b).unwrap(), Some(4));
    }

    fn long_path() -> Relation {
        Relation::from_tuples("L", 4, &["0000", "0001", "1001", "1101", "1111", "1110"]).unwrap()
    }

    #[test]
    fn longer_path_keeps_a_witness_chain() {
        let s1 = step1_expand(&long_path()).unwrap();
        assert_eq!((s1.a.to_string(), s1.b.to_string()), ("0000".into(), "1110".into()));
        let s2 = step2_isolate(&s1.q, &s1.a, &s1.b).unwrap();
        assert_eq!(s2.r, 3);
        assert_eq!(s2.source_vars, vec![0, 1, 2, 3]);
        let fam = step3_path4(&s2).unwrap();
        let sets = fam.p.witness_sets().unwrap();
        // x-order (x1, x_{r+1}, x2); a = 0000 so ¬a1 ¬a2 ¬a_{r+1} = 1 1 1
        let widest = sets.iter().max_by_key(|(_, w)| w.len()).unwrap();
        assert_eq!(widest.0, &a("111"));
        assert_eq!(widest.1, &vec![a("0"), a("1")]);
        assert_eq!(sets[&a("101")], vec![a("1")]);
        assert_eq!(sets[&a("000")], vec![a("0")]);
        assert_eq!(verify_faithful(&fam.p).unwrap(), None);
    }

    #[test]
    fn all_path_gadgets_are_faithful_at_working_level() {
        let s1 = step1_expand(&nae()).unwrap();
        let s2 = step2_isolate(&s1.q, &s1.a, &s1.b).unwrap();
        let fam = step3_path4(&s2).unwrap();
        assert_eq!(fam.gadgets.len(), 8);
        for (c, g) in &fam.gadgets {
            assert_eq!(g.target.members(), path_relation(*c).members());
            assert_eq!(verify_faithful(g).unwrap(), None, "c = {c:03b}");
        }
    }

    #[test]
    fn three_clause_witness_rows() {
        let s1 = step1_expand(&nae()).unwrap();
        let s2 = step2_isolate(&s1.q, &s1.a, &s1.b).unwrap();
        let fam = step3_path4(&s2).unwrap();
        let ds = step4_three_clauses(&fam).unwrap();
        let sets = ds[0].witness_sets().unwrap();
        assert_eq!(sets[&a("100")], vec![a("10000")]);
        assert_eq!(sets[&a("010")], vec![a("01001")]);
        assert_eq!(sets[&a("111")].len(), 12);
        for d in &ds {
            assert_eq!(verify_faithful(d).unwrap(), None, "{}", d.target.name());
        }
    }
}
