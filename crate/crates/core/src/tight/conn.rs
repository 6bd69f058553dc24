use super::{used_relations, Certificate, Decision, TightError};
use crate::formulas::{
    affine_system, clausal_form, horn_sat, Arg, Assignment, ClauseShape, Formula, FormulaError, Lit, TwoSat,
};
use crate::graph::{reachable_from, tarjan_scc};
use crate::relations::{classify_set, ConnMethod, Relation};

fn inapplicable(method: ConnMethod, reason: impl Into<String>) -> TightError {
    TightError::MethodInapplicable {
        method: method.id().to_string(),
        reason: reason.into(),
    }
}

fn map_clauses(local: Vec<Vec<Lit>>, vars: &[usize]) -> Vec<Vec<Lit>> {
    local
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|l| Lit {
                    var: vars[l.var],
                    positive: l.positive,
                })
                .collect()
        })
        .collect()
}

/// Effective relation and variables of every clause that has variables.
fn effective_clauses(f: &Formula) -> Result<Vec<(Relation, Vec<usize>)>, TightError> {
    let mut out = Vec::new();
    for ci in 0..f.clauses().len() {
        match f.clause_relation(ci) {
            Ok(Some(x)) => out.push(x),
            Ok(None) => {}
            Err(FormulaError::Relation(_)) => return Err(TightError::Unsatisfiable),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

/// The formula's clauses rewritten in `shape`, or the index of a clause
/// that has no such form.
fn formula_cnf(clauses: &[(Relation, Vec<usize>)], shape: ClauseShape) -> Result<Vec<Vec<Lit>>, usize> {
    let mut cnf = Vec::new();
    for (ci, (rel, vars)) in clauses.iter().enumerate() {
        match clausal_form(rel, shape) {
            Some(local) => cnf.extend(map_clauses(local, vars)),
            None => return Err(ci),
        }
    }
    Ok(cnf)
}

/// Polynomial connectivity by the named method.
pub fn conn_poly(f: &Formula, method: ConnMethod) -> Result<Decision, TightError> {
    match method {
        ConnMethod::Bijunctive => conn_bijunctive(f),
        ConnMethod::Affine => conn_affine(f),
        ConnMethod::IhsbMinus => conn_ihsb_minus(f, method),
        ConnMethod::IhsbPlus => {
            let mut d = conn_ihsb_minus(&complement_formula(f), method)?;
            d.certificate = d
                .certificate
                .map(|Certificate::Pair(a, b)| Certificate::Pair(a.complement(), b.complement()));
            Ok(d)
        }
    }
}

/// Picks the first method licensed by the classification of the formula's
/// relations.
pub fn conn_auto(f: &Formula) -> Result<Decision, TightError> {
    let used = used_relations(f);
    if used.is_empty() {
        return conn_poly(f, ConnMethod::Bijunctive);
    }
    let report = classify_set(&used);
    match report.conn_poly_methods.first() {
        Some(&m) => conn_poly(f, m),
        None => Err(TightError::MethodInapplicable {
            method: "auto".into(),
            reason: format!(
                "no polynomial connectivity method applies ({}; Conn {})",
                report.verdict, report.predicted.conn
            ),
        }),
    }
}

fn decision(answer: bool, certificate: Option<(Assignment, Assignment)>, method: ConnMethod) -> Decision {
    Decision {
        answer,
        path: None,
        certificate: certificate.map(|(a, b)| Certificate::Pair(a, b)),
        method: method.id().to_string(),
    }
}

fn conn_bijunctive(f: &Formula) -> Result<Decision, TightError> {
    let method = ConnMethod::Bijunctive;
    let clauses = effective_clauses(f)?;
    let cnf = formula_cnf(&clauses, ClauseShape::TwoCnf)
        .map_err(|ci| inapplicable(method, format!("clause {} is not bijunctive", ci + 1)))?;
    let n = f.n();
    let solver = TwoSat::new(n, &cnf)?;
    if solver.solve().is_none() {
        return Err(TightError::Unsatisfiable);
    }

    // forced variables by probing both literals
    let mut forced: Vec<Option<bool>> = vec![None; n];
    for (v, slot) in forced.iter_mut().enumerate() {
        let can1 = solver.solve_with(&[Lit::pos(v)]).is_some();
        let can0 = solver.solve_with(&[Lit::neg(v)]).is_some();
        if can1 != can0 {
            *slot = Some(can1);
        }
    }

    // implication graph over literals of unforced variables
    let mut adj = vec![Vec::new(); 2 * n];
    let node = |l: Lit| 2 * l.var + usize::from(!l.positive);
    for c in &cnf {
        let live: Vec<Lit> = c.iter().copied().filter(|l| forced[l.var].is_none()).collect();
        let satisfied = c.iter().any(|l| forced[l.var] == Some(l.positive));
        if satisfied {
            continue;
        }
        if let [a, b] = live.as_slice() {
            if a.var != b.var {
                adj[node(a.negated())].push(node(*b));
                adj[node(b.negated())].push(node(*a));
            }
        }
    }
    let (count, comp) = tarjan_scc(&adj);
    if count == 2 * n {
        return Ok(decision(true, None, method));
    }
    // a literal on a cycle takes the same value throughout each component
    let mut size = vec![0usize; count];
    for &c in &comp {
        size[c] += 1;
    }
    let lit_node = (0..2 * n).find(|&x| size[comp[x]] > 1).unwrap();
    let lit = Lit {
        var: lit_node / 2,
        positive: lit_node % 2 == 0,
    };
    let a = solver.solve_with(&[lit]).expect("unforced literal is satisfiable");
    let b = solver.solve_with(&[lit.negated()]).expect("unforced literal is satisfiable");
    Ok(decision(
        false,
        Some((Assignment::from_bits(&a), Assignment::from_bits(&b))),
        method,
    ))
}

fn conn_affine(f: &Formula) -> Result<Decision, TightError> {
    let method = ConnMethod::Affine;
    let system = match affine_system(f) {
        Ok(s) => s,
        Err(FormulaError::NotAffine { clause }) => {
            return Err(inapplicable(method, format!("clause {} is not affine", clause + 1)))
        }
        Err(e) => return Err(e.into()),
    };
    if !system.is_consistent() {
        return Err(TightError::Unsatisfiable);
    }
    let support = system.support();
    if system.rank() == support.len() {
        return Ok(decision(true, None, method));
    }
    let free = support
        .into_iter()
        .find(|v| !system.pivots().contains(v))
        .expect("rank below support size leaves a free support variable");
    let a = system.solve().unwrap();
    let b = system.solve_with_free(&[free]).unwrap();
    Ok(decision(false, Some((a, b)), method))
}

/// Replaces every relation by its image under global complement.
pub(crate) fn complement_formula(f: &Formula) -> Formula {
    let mut g = Formula::new(f.n());
    let mapped: Vec<usize> = f
        .relations()
        .iter()
        .map(|r| {
            let all = (1u32 << r.arity()) - 1;
            g.add_relation(r.negate_coords(all, format!("{}~", r.name())))
                .expect("complemented names stay distinct")
        })
        .collect();
    for c in f.clauses() {
        let args = c
            .args
            .iter()
            .map(|a| match *a {
                Arg::Const(b) => Arg::Const(!b),
                v => v,
            })
            .collect();
        g.add_clause(mapped[c.relation], args).expect("same shape as the source");
    }
    g
}

fn conn_ihsb_minus(f: &Formula, method: ConnMethod) -> Result<Decision, TightError> {
    let n = f.n();
    let clauses = effective_clauses(f)?;
    let mut horn = Vec::new();
    let mut comps: Vec<Vec<Relation>> = Vec::new();
    for (ci, (rel, vars)) in clauses.iter().enumerate() {
        let local = clausal_form(rel, ClauseShape::Horn)
            .ok_or_else(|| inapplicable(method, format!("clause {} is not Horn", ci + 1)))?;
        horn.extend(map_clauses(local, vars));
        let cs = rel.components();
        if cs.iter().any(|c| clausal_form(c, ClauseShape::IhsbMinus).is_none()) {
            return Err(inapplicable(
                method,
                format!("clause {} is not componentwise IHSB-", ci + 1),
            ));
        }
        comps.push(cs);
    }
    if horn_sat(n, &horn, &[])?.is_none() {
        return Err(TightError::Unsatisfiable);
    }

    // one live component per clause, else the projection is disconnected
    let mut ihsb: Vec<Vec<Lit>> = Vec::new();
    for ((_, vars), cs) in clauses.iter().zip(&comps) {
        let mut live = Vec::new();
        for c in cs {
            let mut probe = horn.clone();
            probe.extend(map_clauses(clausal_form(c, ClauseShape::Horn).unwrap(), vars));
            if let Some(model) = horn_sat(n, &probe, &[])? {
                live.push((c, model));
            }
        }
        if live.len() > 1 {
            let a = Assignment::from_bits(&live[0].1);
            let b = Assignment::from_bits(&live[1].1);
            return Ok(decision(false, Some((a, b)), method));
        }
        let (c, _) = live.pop().expect("satisfiable formula has a live component");
        ihsb.extend(map_clauses(clausal_form(c, ClauseShape::IhsbMinus).unwrap(), vars));
    }

    // unit propagation to a fixpoint
    let mut fixed: Vec<Option<bool>> = vec![None; n];
    loop {
        let mut changed = false;
        for c in &ihsb {
            if c.iter().any(|l| fixed[l.var] == Some(l.positive)) {
                continue;
            }
            let open: Vec<&Lit> = c.iter().filter(|l| fixed[l.var].is_none()).collect();
            match open.as_slice() {
                [] => return Err(TightError::Unsatisfiable),
                [l] => {
                    fixed[l.var] = Some(l.positive);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }

    let mut adj = vec![Vec::new(); n];
    let mut negative_sets: Vec<Vec<usize>> = Vec::new();
    for c in &ihsb {
        if c.iter().any(|l| fixed[l.var] == Some(l.positive)) {
            continue;
        }
        let open: Vec<Lit> = c.iter().copied().filter(|l| fixed[l.var].is_none()).collect();
        if open.iter().all(|l| !l.positive) {
            negative_sets.push(open.iter().map(|l| l.var).collect());
        } else if let [a, b] = open.as_slice() {
            // (x_j ∨ ¬x_i) gives the edge i → j
            let (pos, neg) = if a.positive { (a, b) } else { (b, a) };
            adj[neg.var].push(pos.var);
        }
    }

    let base: Vec<bool> = fixed.iter().map(|v| v.unwrap_or(false)).collect();
    for i in 0..n {
        if fixed[i].is_some() {
            continue;
        }
        let reach = reachable_from(&adj, i);
        if !reach[i] {
            continue;
        }
        if negative_sets.iter().any(|s| s.iter().all(|&v| reach[v])) {
            continue;
        }
        let mut lifted = base.clone();
        for v in 0..n {
            if reach[v] {
                lifted[v] = true;
            }
        }
        return Ok(decision(
            false,
            Some((Assignment::from_bits(&lifted), Assignment::from_bits(&base))),
            method,
        ));
    }
    Ok(decision(true, None, method))
}
