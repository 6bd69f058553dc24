//! One line per acceptance criterion, printed with its measurements.
//! Run with `cargo test -p solgraph --test acceptance -- --nocapture`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use solgraph::expressibility::{
    compose, express_s3, faithfulness_examples, step1_expand, step2_isolate, verify_faithful, verify_faithful_capped,
    FaithfulExpression,
};
use solgraph::formulas::{clausal_form, ClauseShape};
use solgraph::hardness::{compile_tm, decode_configuration, gen_long_path, CompileOptions, HardnessError, TMachine};
use solgraph::oracle::{build_graph, enumerate_by_search, SolutionGraph};
use solgraph::random::{all_relations, method_pool, random_formula, tight_pool};
use solgraph::relations::{closed_under, named, RelationFlags};
use solgraph::tight::{conn_poly, stconn_tight, TightError};
use solgraph::{Assignment, ClosureOp, ConnMethod, Formula, TightClass};
use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

const SEED: u64 = 0x5eed_2024;

struct Outcome {
    id: u8,
    title: &'static str,
    ok: bool,
    detail: String,
    elapsed: Duration,
    budget: Duration,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.ok && self.elapsed <= self.budget
    }

    fn line(&self) -> String {
        format!(
            "[{}] {}. {}: {} ({:.2}s, budget {}s)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )
    }
}

fn run(id: u8, title: &'static str, budget_secs: u64, body: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (ok, detail) = body();
    Outcome {
        id,
        title,
        ok,
        detail,
        elapsed: start.elapsed(),
        budget: Duration::from_secs(budget_secs),
    }
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

fn is_walk(f: &Formula, path: &[Assignment]) -> bool {
    path.iter().all(|a| f.evaluate(a)) && path.windows(2).all(|w| w[0].hamming(&w[1]) == 1)
}

fn sweep() -> (bool, String) {
    let rels: Vec<_> = all_relations(3).into_iter().filter(|r| r.arity() == 3).collect();
    let mut containment = 0;
    let mut clausal = 0;
    for r in &rels {
        let f = RelationFlags::of(r);
        for (premise, conclusion) in [
            (f.bijunctive, f.componentwise_bijunctive),
            (f.horn, f.or_free),
            (f.dual_horn, f.nand_free),
            (f.affine, f.componentwise_bijunctive && f.or_free && f.nand_free),
        ] {
            containment += usize::from(premise && !conclusion);
        }
        for (shape, op) in [
            (ClauseShape::TwoCnf, ClosureOp::Maj3),
            (ClauseShape::Horn, ClosureOp::And2),
            (ClauseShape::IhsbMinus, ClosureOp::IhsbMinus3),
        ] {
            clausal += usize::from(clausal_form(r, shape).is_some() != closed_under(r, op));
        }
    }
    (
        rels.len() == 255 && containment == 0 && clausal == 0,
        format!(
            "{} relations, {containment} containment violations, {clausal} clausal/closure mismatches",
            rels.len()
        ),
    )
}

/// The random tight instances shared by criteria 2 and 4.
fn tight_instances() -> Vec<(TightClass, Formula, SolutionGraph)> {
    let mut out = Vec::new();
    for (k, class) in TightClass::ALL.into_iter().enumerate() {
        let pool = tight_pool(class);
        let mut r = rng(k as u64);
        for _ in 0..1000 {
            let n = r.gen_range(2..=14);
            let m = r.gen_range(1..=3 * n);
            let f = random_formula(&mut r, n, m, &pool, 0.1);
            let g = build_graph(&f).unwrap();
            out.push((class, f, g));
        }
    }
    out
}

fn stconn_equivalence(instances: &[(TightClass, Formula, SolutionGraph)]) -> (bool, String) {
    let mut r = rng(100);
    let (mut pairs, mut disagree, mut bad_paths) = (0, 0, 0);
    let mut per_class = HashMap::new();
    for (class, f, g) in instances {
        *per_class.entry(class.id()).or_insert(0) += 1;
        if g.is_empty() {
            continue;
        }
        for _ in 0..10 {
            let s = &g.solutions()[r.gen_range(0..g.len())];
            let t = &g.solutions()[r.gen_range(0..g.len())];
            let d = stconn_tight(f, *class, s, t).unwrap();
            pairs += 1;
            disagree += usize::from(d.answer != g.st_conn(s, t).unwrap().connected);
            if let Some(path) = &d.path {
                let len = path.len() - 1;
                let ok = is_walk(f, path)
                    && &path[0] == s
                    && path.last() == Some(t)
                    && match class {
                        TightClass::ComponentwiseBijunctive => len == s.hamming(t),
                        _ => len <= 2 * f.n(),
                    };
                bad_paths += usize::from(!ok);
            }
        }
    }
    let enough = per_class.values().all(|&c| c >= 1000);
    (
        enough && disagree == 0 && bad_paths == 0,
        format!(
            "{} formulas ({} per branch), {pairs} pairs, {disagree} disagreements, {bad_paths} invalid paths",
            instances.len(),
            per_class.values().min().unwrap_or(&0)
        ),
    )
}

fn conn_equivalence() -> (bool, String) {
    let (mut total, mut disagree, mut bad_cert) = (0, 0, 0);
    let mut counts = Vec::new();
    for (k, method) in ConnMethod::ALL.into_iter().enumerate() {
        let pool = method_pool(method);
        let mut r = rng(200 + k as u64);
        for _ in 0..500 {
            let n = r.gen_range(1..=14);
            let m = r.gen_range(1..=2 * n);
            let f = random_formula(&mut r, n, m, &pool, 0.1);
            let g = build_graph(&f).unwrap();
            total += 1;
            match conn_poly(&f, method) {
                Ok(d) => {
                    disagree += usize::from(d.answer != (g.component_count() == 1));
                    if let Some(solgraph::tight::Certificate::Pair(a, b)) = d.certificate {
                        bad_cert += usize::from(g.st_conn(&a, &b).map(|x| x.connected).unwrap_or(true));
                    }
                }
                Err(TightError::Unsatisfiable) => disagree += usize::from(!g.is_empty()),
                Err(_) => disagree += 1,
            }
        }
        counts.push(format!("{method} 500"));
    }
    (
        disagree == 0 && bad_cert == 0,
        format!(
            "{total} formulas ({}), {disagree} disagreements, {bad_cert} invalid certificates",
            counts.join(", ")
        ),
    )
}

fn diameters(instances: &[(TightClass, Formula, SolutionGraph)]) -> (bool, String) {
    let mut over = 0;
    for (_, f, g) in instances {
        if !g.is_empty() {
            over += usize::from(!g.diameter_at_most(2 * f.n() as u32).unwrap());
        }
    }
    let mut paths = Vec::new();
    let mut long_ok = true;
    for n in (2..=12).step_by(2) {
        let f = gen_long_path(n).unwrap();
        let g = SolutionGraph::from_solutions(n, enumerate_by_search(&f, 1 << 16).unwrap());
        let vertices = (1usize << (n / 2 + 1)) - 1;
        let d = g.diameter().unwrap() as usize;
        let half = 1usize << (n / 2);
        // at n=2 the path has length exactly 2 = 2^{n/2}
        let long_enough = if n == 2 { d == half } else { d > half };
        long_ok &= g.is_simple_path() && g.len() == vertices && d == vertices - 1 && long_enough;
        paths.push(format!("n={n}:{}v/d{d}", g.len()));
    }
    (
        over == 0 && long_ok,
        format!(
            "{over} of {} tight instances exceed 2n; long paths {} (d > 2^(n/2) for n >= 4, d = 2 at n = 2)",
            instances.len(),
            paths.join(" ")
        ),
    )
}

/// Projection of every composed component onto the original variables is
/// exactly one original component, and distinct components stay distinct.
fn components_correspond(psi: &Formula, composed: &Formula) -> bool {
    let g = build_graph(psi).unwrap();
    let h = SolutionGraph::from_solutions(composed.n(), enumerate_by_search(composed, 1 << 20).unwrap());
    if g.component_count() != h.component_count() {
        return false;
    }
    let orig: Vec<usize> = (0..psi.n()).collect();
    let mut seen = BTreeSet::new();
    for comp in h.components() {
        let ids: BTreeSet<usize> = comp
            .iter()
            .map(|&i| g.component_id(g.index_of(&h.solutions()[i].restrict(&orig)).unwrap()))
            .collect();
        if ids.len() != 1 || !seen.insert(*ids.first().unwrap()) {
            return false;
        }
    }
    true
}

fn s3_formula(r: &mut ChaCha8Rng, n: usize, m: usize) -> Formula {
    let pool: Vec<_> = (0..4).map(named::d).collect();
    random_formula(r, n, m, &pool, 0.0)
}

fn expressibility() -> (bool, String) {
    let p = express_s3(&[named::nae()]).unwrap();
    let names = p.names();
    let mut faithful = 0;
    for name in &names {
        let g = p.lowered(name).unwrap();
        let only_nae = g.formula.relations().iter().all(|r| r.name() == "NAE");
        if only_nae && verify_faithful_capped(&g, 40).unwrap().is_none() {
            faithful += 1;
        }
    }
    let rows = p.clauses[0].witness_sets().unwrap();
    let row = |x: &str| {
        rows[&Assignment::parse(x).unwrap()]
            .iter()
            .map(|y| y.to_string())
            .collect::<Vec<_>>()
    };
    let rows_ok = row("100") == ["10000"] && row("010") == ["01001"];

    let base = p.s3_gadgets().unwrap();
    let mut r = rng(500);
    let mut pinned = 0;
    let mut pinned_total = 0;
    for _ in 0..50 {
        let n = r.gen_range(3..=7);
        let psi = s3_formula(&mut r, n, 1);
        let c = compose(&psi, &base).unwrap();
        assert!(c.formula.n() <= 20);
        pinned_total += 1;
        pinned += usize::from(components_correspond(&psi, &c.formula));
    }
    let working: HashMap<String, FaithfulExpression> =
        (0..4).map(|i| (format!("D{i}"), p.clauses[i].clone())).collect();
    let mut wider = 0;
    for _ in 0..50 {
        let n = r.gen_range(4..=8);
        let m = r.gen_range(2..=4);
        let psi = s3_formula(&mut r, n, m);
        let c = compose(&psi, &working).unwrap();
        wider += usize::from(components_correspond(&psi, &c.formula));
    }
    (
        faithful == 13 && names.len() == 13 && rows_ok && pinned == 50 && wider == 50,
        format!(
            "{faithful}/13 NAE gadgets faithful, witness rows {}, component counts preserved on {pinned}/{pinned_total} formulas with at most 20 variables and on {wider}/50 multi-clause formulas over the path gadgets",
            if rows_ok { "match" } else { "differ" }
        ),
    )
}

fn steps() -> (bool, String) {
    let (mut checked, mut failures) = (0, Vec::new());
    for rel in all_relations(3).into_iter().filter(|r| r.arity() == 3) {
        if rel.componentwise_flags().bijunctive {
            continue;
        }
        checked += 1;
        let name = rel.name().to_string();
        let ok = (|| -> Option<bool> {
            let s1 = step1_expand(&rel).ok()?;
            let q = build_graph(&s1.q).ok()?;
            let d = q.distance(&s1.a, &s1.b).ok()??;
            if d as usize <= s1.a.hamming(&s1.b) {
                return Some(false);
            }
            let s2 = step2_isolate(&s1.q, &s1.a, &s1.b).ok()?;
            let t = build_graph(&s2.t).ok()?;
            Some(
                t.is_simple_path()
                    && s2.a.hamming(&s2.b) == s2.r
                    && t.distance(&s2.a, &s2.b).ok()? == Some(s2.r as u32 + 2),
            )
        })();
        if ok != Some(true) {
            failures.push(name);
        }
    }
    (
        failures.is_empty() && checked > 0,
        format!("{checked} non-componentwise-bijunctive relations, failures: {failures:?}"),
    )
}

fn machines() -> (bool, String) {
    let battery = [
        ("accepter", TMachine::accepter(), 1, true),
        ("rejecter", TMachine::rejecter(), 1, false),
        ("boundary", TMachine::walker(), 1, false),
        ("looper", TMachine::looper(), 2, false),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, m, n, accepts) in battery {
        let c = compile_tm(&m, n, &CompileOptions::tiny()).unwrap();
        let g = SolutionGraph::from_solutions(c.formula.n(), enumerate_by_search(&c.formula, 1 << 20).unwrap());
        let st = g.st_conn(&c.s, &c.t).unwrap().connected;
        let mut configs = BTreeSet::new();
        let mut structure = true;
        for a in g.solutions() {
            let active = c.layout.transitions.iter().filter(|t| a.get(t.var)).count();
            structure &= active <= 1;
            match decode_configuration(&c, a) {
                Ok(conf) => {
                    structure &= active == 0 && c.encode(&conf).as_ref() == Ok(a);
                    structure &= configs.insert(conf.to_string());
                }
                Err(HardnessError::NotAConfiguration(_)) => structure &= active == 1,
                Err(_) => structure = false,
            }
        }
        let bijection = num_bigint::BigUint::from(configs.len()) == c.layout.configuration_count();
        let this = st == accepts && g.is_connected() == accepts && structure && bijection;
        ok &= this;
        parts.push(format!(
            "{name}(n={n}): {} vars, {} solutions, {} configurations, {}",
            c.formula.n(),
            g.len(),
            configs.len(),
            if st { "connected" } else { "disconnected" }
        ));
    }
    let full = compile_tm(&TMachine::accepter(), 1, &CompileOptions::default()).unwrap();
    let g = SolutionGraph::from_solutions(full.formula.n(), enumerate_by_search(&full.formula, 1 << 20).unwrap());
    ok &= g.is_connected();
    parts.push(format!(
        "accepter with the full clock range ({} clock cells): {}",
        full.layout.clock_len,
        if g.is_connected() { "connected" } else { "disconnected" }
    ));
    (ok, parts.join("; "))
}

fn gadget_pair() -> (bool, String) {
    let (good, bad) = faithfulness_examples();
    let g = verify_faithful(&good).unwrap();
    let b = verify_faithful(&bad).unwrap();
    let ok = g.is_none() && b.as_ref().is_some_and(|v| matches!(v.condition(), 2 | 3));
    (
        ok,
        format!(
            "faithful gadget: {}; unfaithful gadget: {}",
            g.map_or("verified".to_string(), |v| v.to_string()),
            b.map_or("verified".to_string(), |v| format!("condition {} violated ({v})", v.condition()))
        ),
    )
}

#[test]
fn acceptance_criteria() {
    let mut outcomes = vec![run(1, "exhaustive arity-3 sweep", 10, sweep)];
    let start = Instant::now();
    let instances = tight_instances();
    let build = start.elapsed();
    let mut o2 = run(2, "st-connectivity against the oracle", 60, || stconn_equivalence(&instances));
    o2.elapsed += build;
    outcomes.push(o2);
    outcomes.push(run(3, "connectivity against the oracle", 60, conn_equivalence));
    outcomes.push(run(4, "diameter dichotomy", 30, || diameters(&instances)));
    outcomes.push(run(5, "faithful expressibility end to end", 120, expressibility));
    outcomes.push(run(6, "expansion and isolation postconditions", 60, steps));
    outcomes.push(run(7, "machine reduction at micro scale", 120, machines));
    outcomes.push(run(8, "faithful and unfaithful gadget", 1, gadget_pair));
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed()).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
