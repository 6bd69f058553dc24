use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use solgraph::formulas::{affine_system, clausal_form, horn_sat, ClauseShape, Lit, TwoSat};
use solgraph::graph::has_cycle;
use solgraph::oracle::{build_graph, enumerate_by_search, enumerate_solutions};
use solgraph::random::{all_relations, method_pool, random_formula, random_relation, tight_pool};
use solgraph::relations::{closed_under, Binding, RelationFlags};
use solgraph::tight::{conn_poly, monotone_endpoint, stconn_tight};
use solgraph::{classify_set, Assignment, ClosureOp, ConnMethod, Formula, Relation, TightClass, Verdict};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn tight_formula(seed: u64, class: TightClass) -> Formula {
    let mut r = rng(seed);
    let n = r.gen_range(2..=10);
    let m = r.gen_range(1..=2 * n);
    random_formula(&mut r, n, m, &tight_pool(class), 0.1)
}

fn class_strategy() -> impl Strategy<Value = TightClass> {
    prop_oneof![
        Just(TightClass::ComponentwiseBijunctive),
        Just(TightClass::OrFree),
        Just(TightClass::NandFree)
    ]
}

fn method_strategy() -> impl Strategy<Value = ConnMethod> {
    prop::sample::select(ConnMethod::ALL.to_vec())
}

#[test]
fn relationship_containments_on_all_small_relations() {
    for r in all_relations(3) {
        let f = RelationFlags::of(&r);
        assert!(!f.bijunctive || f.componentwise_bijunctive, "{}", r.name());
        assert!(!f.horn || f.or_free, "{}", r.name());
        assert!(!f.dual_horn || f.nand_free, "{}", r.name());
        assert!(!f.affine || (f.componentwise_bijunctive && f.or_free && f.nand_free), "{}", r.name());
    }
}

#[test]
fn closure_passes_to_components() {
    for r in all_relations(3) {
        for op in ClosureOp::ALL {
            if closed_under(&r, op) {
                for c in r.components() {
                    assert!(closed_under(&c, op), "{} {}", r.name(), op.id());
                }
            }
        }
    }
}

#[test]
fn clausal_forms_match_closure() {
    for r in all_relations(3) {
        for (shape, op) in [
            (ClauseShape::TwoCnf, ClosureOp::Maj3),
            (ClauseShape::Horn, ClosureOp::And2),
            (ClauseShape::IhsbMinus, ClosureOp::IhsbMinus3),
            (ClauseShape::IhsbPlus, ClosureOp::IhsbPlus3),
        ] {
            assert_eq!(clausal_form(&r, shape).is_some(), closed_under(&r, op), "{} {shape:?}", r.name());
        }
    }
}

#[test]
fn fixing_and_projecting_commute() {
    for r in all_relations(3).into_iter().filter(|r| r.arity() == 3) {
        for p in 0..3 {
            for q in (0..3).filter(|&q| q != p) {
                let keep = 3 - p - q;
                for c in [false, true] {
                    let mut b = vec![Binding::Free; 3];
                    b[p] = Binding::Const(c);
                    let others: Vec<usize> = (0..3).filter(|&i| i != p).collect();
                    let left = r
                        .substitute(&b)
                        .and_then(|s| s.project(&[others.iter().position(|&i| i == keep).unwrap()]));
                    let kept: Vec<usize> = (0..3).filter(|&i| i != q).collect();
                    let mut b2 = vec![Binding::Free; 2];
                    b2[kept.iter().position(|&i| i == p).unwrap()] = Binding::Const(c);
                    let right = r.project(&kept).and_then(|s| s.substitute(&b2));
                    match (left, right) {
                        (Ok(a), Ok(b)) => assert!(a.same_tuples(&b), "{} p={p} q={q} c={c}", r.name()),
                        (Err(_), Err(_)) => {}
                        (a, b) => panic!("{}: {a:?} vs {b:?}", r.name()),
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schaefer_sets_are_tight(seed in any::<u64>(), count in 1usize..4) {
        let mut r = rng(seed);
        let rels: Vec<Relation> = (0..count)
            .map(|i| random_relation(&mut r, 1 + i % 4).renamed(format!("S{i}")))
            .collect();
        let report = classify_set(&rels);
        if matches!(report.verdict, Verdict::Schaefer(_)) {
            prop_assert!(!report.tight_branches.is_empty());
            prop_assert!(report.verdict.is_tight());
        }
    }

    #[test]
    fn enumeration_matches_evaluation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=12);
        let pool: Vec<Relation> = all_relations(3).into_iter().step_by(7).collect();
        let m = r.gen_range(0..=n);
        let f = random_formula(&mut r, n, m, &pool, 0.2);
        let sols = enumerate_solutions(&f).unwrap();
        for code in 0..1u64 << n {
            let a = Assignment::from_code(code, n);
            prop_assert_eq!(sols.binary_search(&a).is_ok(), f.evaluate(&a));
        }
        prop_assert_eq!(enumerate_by_search(&f, 1 << 13).unwrap(), sols);
    }

    #[test]
    fn affine_system_matches_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=12);
        let m = r.gen_range(1..=n);
        let f = random_formula(&mut r, n, m, &method_pool(ConnMethod::Affine), 0.1);
        let sys = affine_system(&f).unwrap();
        for code in 0..1u64 << n {
            let a = Assignment::from_code(code, n);
            prop_assert_eq!(sys.is_solution(&a), f.evaluate(&a));
        }
    }

    #[test]
    fn horn_sat_finds_the_minimum(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=12);
        let mut f = Formula::new(n);
        let mut clauses = Vec::new();
        for _ in 0..r.gen_range(1..=2 * n) {
            let k = r.gen_range(1..=3.min(n));
            let neg = r.gen_range(k - 1..=k);
            let vars = rand::seq::index::sample(&mut r, n, k).into_vec();
            f.push(&Relation::clause(format!("H{k}_{neg}"), k, neg).unwrap(), &vars).unwrap();
            clauses.push(
                vars.iter()
                    .enumerate()
                    .map(|(i, &v)| if i < neg { Lit::neg(v) } else { Lit::pos(v) })
                    .collect::<Vec<_>>(),
            );
        }
        let sols = enumerate_solutions(&f).unwrap();
        let got = horn_sat(n, &clauses, &[]).unwrap();
        match sols.first() {
            None => prop_assert!(got.is_none()),
            Some(_) => {
                let min: Vec<bool> = (0..n).map(|v| sols.iter().all(|s| s.get(v))).collect();
                prop_assert_eq!(got, Some(min));
            }
        }
    }

    #[test]
    fn oracle_paths_are_hypercube_walks(seed in any::<u64>(), class in class_strategy()) {
        let f = tight_formula(seed, class);
        let g = build_graph(&f).unwrap();
        prop_assume!(g.len() >= 2);
        let mut r = rng(seed ^ 1);
        let s = &g.solutions()[r.gen_range(0..g.len())];
        let t = &g.solutions()[r.gen_range(0..g.len())];
        let res = g.st_conn(s, t).unwrap();
        if let Some(path) = res.path {
            prop_assert_eq!(&path[0], s);
            prop_assert_eq!(path.last().unwrap(), t);
            for w in path.windows(2) {
                prop_assert_eq!(w[0].hamming(&w[1]), 1);
            }
            prop_assert!(path.iter().all(|a| f.evaluate(a)));
        }
    }

    #[test]
    fn componentwise_bijunctive_distance_is_hamming(seed in any::<u64>()) {
        let f = tight_formula(seed, TightClass::ComponentwiseBijunctive);
        let g = build_graph(&f).unwrap();
        prop_assume!(!g.is_empty());
        for (i, s) in g.solutions().iter().enumerate().take(8) {
            for (j, d) in g.distances_from(i).into_iter().enumerate() {
                if let Some(d) = d {
                    prop_assert_eq!(d as usize, s.hamming(&g.solutions()[j]));
                }
            }
        }
        prop_assert!(g.diameter().unwrap() as usize <= f.n());
    }

    #[test]
    fn tight_diameter_at_most_twice_n(seed in any::<u64>(), class in class_strategy()) {
        let f = tight_formula(seed, class);
        let g = build_graph(&f).unwrap();
        prop_assume!(!g.is_empty());
        prop_assert!(g.diameter().unwrap() as usize <= 2 * f.n());
    }

    #[test]
    fn stconn_agrees_with_oracle(seed in any::<u64>(), class in class_strategy()) {
        let f = tight_formula(seed, class);
        let g = build_graph(&f).unwrap();
        prop_assume!(!g.is_empty());
        let mut r = rng(seed ^ 2);
        for _ in 0..5 {
            let s = &g.solutions()[r.gen_range(0..g.len())];
            let t = &g.solutions()[r.gen_range(0..g.len())];
            let d = stconn_tight(&f, class, s, t).unwrap();
            prop_assert_eq!(d.answer, g.st_conn(s, t).unwrap().connected);
            if let Some(path) = d.path {
                for w in path.windows(2) {
                    prop_assert_eq!(w[0].hamming(&w[1]), 1);
                }
                prop_assert!(path.iter().all(|a| f.evaluate(a)));
                match class {
                    TightClass::ComponentwiseBijunctive => prop_assert_eq!(path.len() - 1, s.hamming(t)),
                    _ => prop_assert!(path.len() - 1 <= 2 * f.n()),
                }
            }
        }
    }

    #[test]
    fn monotone_walk_ends_at_component_extremum(seed in any::<u64>(), up in any::<bool>()) {
        let class = if up { TightClass::NandFree } else { TightClass::OrFree };
        let f = tight_formula(seed, class);
        let g = build_graph(&f).unwrap();
        for comp in g.components() {
            let members: Vec<&Assignment> = comp.iter().map(|&i| &g.solutions()[i]).collect();
            let bits: Vec<bool> = (0..f.n())
                .map(|v| if up { members.iter().any(|a| a.get(v)) } else { members.iter().all(|a| a.get(v)) })
                .collect();
            let extremum = Assignment::from_bits(&bits);
            prop_assert!(members.contains(&&extremum));
            for a in members {
                prop_assert_eq!(monotone_endpoint(&f, a, up), extremum.clone());
            }
        }
    }

    #[test]
    fn conn_poly_agrees_with_oracle(seed in any::<u64>(), method in method_strategy()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=10);
        let m = r.gen_range(1..=2 * n);
        let f = random_formula(&mut r, n, m, &method_pool(method), 0.1);
        let g = build_graph(&f).unwrap();
        match conn_poly(&f, method) {
            Ok(d) => {
                prop_assert_eq!(d.answer, g.component_count() == 1);
                if let Some(solgraph::tight::Certificate::Pair(a, b)) = d.certificate {
                    prop_assert!(!g.st_conn(&a, &b).unwrap().connected);
                }
            }
            Err(solgraph::tight::TightError::Unsatisfiable) => prop_assert!(g.is_empty()),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn acyclic_implications_are_connected(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=10);
        let mut f = Formula::new(n);
        let mut clauses = Vec::new();
        for _ in 0..r.gen_range(1..=n) {
            let neg = r.gen_range(0..=2);
            let vars = rand::seq::index::sample(&mut r, n, 2).into_vec();
            f.push(&Relation::clause(format!("B{neg}"), 2, neg).unwrap(), &vars).unwrap();
            clauses.push(vec![
                if neg >= 1 { Lit::neg(vars[0]) } else { Lit::pos(vars[0]) },
                if neg == 2 { Lit::neg(vars[1]) } else { Lit::pos(vars[1]) },
            ]);
        }
        let ts = TwoSat::new(n, &clauses).unwrap();
        prop_assume!(!has_cycle(ts.implication_graph()));
        prop_assert!(conn_poly(&f, ConnMethod::Bijunctive).unwrap().answer);
        prop_assert!(build_graph(&f).unwrap().is_connected());
    }
}
