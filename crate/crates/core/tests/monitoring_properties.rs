//! Properties of monitoring sets and the exact oracle, checked against the
//! exhaustive reference solver.

mod common;

use common::*;
use edgemon::generators::Rng;
use edgemon::instance::{unit_weights, weight_from_int};
use edgemon::monitor::*;
use edgemon::oracle::*;
use edgemon::{Graph, Instance, Solution};
use proptest::prelude::*;

fn arb_instance(max_n: usize, max_c: u64) -> impl Strategy<Value = Instance> {
    (1..=max_n, 20u64..90, any::<u64>())
        .prop_map(move |(n, p, seed)| random_instance(&mut Rng::new(seed), n, p, max_c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn supersets_of_monitoring_sets_monitor(inst in arb_instance(9, 2), seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let n = inst.n();
        let set: Vec<usize> = (0..n).filter(|_| rng.chance(1, 2)).collect();
        if is_monitoring_set(&inst, &set).unwrap() {
            let sup: Vec<usize> = (0..n).filter(|v| set.contains(v) || rng.chance(1, 2)).collect();
            prop_assert!(is_monitoring_set(&inst, &sup).unwrap());
        }
    }

    #[test]
    fn precheck_iff_whole_vertex_set(inst in arb_instance(9, 3)) {
        let all: Vec<usize> = (0..inst.n()).collect();
        prop_assert_eq!(feasibility_precheck(&inst), is_monitoring_set(&inst, &all).unwrap());
    }

    #[test]
    fn monitors_exclude_endpoints(inst in arb_instance(10, 1)) {
        for &(u, v) in inst.graph().edges() {
            let m = monitors(inst.graph(), (u, v)).unwrap();
            prop_assert!(!m.contains(&u) && !m.contains(&v));
            let dense = Dense::new(inst.graph());
            prop_assert_eq!(m.len(), dense.monitors_in(u, v, &vec![true; inst.n()]));
        }
    }

    #[test]
    fn one_uniform_monitoring_sets_totally_dominate(n in 2usize..9, p in 30u64..95, seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let g = random_graph(&mut rng, n, p);
        prop_assume!(!g.has_isolated_vertex());
        let inst = Instance::uniform(g.clone(), 1);
        for _ in 0..16 {
            let set: Vec<usize> = (0..n).filter(|_| rng.chance(2, 3)).collect();
            if is_monitoring_set(&inst, &set).unwrap() {
                prop_assert!(domination_predicates(&g, &set).unwrap().total);
            }
        }
    }

    #[test]
    fn oracle_matches_reference(inst in arb_instance(10, 2)) {
        let exact = exact_gamma_m(&inst, SearchBudget::default()).unwrap();
        prop_assert_eq!(&exact, &brute_gamma_m(&inst));
        prop_assert_eq!(exact.is_feasible(), feasibility_precheck(&inst));
        if let Some(set) = exact.set() {
            prop_assert!(is_monitoring_set(&inst, set).unwrap());
        }
    }

    #[test]
    fn domination_oracles_match_reference(n in 1usize..10, p in 10u64..90, seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let g = random_graph(&mut rng, n, p);
        let w = random_weights(&mut rng, n);
        let b = SearchBudget::domination();
        prop_assert_eq!(exact_gamma_t(&g, &w, b).unwrap(), brute_gamma_t(&g, &w));
        prop_assert_eq!(exact_double_dom(&g, &w, b).unwrap(), brute_double_dom(&g, &w));
        let alpha = brute_alpha(&g);
        let vc = exact_vertex_cover(&g, b).unwrap();
        prop_assert_eq!(vc.set().unwrap().len(), n - alpha);
        prop_assert!(exists_independent_set(&g, alpha, b).unwrap().is_some_and(|s| g.is_independent(&s)));
        prop_assert!(exists_independent_set(&g, alpha + 1, b).unwrap().is_none());
    }

    #[test]
    fn gamma_t_bounds_gamma_m_on_one_uniform(n in 2usize..9, p in 30u64..95, seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let g = random_graph(&mut rng, n, p);
        prop_assume!(!g.has_isolated_vertex());
        let w = random_weights(&mut rng, n);
        let inst = Instance::uniform(g.clone(), 1).with_weights(w.clone()).unwrap();
        let gm = exact_gamma_m(&inst, SearchBudget::default()).unwrap();
        let gt = exact_gamma_t(&g, &w, SearchBudget::domination()).unwrap();
        if let (Some(m), Some(t)) = (gm.value(), gt.value()) {
            prop_assert!(t <= m);
        }
    }
}

#[test]
fn minimal_witnesses_lose_feasibility_when_shrunk() {
    let mut rng = Rng::new(77);
    for _ in 0..40 {
        let n = rng.between(3, 12) as usize;
        let inst = random_instance(&mut rng, n, 70, 2);
        if let Solution::Feasible { set, .. } = exact_gamma_m(&inst, SearchBudget::default()).unwrap() {
            // Positive weights: dropping any element of an optimum must break it.
            for i in 0..set.len() {
                let mut smaller = set.clone();
                smaller.remove(i);
                assert!(!is_monitoring_set(&inst, &smaller).unwrap());
            }
        }
    }
}

#[test]
fn oracle_witnesses_are_deterministic() {
    let inst = random_instance(&mut Rng::new(5), 11, 75, 2);
    let a = exact_gamma_m(&inst, SearchBudget::default()).unwrap();
    let b = exact_gamma_m(&inst.clone(), SearchBudget::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn oracle_examples() {
    let b = SearchBudget::default();
    let k5 = Instance::uniform(Graph::complete(5), 3);
    assert_eq!(exact_gamma_m(&k5, b).unwrap().value(), Some(&weight_from_int(5)));
    let path = Instance::uniform(Graph::new(3, [(0, 1), (1, 2)]).unwrap(), 1);
    assert_eq!(exact_gamma_m(&path, b).unwrap(), Solution::Infeasible);
    let k4 = Instance::with_demand_fn(Graph::complete(4), unit_weights(4), |e| {
        if e == (0, 1) {
            2
        } else {
            0
        }
    });
    assert_eq!(
        exact_gamma_m(&k4, b).unwrap(),
        Solution::Feasible {
            set: vec![2, 3],
            value: weight_from_int(2)
        }
    );

    let d = SearchBudget::domination();
    let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    let c5 = Graph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
    assert_eq!(
        exact_gamma_t(&Graph::complete(2), &unit_weights(2), d)
            .unwrap()
            .value(),
        Some(&weight_from_int(2))
    );
    assert_eq!(
        exact_gamma_t(&Graph::empty(1), &unit_weights(1), d).unwrap(),
        Solution::Infeasible
    );
    assert_eq!(
        exact_gamma_t(&c4, &unit_weights(4), d).unwrap().value(),
        Some(&weight_from_int(2))
    );
    assert_eq!(
        exact_double_dom(&Graph::complete(3), &unit_weights(3), d)
            .unwrap()
            .value(),
        Some(&weight_from_int(2))
    );
    assert_eq!(
        exact_double_dom(&Graph::empty(1), &unit_weights(1), d).unwrap(),
        Solution::Infeasible
    );
    assert_eq!(exists_independent_set(&c5, 3, d).unwrap(), None);
    assert!(exists_independent_set(&c5, 2, d).unwrap().is_some());
    assert_eq!(
        exact_vertex_cover(&c5, d).unwrap().value(),
        Some(&weight_from_int(3))
    );
    let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
    assert_eq!(exact_vertex_cover(&star, d).unwrap().set(), Some(&[0][..]));
}
