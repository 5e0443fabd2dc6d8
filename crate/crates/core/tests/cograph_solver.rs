mod common;

use common::*;
use edgemon::cograph::*;
use edgemon::generators::{gen_cograph, DemandSpec, GenParams, Rng, WeightSpec};
use edgemon::monitor::is_monitoring_set;
use edgemon::{Graph, Instance};
use proptest::prelude::*;

fn params(seed: u64) -> GenParams {
    GenParams::new(
        seed,
        DemandSpec::Uniform(1),
        WeightSpec::Random {
            max_num: 9,
            max_den: 4,
        },
    )
}

/// Join of two random graphs on `0..a` and `a..a+b`.
fn random_join(rng: &mut Rng, a: usize, b: usize) -> Graph {
    let g1 = random_graph(rng, a, 50);
    let g2 = random_graph(rng, b, 50);
    let edges = g1
        .edges()
        .iter()
        .copied()
        .chain(g2.edges().iter().map(|&(u, v)| (u + a, v + a)))
        .chain((0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))));
    Graph::new(a + b, edges).unwrap()
}

/// Total domination of the subgraph induced on `side`, by vertices of `side`.
fn dominates_side(dense: &Dense, side: std::ops::Range<usize>, chosen: &[bool]) -> bool {
    side.clone()
        .all(|x| side.clone().any(|y| chosen[y] && dense.adj(x, y)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matches_reference(seed in any::<u64>(), n in 1usize..13) {
        let (inst, tree) = gen_cograph(n, &params(seed)).unwrap();
        let got = solve_cograph(&inst, &tree).unwrap();
        let reference = brute_gamma_m(&inst);
        prop_assert_eq!(got.value(), reference.value());
        if let Some(s) = got.set() {
            prop_assert!(is_monitoring_set(&inst, s).unwrap());
        }
        let gt = gamma_t_cograph(&tree, inst.weights()).unwrap();
        let gt_ref = brute_gamma_t(inst.graph(), inst.weights());
        prop_assert_eq!(gt.value(), gt_ref.value());
    }

    #[test]
    fn cotrees_round_trip(seed in any::<u64>(), n in 1usize..14) {
        let (inst, tree) = gen_cograph(n, &params(seed)).unwrap();
        prop_assert_eq!(&tree.realize(n).unwrap(), inst.graph());
        let rebuilt = cotree_build(inst.graph()).unwrap();
        prop_assert_eq!(&rebuilt.realize(n).unwrap(), inst.graph());
        let text = tree.to_string();
        prop_assert_eq!(Cotree::parse(&text).unwrap(), tree);
    }

    #[test]
    fn join_sets_meeting_both_sides(seed in any::<u64>(), a in 1usize..6, b in 1usize..6) {
        let mut rng = Rng::new(seed);
        let g = random_join(&mut rng, a, b);
        let n = a + b;
        let dense = Dense::new(&g);
        let inst = Instance::uniform(g, 1);
        for _ in 0..24 {
            let chosen: Vec<bool> = (0..n).map(|_| rng.chance(1, 2)).collect();
            let left = (0..a).any(|v| chosen[v]);
            let right = (a..n).any(|v| chosen[v]);
            if !(left && right) {
                continue;
            }
            let expected = dominates_side(&dense, 0..a, &chosen) || dominates_side(&dense, a..n, &chosen);
            prop_assert_eq!(monitors_all(&inst, &dense, &chosen), expected);
        }
    }

    #[test]
    fn side_domination_covers_cross_edges(seed in any::<u64>(), a in 2usize..7, b in 1usize..6) {
        let mut rng = Rng::new(seed);
        let g = random_join(&mut rng, a, b);
        let n = a + b;
        let dense = Dense::new(&g);
        for _ in 0..24 {
            let chosen: Vec<bool> = (0..n).map(|v| v < a && rng.chance(2, 3)).collect();
            if !dominates_side(&dense, 0..a, &chosen) {
                continue;
            }
            for u in 0..a {
                for v in a..n {
                    prop_assert!(dense.monitors_in(u, v, &chosen) >= 1);
                }
            }
        }
    }
}

#[test]
fn generated_cographs_have_no_induced_p4() {
    let (inst, _) = gen_cograph(8, &GenParams::uniform(5, 1)).unwrap();
    let g = inst.graph();
    let n = g.n();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let distinct = [a, b, c, d]
                        .iter()
                        .collect::<std::collections::BTreeSet<_>>()
                        .len()
                        == 4;
                    if !distinct {
                        continue;
                    }
                    let path = g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d);
                    let chords = g.has_edge(a, c) || g.has_edge(b, d) || g.has_edge(a, d);
                    assert!(!(path && !chords), "induced P4 {a}-{b}-{c}-{d}");
                }
            }
        }
    }
}

#[test]
fn non_cographs_are_rejected() {
    let c5 = Graph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
    assert_eq!(cotree_build(&c5), Err(NotCograph));
    let inst = Instance::uniform(Graph::complete(3), 1);
    let k2_plus_leaf = Cotree::parse("(union (join (leaf 0) (leaf 1)) (leaf 2))").unwrap();
    assert!(solve_cograph(&inst, &k2_plus_leaf).is_err());
}
