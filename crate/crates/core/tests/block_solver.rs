mod common;

use common::*;
use edgemon::block::*;
use edgemon::generators::{gen_block_graph, DemandSpec, GenParams, Rng, WeightSpec};
use edgemon::Instance;
use proptest::prelude::*;

fn random_block_instance(seed: u64, max_c: u32, max_n: usize) -> Instance {
    let mut rng = Rng::new(seed);
    let mut sizes = Vec::new();
    let mut n = 0;
    loop {
        let s = rng.between(2, 5) as usize;
        let grown = if sizes.is_empty() { s } else { n + s - 1 };
        if grown > max_n {
            break;
        }
        sizes.push(s);
        n = grown;
    }
    let p = GenParams::new(
        seed,
        DemandSpec::Range { lo: 0, hi: max_c },
        WeightSpec::Random {
            max_num: 9,
            max_den: 4,
        },
    );
    gen_block_graph(&sizes, &p).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matches_reference(seed in any::<u64>(), c in 0u32..3) {
        let inst = random_block_instance(seed, c, 12);
        let got = solve_block(&inst).unwrap();
        let reference = brute_gamma_m(&inst);
        prop_assert_eq!(got.value(), reference.value());
        if let Some(s) = got.set() {
            prop_assert!(edgemon::monitor::is_monitoring_set(&inst, s).unwrap());
        }
    }

    #[test]
    fn root_choice_does_not_change_the_value(seed in any::<u64>(), c in 0u32..3) {
        let inst = random_block_instance(seed, c, 14);
        let first = solve_block_with(&inst, BlockOptions { root: RootChoice::First, ..Default::default() }).unwrap();
        let last = solve_block_with(&inst, BlockOptions { root: RootChoice::Last, ..Default::default() }).unwrap();
        prop_assert_eq!(first.value(), last.value());
    }

    #[test]
    fn uniform_leaves_agree_with_enumeration(seed in any::<u64>(), k in 0u32..3) {
        let base = random_block_instance(seed, 0, 14);
        let inst = Instance::uniform(base.graph().clone(), k).with_weights(base.weights().to_vec()).unwrap();
        let enumerate = solve_block(&inst).unwrap();
        let uniform = solve_block_with(&inst, BlockOptions { leaf_solver: LeafSolver::Uniform, ..Default::default() }).unwrap();
        prop_assert_eq!(enumerate.value(), uniform.value());
    }

    #[test]
    fn generated_blocks_are_cliques(seed in any::<u64>()) {
        let inst = random_block_instance(seed, 1, 16);
        let tree = block_cut_tree(inst.graph());
        prop_assert!(tree.is_block_graph());
        prop_assert!(inst.graph().is_connected());
        // A tree of b blocks glued at single vertices.
        let glue: usize = tree.blocks.iter().map(|b| b.len()).sum::<usize>() - inst.n();
        prop_assert_eq!(glue, tree.blocks.len() - 1);
    }
}

#[test]
fn seeded_block_graph_decomposes_into_cliques() {
    let p = GenParams::uniform(1, 1);
    let inst = gen_block_graph(&[4, 3, 2], &p).unwrap();
    let tree = block_cut_tree(inst.graph());
    assert_eq!(inst.n(), 7);
    let mut sizes: Vec<usize> = tree.blocks.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![2, 3, 4]);
    assert!(tree.is_block_graph());
}

#[test]
fn disconnected_inputs_sum_their_components() {
    let a = random_block_instance(3, 1, 7);
    let b = random_block_instance(4, 1, 6);
    let n = a.n() + b.n();
    let edges = a
        .graph()
        .edges()
        .iter()
        .copied()
        .chain(b.graph().edges().iter().map(|&(u, v)| (u + a.n(), v + a.n())));
    let g = edgemon::Graph::new(n, edges).unwrap();
    let weights = a.weights().iter().chain(b.weights()).cloned().collect();
    let demand = a
        .demands()
        .chain(b.demands().map(|((u, v), c)| ((u + a.n(), v + a.n()), c)))
        .collect();
    let both = Instance::new(g, demand, weights).unwrap();
    let got = solve_block(&both).unwrap();
    assert_eq!(got.value(), brute_gamma_m(&both).value());
}
