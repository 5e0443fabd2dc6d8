//! Exact solver for weighted edge monitoring on block graphs with bounded
//! demand.
//!
//! In a block graph every triangle sits inside one block, so a leaf block
//! `B` attached at cut vertex `u` interacts with the rest only through `u`.
//! The leaf is solved twice (free and with `u` forced in), the difference
//! `d` becomes the new weight of `u`, and the leaf is dropped. The last
//! remaining block is solved normally, and the choices are replayed from
//! the root outward to recover a witness.

use crate::complete::{
    solve_complete_cbounded, solve_complete_uniform, solve_complete_uniform_forced, CompleteInstance,
};
use crate::error::{contract, input, Result};
use crate::graph::{Graph, Vertex};
use crate::instance::{Instance, Solution, Weight};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCutTree {
    /// Maximal biconnected pieces, each sorted; isolated vertices form
    /// singleton blocks. Ordered lexicographically.
    pub blocks: Vec<Vec<Vertex>>,
    /// Articulation points, sorted.
    pub cutpoints: Vec<Vertex>,
    /// `(block index, cutpoint)` pairs of the tree.
    pub incidence: Vec<(usize, Vertex)>,
    /// Indices of blocks that do not induce a clique.
    pub non_clique: Vec<usize>,
}

impl BlockCutTree {
    pub fn is_block_graph(&self) -> bool {
        self.non_clique.is_empty()
    }
}

/// Biconnected components with Tarjan's edge-stack algorithm, run with an
/// explicit stack.
pub fn block_cut_tree(g: &Graph) -> BlockCutTree {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        if g.degree(root) == 0 {
            disc[root] = time;
            time += 1;
            blocks.push(vec![root]);
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, index of the next neighbour to look at)
        let mut frames = vec![(root, usize::MAX, 0usize)];
        while let Some(frame) = frames.last_mut() {
            let (v, parent) = (frame.0, frame.1);
            if let Some(&w) = g.neighbors(v).get(frame.2) {
                frame.2 += 1;
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edge_stack.push((v, w));
                    frames.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(p, _, _)) = frames.last() {
                low[p] = low[p].min(low[v]);
                if low[v] >= disc[p] {
                    let mut block = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        block.extend([e.0, e.1]);
                        if e == (p, v) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    block.dedup();
                    blocks.push(block);
                }
            }
        }
    }
    blocks.sort();

    let mut count = vec![0usize; n];
    for b in &blocks {
        b.iter().for_each(|&v| count[v] += 1);
    }
    let cutpoints: Vec<Vertex> = (0..n).filter(|&v| count[v] > 1).collect();
    let incidence = blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| b.iter().filter(|&&v| count[v] > 1).map(move |&v| (i, v)))
        .collect();
    let non_clique = blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| !g.is_clique(b))
        .map(|(i, _)| i)
        .collect();
    BlockCutTree {
        blocks,
        cutpoints,
        incidence,
        non_clique,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootChoice {
    /// Keep the block listed first in each component as the root.
    First,
    /// Keep the block listed last.
    Last,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafSolver {
    /// Enumerate every set of at most `C + 2` vertices.
    Enumerate,
    /// Take the `k + 2` lightest vertices; needs uniform demand.
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockOptions {
    pub root: RootChoice,
    pub leaf_solver: LeafSolver,
    /// Largest admitted demand.
    pub demand_bound: u32,
}

impl Default for BlockOptions {
    fn default() -> Self {
        BlockOptions {
            root: RootChoice::First,
            leaf_solver: LeafSolver::Enumerate,
            demand_bound: 4,
        }
    }
}

/// Optimum of one block under the current weights, free or with `force`.
fn solve_piece(
    inst: &Instance,
    block: &[Vertex],
    weights: &[Weight],
    force: Option<Vertex>,
    leaf: LeafSolver,
) -> Result<Solution> {
    let local_weights = block.iter().map(|&v| weights[v].clone()).collect();
    let sub = inst.induced(block).with_weights(local_weights)?;
    let local_force = force.map(|u| block.binary_search(&u).expect("cut vertex in block"));
    let sub = CompleteInstance::new(sub)?;
    let sol = match leaf {
        LeafSolver::Enumerate => solve_complete_cbounded(&sub, local_force)?,
        LeafSolver::Uniform => match (sub.instance().uniform_demand(), local_force) {
            (Some(0), None) => Solution::Feasible {
                set: vec![],
                value: Weight::default(),
            },
            (Some(0), Some(u)) => Solution::from_set(vec![u], sub.instance().weights()),
            (Some(_), None) => solve_complete_uniform(&sub)?,
            (Some(_), Some(u)) => solve_complete_uniform_forced(&sub, u)?,
            (None, _) => return contract("uniform leaf solver needs uniform demand in every block"),
        },
    };
    Ok(sol.relabel(block))
}

struct Eliminated {
    block: usize,
    cut: Vertex,
    free: Solution,
    forced: Solution,
}

pub fn solve_block(inst: &Instance) -> Result<Solution> {
    solve_block_with(inst, BlockOptions::default())
}

pub fn solve_block_with(inst: &Instance, opts: BlockOptions) -> Result<Solution> {
    let g = inst.graph();
    if inst.max_demand() > opts.demand_bound {
        return contract(format!(
            "maximum demand {} exceeds the configured bound {}",
            inst.max_demand(),
            opts.demand_bound
        ));
    }
    let tree = block_cut_tree(g);
    if !tree.is_block_graph() {
        return input("graph is not a block graph: some block is not a clique");
    }
    let mut home = vec![Vec::new(); g.n()];
    for (i, b) in tree.blocks.iter().enumerate() {
        b.iter().for_each(|&v| home[v].push(i));
    }
    for &(u, v) in g.edges() {
        let b = home[u]
            .iter()
            .find(|i| home[v].contains(i))
            .expect("edge inside a block");
        let block = &tree.blocks[*b];
        assert!(
            g.common_neighbors(u, v)
                .iter()
                .all(|x| block.binary_search(x).is_ok()),
            "triangle leaves its block"
        );
    }

    let mut weights: Vec<Weight> = inst.weights().to_vec();
    let mut total = Weight::default();
    let mut roots = Vec::new();
    let mut replay: Vec<Eliminated> = Vec::new();

    for comp in g.components() {
        let comp_blocks: Vec<usize> = (0..tree.blocks.len())
            .filter(|&i| comp.binary_search(&tree.blocks[i][0]).is_ok())
            .collect();
        let root = match opts.root {
            RootChoice::First => comp_blocks[0],
            RootChoice::Last => *comp_blocks.last().expect("component has a block"),
        };
        // Preorder over blocks, remembering the cut shared with the parent.
        let mut order: Vec<(usize, Option<Vertex>)> = Vec::new();
        let mut stack = vec![(root, None)];
        while let Some((b, cut)) = stack.pop() {
            order.push((b, cut));
            for &x in tree.blocks[b].iter().rev() {
                if Some(x) == cut {
                    continue;
                }
                for &child in home[x].iter().rev() {
                    if child != b {
                        stack.push((child, Some(x)));
                    }
                }
            }
        }
        for &(b, cut) in order.iter().rev() {
            let block = &tree.blocks[b];
            let Some(u) = cut else {
                let sol = solve_piece(inst, block, &weights, None, opts.leaf_solver)?;
                match sol.value() {
                    None => return Ok(Solution::Infeasible),
                    Some(v) => total += v,
                }
                roots.push(sol);
                continue;
            };
            let free = solve_piece(inst, block, &weights, None, opts.leaf_solver)?;
            let forced = solve_piece(inst, block, &weights, Some(u), opts.leaf_solver)?;
            assert_eq!(
                free.is_feasible(),
                forced.is_feasible(),
                "forcing changed feasibility"
            );
            let (Some(fv), Some(gv)) = (free.value(), forced.value()) else {
                return Ok(Solution::Infeasible);
            };
            let d = gv - fv;
            assert!(d >= Weight::default(), "forced optimum below free optimum");
            total += fv;
            weights[u] = d;
            replay.push(Eliminated {
                block: b,
                cut: u,
                free,
                forced,
            });
        }
    }

    let mut chosen = vec![false; g.n()];
    for sol in &roots {
        sol.set().unwrap().iter().for_each(|&v| chosen[v] = true);
    }
    for e in replay.iter().rev() {
        debug_assert!(tree.blocks[e.block].contains(&e.cut));
        let pick = if chosen[e.cut] { &e.forced } else { &e.free };
        pick.set().unwrap().iter().for_each(|&v| chosen[v] = true);
    }
    let set: Vec<Vertex> = (0..g.n()).filter(|&v| chosen[v]).collect();
    let sol = Solution::from_set(set, inst.weights());
    assert_eq!(
        sol.value(),
        Some(&total),
        "witness weight differs from the computed optimum"
    );
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::weight_from_int;

    fn bowtie() -> Graph {
        Graph::new(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn tree_examples() {
        let t = block_cut_tree(&bowtie());
        assert_eq!(t.blocks, vec![vec![0, 1, 2], vec![2, 3, 4]]);
        assert_eq!(t.cutpoints, vec![2]);
        assert!(t.is_block_graph());

        let t = block_cut_tree(&Graph::complete(4));
        assert_eq!((t.blocks.len(), t.cutpoints.len()), (1, 0));

        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let t = block_cut_tree(&path);
        assert_eq!(t.blocks, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(t.cutpoints, vec![1]);
        assert_eq!(t.incidence, vec![(0, 1), (1, 1)]);

        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(block_cut_tree(&c4).non_clique, vec![0]);
        assert_eq!(block_cut_tree(&Graph::empty(2)).blocks, vec![vec![0], vec![1]]);
    }

    #[test]
    fn solve_examples() {
        let s = solve_block(&Instance::uniform(bowtie(), 1)).unwrap();
        assert_eq!(
            s,
            Solution::Feasible {
                set: vec![0, 1, 2, 3, 4],
                value: weight_from_int(5)
            }
        );
        let k4 = solve_block(&Instance::uniform(Graph::complete(4), 1)).unwrap();
        assert_eq!(k4.value(), Some(&weight_from_int(3)));
        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            solve_block(&Instance::uniform(path, 1)).unwrap(),
            Solution::Infeasible
        );
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(solve_block(&Instance::uniform(c4, 0)).is_err());
    }

    #[test]
    fn options_agree() {
        let inst = Instance::uniform(bowtie(), 1);
        for root in [RootChoice::First, RootChoice::Last] {
            for leaf_solver in [LeafSolver::Enumerate, LeafSolver::Uniform] {
                let opts = BlockOptions {
                    root,
                    leaf_solver,
                    demand_bound: 4,
                };
                assert_eq!(
                    solve_block_with(&inst, opts).unwrap().value(),
                    Some(&weight_from_int(5))
                );
            }
        }
        let tight = BlockOptions {
            demand_bound: 0,
            ..BlockOptions::default()
        };
        assert!(solve_block_with(&inst, tight).is_err());
    }
}
