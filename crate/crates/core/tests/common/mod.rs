//! Helpers shared by the integration tests: an exhaustive reference solver
//! written independently of the crate's branch and bound, and small random
//! graph builders.
#![allow(dead_code)]

use edgemon::generators::Rng;
use edgemon::instance::{weight_ratio, Instance, Weight};
use edgemon::{Graph, Solution, Vertex};

/// Adjacency matrix view used by the reference predicates.
pub struct Dense {
    pub n: usize,
    adj: Vec<Vec<bool>>,
}

impl Dense {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in g.edges() {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Dense { n, adj }
    }

    pub fn adj(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u][v]
    }

    /// Number of chosen vertices closing a triangle with `{u, v}`.
    pub fn monitors_in(&self, u: Vertex, v: Vertex, chosen: &[bool]) -> usize {
        (0..self.n)
            .filter(|&x| chosen[x] && self.adj[x][u] && self.adj[x][v])
            .count()
    }
}

/// Checks every edge demand by direct triangle counting.
pub fn monitors_all(inst: &Instance, dense: &Dense, chosen: &[bool]) -> bool {
    inst.demands()
        .all(|((u, v), c)| dense.monitors_in(u, v, chosen) >= c as usize)
}

pub fn is_total_dominating(dense: &Dense, chosen: &[bool]) -> bool {
    (0..dense.n).all(|x| (0..dense.n).any(|y| chosen[y] && dense.adj(x, y)))
}

pub fn is_double_dominating(dense: &Dense, chosen: &[bool]) -> bool {
    (0..dense.n).all(|x| {
        (0..dense.n)
            .filter(|&y| chosen[y] && (y == x || dense.adj(x, y)))
            .count()
            >= 2
    })
}

/// Minimum weight over all subsets accepted by `ok`, ties to the
/// lexicographically smallest sorted set.
pub fn brute_min(n: usize, weights: &[Weight], ok: impl Fn(&[bool]) -> bool) -> Solution {
    assert!(n <= 22, "reference search is exhaustive");
    let mut best: Option<(Weight, Vec<Vertex>)> = None;
    let mut chosen = vec![false; n];
    for mask in 0u32..(1u32 << n) {
        for (v, c) in chosen.iter_mut().enumerate() {
            *c = mask >> v & 1 == 1;
        }
        if !ok(&chosen) {
            continue;
        }
        let set: Vec<Vertex> = (0..n).filter(|&v| chosen[v]).collect();
        let value: Weight = set.iter().map(|&v| weights[v].clone()).sum();
        let better = match &best {
            None => true,
            Some((bv, bs)) => value < *bv || (value == *bv && set < *bs),
        };
        if better {
            best = Some((value, set));
        }
    }
    match best {
        None => Solution::Infeasible,
        Some((value, set)) => Solution::Feasible { set, value },
    }
}

pub fn brute_gamma_m(inst: &Instance) -> Solution {
    let dense = Dense::new(inst.graph());
    brute_min(inst.n(), inst.weights(), |s| monitors_all(inst, &dense, s))
}

pub fn brute_gamma_t(g: &Graph, w: &[Weight]) -> Solution {
    let dense = Dense::new(g);
    brute_min(g.n(), w, |s| is_total_dominating(&dense, s))
}

pub fn brute_double_dom(g: &Graph, w: &[Weight]) -> Solution {
    let dense = Dense::new(g);
    brute_min(g.n(), w, |s| is_double_dominating(&dense, s))
}

/// `α(G)` by exhaustive search.
pub fn brute_alpha(g: &Graph) -> usize {
    let dense = Dense::new(g);
    let n = g.n();
    (0u32..1 << n)
        .filter(|&m| {
            (0..n).all(|u| (u + 1..n).all(|v| m >> u & 1 == 0 || m >> v & 1 == 0 || !dense.adj(u, v)))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Minimum cardinality of a monitoring set (weights ignored).
pub fn brute_min_size(inst: &Instance) -> Option<usize> {
    let unit = vec![weight_ratio(1, 1); inst.n()];
    let dense = Dense::new(inst.graph());
    brute_min(inst.n(), &unit, |s| monitors_all(inst, &dense, s))
        .set()
        .map(|s| s.len())
}

pub fn random_graph(rng: &mut Rng, n: usize, percent: u64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect::<Vec<_>>()
        .into_iter()
        .filter(|_| rng.chance(percent, 100))
        .collect();
    Graph::new(n, edges).unwrap()
}

pub fn random_weights(rng: &mut Rng, n: usize) -> Vec<Weight> {
    (0..n)
        .map(|_| weight_ratio(rng.between(1, 9) as i64, rng.between(1, 4) as i64))
        .collect()
}

pub fn random_instance(rng: &mut Rng, n: usize, percent: u64, max_c: u64) -> Instance {
    let g = random_graph(rng, n, percent);
    let w = random_weights(rng, n);
    let demand = g
        .edges()
        .iter()
        .map(|&e| (e, rng.between(0, max_c) as u32))
        .collect();
    Instance::new(g, demand, w).unwrap()
}

pub fn mask(n: usize, set: &[Vertex]) -> Vec<bool> {
    let mut m = vec![false; n];
    set.iter().for_each(|&v| m[v] = true);
    m
}

/// All connected graphs on `n` labelled vertices.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|m| {
            let e = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, &p)| p);
            Graph::new(n, e).unwrap()
        })
        .filter(|g| g.is_connected())
        .collect()
}
