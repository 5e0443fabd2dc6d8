//! Instance transformations from the hardness proofs, each with a checkable
//! relation between optima, and the split-graph solver that monitoring
//! shares with double domination.

use crate::complete::CompleteInstance;
use crate::error::{input, EmError, Result};
use crate::format::Coordinates;
use crate::generators::unit_disk_graph;
use crate::graph::{Graph, Vertex};
use crate::instance::{unit_weights, CostScale, Instance, Solution};
use crate::oracle::{
    double_domination_problem, monitoring_problem, to_solution, SearchBudget, MAX_SEARCH_VERTICES,
};

/// `G` plus a triangle `{u, v, w}` with `u` adjacent to every original
/// vertex; `γ_m(G') = γ_t(G) + 3`. The new vertices are `n, n + 1, n + 2`.
pub fn reduce_tds_to_em(g: &Graph) -> Result<Instance> {
    if g.has_isolated_vertex() {
        return input("total domination source must have no isolated vertex");
    }
    let n = g.n();
    let (u, v, w) = (n, n + 1, n + 2);
    let edges = g
        .edges()
        .iter()
        .copied()
        .chain((0..n).map(|x| (x, u)))
        .chain([(u, v), (u, w), (v, w)]);
    Ok(Instance::uniform(Graph::new(n + 3, edges)?, 1))
}

/// Complete graph on `V(G)` with `c(e) = k - 1` on edges of `G` and 0 on
/// the others. `α(G) >= k` iff a monitoring set of size `k` exists.
pub fn reduce_is_to_em(g: &Graph, k: u32) -> Result<CompleteInstance> {
    if k == 0 {
        return input("independent set size must be at least 1");
    }
    if !g.is_connected() {
        return input("independent set source must be connected");
    }
    let n = g.n();
    let inst = Instance::with_demand_fn(Graph::complete(n), unit_weights(n), |e| {
        if g.contains_edge(e) {
            k - 1
        } else {
            0
        }
    });
    CompleteInstance::new(inst)
}

/// Bipartite `G` plus a universal vertex `n`; the result is a comparability
/// graph and `γ_m(G') = γ_t(G) + 1`.
pub fn reduce_bip_tds_to_comparability(g: &Graph) -> Result<Instance> {
    if g.bipartition().is_none() {
        return input("source graph is not bipartite");
    }
    if g.has_isolated_vertex() {
        return input("total domination source must have no isolated vertex");
    }
    let n = g.n();
    let edges = g.edges().iter().copied().chain((0..n).map(|x| (x, n)));
    Ok(Instance::uniform(Graph::new(n + 1, edges)?, 1))
}

/// Vertex ids of the chain that replaces one source edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeGadget {
    pub source: (Vertex, Vertex),
    /// `a_0 .. a_{2n_i + 1}`: the source endpoints at both ends.
    pub a: Vec<Vertex>,
    /// `(b_j, b'_j)` for `j = 0 ..= 2n_i`.
    pub b: Vec<(Vertex, Vertex)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetImage {
    pub instance: Instance,
    pub gadgets: Vec<EdgeGadget>,
    pub coordinates: Option<Coordinates>,
    /// `Σ (5 n_i + 2)`, so that `γ_m(G') = vc(G) + offset`.
    pub offset: usize,
}

/// Replaces every edge `{u, v}` of a graph with maximum degree 3 by a chain
/// `u = a_0, a_1, .., a_{2n_i}, a_{2n_i + 1} = v` where consecutive `a`s are
/// joined through an adjacent pair `b_j, b'_j`. New vertices are numbered
/// after the originals, edge by edge, in the order
/// `b_0, b'_0, a_1, b_1, b'_1, .., a_{2n_i}, b_{2n_i}, b'_{2n_i}`.
///
/// Coordinates for the whole image may be supplied; they are kept only if
/// the unit-disk graph they define is exactly the image.
pub fn reduce_planar_vc_to_udg(
    g: &Graph,
    chain_lengths: &[usize],
    coordinates: Option<Coordinates>,
) -> Result<GadgetImage> {
    if g.max_degree() > 3 {
        return input("source graph must have maximum degree at most 3");
    }
    if chain_lengths.len() != g.m() {
        return input(format!(
            "{} chain lengths given for {} edges",
            chain_lengths.len(),
            g.m()
        ));
    }
    if chain_lengths.contains(&0) {
        return input("chain lengths must be at least 1");
    }
    let mut next = g.n();
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let mut edges = Vec::new();
    let mut gadgets = Vec::with_capacity(g.m());
    for (&(u, v), &len) in g.edges().iter().zip(chain_lengths) {
        let mut a = vec![u];
        let mut b = Vec::with_capacity(2 * len + 1);
        for j in 0..=2 * len {
            b.push((fresh(), fresh()));
            a.push(if j < 2 * len { fresh() } else { v });
        }
        for (j, &(x, y)) in b.iter().enumerate() {
            edges.extend([(x, y), (a[j], x), (a[j], y), (a[j + 1], x), (a[j + 1], y)]);
        }
        gadgets.push(EdgeGadget { source: (u, v), a, b });
    }
    let graph = Graph::new(next, edges)?;
    if let Some(c) = &coordinates {
        if c.points.len() != graph.n() || unit_disk_graph(c) != graph {
            return input("coordinates do not realize the gadget graph as a unit disk graph");
        }
    }
    let offset = chain_lengths.iter().map(|&l| 5 * l + 2).sum();
    Ok(GadgetImage {
        instance: Instance::uniform(graph, 1),
        gadgets,
        coordinates,
        offset,
    })
}

/// A partition of the vertices into a clique and an independent set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPartition {
    pub clique: Vec<Vertex>,
    pub independent: Vec<Vertex>,
}

impl SplitPartition {
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut seen = vec![false; g.n()];
        for &v in self.clique.iter().chain(&self.independent) {
            if v >= g.n() || std::mem::replace(&mut seen[v], true) {
                return input("split sides must partition the vertex set");
            }
        }
        if seen.contains(&false) {
            return input("split sides must partition the vertex set");
        }
        if !g.is_clique(&self.clique) || !g.is_independent(&self.independent) {
            return input("split sides are not a clique and an independent set");
        }
        Ok(())
    }
}

/// Recognizes a split graph from its degree sequence and returns a
/// partition with a maximum clique side, or `None`.
pub fn split_partition(g: &Graph) -> Option<SplitPartition> {
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let deg: Vec<usize> = order.iter().map(|&v| g.degree(v)).collect();
    // m = max { i : d_i >= i - 1 } (1-based).
    let m = (1..=deg.len())
        .filter(|&i| deg[i - 1] + 1 >= i)
        .max()
        .unwrap_or(0);
    let left: usize = deg[..m].iter().sum();
    let right: usize = deg[m..].iter().sum();
    if left != m * (m.saturating_sub(1)) + right {
        return None;
    }
    let mut clique = order[..m].to_vec();
    let mut independent = order[m..].to_vec();
    clique.sort_unstable();
    independent.sort_unstable();
    let part = SplitPartition { clique, independent };
    part.validate(g).ok().map(|_| part)
}

/// Minimum monitoring set of a 1-uniform split graph, computed as a minimum
/// double dominating set using clique vertices only. Requires `δ(G) >= 2`
/// and `|K| >= 3`.
///
/// The two optima coincide once the double domination number is at least
/// 3. When it is 2 (two clique vertices adjacent to everything) the
/// equivalence breaks, and the monitoring set is searched directly.
pub fn split_gamma_m(g: &Graph, part: &SplitPartition, budget: SearchBudget) -> Result<Solution> {
    part.validate(g)?;
    if part.clique.len() < 3 || g.min_degree().is_none_or(|d| d < 2) {
        return input("split solver needs |K| >= 3 and minimum degree 2; use the oracle instead");
    }
    if part.clique.len() > budget.max_vertices || g.n() > MAX_SEARCH_VERTICES {
        return Err(EmError::Budget(format!(
            "split solver: clique side of {} vertices exceeds the limit",
            part.clique.len()
        )));
    }
    let scale = CostScale::new(&unit_weights(g.n()))?;
    let mut p = double_domination_problem(g, &scale).node_limit(budget.node_limit);
    p.exclude(part.independent.iter().copied());
    let sol = to_solution(p.solve()?, &scale);
    if sol.set().is_some_and(|s| s.len() >= 3) {
        return Ok(sol);
    }
    let inst = Instance::uniform(g.clone(), 1);
    let p = monitoring_problem(&inst, &scale).node_limit(budget.node_limit);
    Ok(to_solution(p.solve()?, &scale))
}
