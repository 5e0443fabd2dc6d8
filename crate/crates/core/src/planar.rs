//! Layered approximation scheme for weighted edge monitoring on planar
//! graphs.
//!
//! BFS layers from a root are grouped into bands of `k` consecutive layers.
//! Each band is solved exactly inside its region (the band plus one layer
//! on each side), only for edges touching the band. For a fixed offset the
//! union of band solutions monitors everything; across the `k` offsets the
//! cheapest union costs at most `(k + 2) / k` times the optimum.
//!
//! Bands are solved with the branch-and-bound cover engine, which is exact
//! but exponential in the region size.

use std::collections::VecDeque;

use crate::complete::ptas_k;
use crate::error::{input, EmError, Result};
use crate::graph::{Graph, Vertex};
use crate::instance::{Cost, CostScale, Instance, Solution, Weight};
use crate::monitor::feasibility_precheck;
use crate::oracle::{to_solution, CoverProblem, SearchBudget, MAX_SEARCH_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layering {
    pub root: Vertex,
    /// `L_0 .. L_l`, each sorted.
    pub layers: Vec<Vec<Vertex>>,
    /// BFS distance from the root, `None` outside its component.
    pub level: Vec<Option<usize>>,
}

impl Layering {
    /// Vertices of layers `from..=to`, clipped to existing layers.
    pub fn span(&self, from: isize, to: isize) -> Vec<Vertex> {
        let last = self.layers.len() as isize - 1;
        let (lo, hi) = (from.max(0), to.min(last));
        let mut out: Vec<Vertex> = (lo..=hi)
            .flat_map(|i| self.layers[i as usize].iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}

pub fn bfs_layering(g: &Graph, root: Vertex) -> Result<Layering> {
    if root >= g.n() {
        return input(format!("root {root} outside 0..{}", g.n()));
    }
    let mut level = vec![None; g.n()];
    level[root] = Some(0);
    let mut layers = vec![vec![root]];
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let d = level[v].unwrap() + 1;
        for &w in g.neighbors(v) {
            if level[w].is_none() {
                level[w] = Some(d);
                if layers.len() == d {
                    layers.push(Vec::new());
                }
                layers[d].push(w);
                queue.push_back(w);
            }
        }
    }
    layers.iter_mut().for_each(|l| l.sort_unstable());
    Ok(Layering { root, layers, level })
}

/// Euler's bound `m <= 3n - 6` for simple planar graphs on at least 3
/// vertices. Failing it proves the graph is not planar.
pub fn euler_plausible(g: &Graph) -> bool {
    g.n() < 3 || g.m() <= 3 * g.n() - 6
}

fn band_search(
    inst: &Instance,
    scale: &CostScale,
    band: &[Vertex],
    region: &[Vertex],
    budget: SearchBudget,
) -> Result<Option<(Cost, Vec<Vertex>)>> {
    let g = inst.graph();
    let n = g.n();
    let mut local = vec![usize::MAX; n];
    for (i, &v) in region.iter().enumerate() {
        if v >= n {
            return input(format!("region vertex {v} outside 0..{n}"));
        }
        local[v] = i;
    }
    let mut in_band = vec![false; n];
    for &v in band {
        if v >= n || local[v] == usize::MAX {
            return input("band must be contained in its region");
        }
        in_band[v] = true;
    }
    let cap = budget.max_vertices.min(MAX_SEARCH_VERTICES);
    if region.len() > cap {
        return Err(EmError::Budget(format!(
            "band region has {} vertices, limit is {cap}",
            region.len()
        )));
    }
    let costs = region.iter().map(|&v| scale.costs[v]).collect();
    let mut p = CoverProblem::new(costs).node_limit(budget.node_limit);
    for ((u, v), c) in inst.demands() {
        if c == 0 || !(in_band[u] || in_band[v]) {
            continue;
        }
        let cands: Vec<Vertex> = g
            .common_neighbors(u, v)
            .into_iter()
            .filter(|&x| local[x] != usize::MAX)
            .map(|x| local[x])
            .collect();
        p.require(cands, c);
    }
    Ok(p.solve()?
        .map(|(cost, set)| (cost, set.into_iter().map(|i| region[i]).collect())))
}

/// Cheapest set inside `region` that meets the demand of every edge with an
/// endpoint in `band`. Both lists must be sorted.
pub fn solve_band(
    inst: &Instance,
    band: &[Vertex],
    region: &[Vertex],
    budget: SearchBudget,
) -> Result<Solution> {
    let scale = inst.cost_scale()?;
    Ok(to_solution(
        band_search(inst, &scale, band, region, budget)?,
        &scale,
    ))
}

/// Budget for band regions: only the engine's hard limit applies.
pub fn band_budget() -> SearchBudget {
    SearchBudget::with_max_vertices(MAX_SEARCH_VERTICES)
}

/// `(1 + ε)`-approximation with `k = ⌈2/ε⌉`. Planarity is trusted; see
/// [`euler_plausible`] for a cheap sanity check.
pub fn ptas_planar(inst: &Instance, epsilon: &Weight, budget: SearchBudget) -> Result<Solution> {
    let k = ptas_k(epsilon)? as isize;
    if !feasibility_precheck(inst) {
        return Ok(Solution::Infeasible);
    }
    let g = inst.graph();
    let scale = inst.cost_scale()?;
    let mut chosen = vec![false; g.n()];

    for comp in g.components() {
        let lay = bfs_layering(g, comp[0])?;
        let l = lay.layers.len() as isize - 1;
        let j_max = (l + k - 1) / k;
        let mut best: Option<(Cost, Vec<Vertex>)> = None;
        for i in 0..k {
            let mut covered = vec![0usize; lay.layers.len()];
            let mut mask = vec![false; g.n()];
            for j in -1..=j_max {
                let s = i + k * j;
                for t in s.max(0)..(s + k).min(l + 1) {
                    covered[t as usize] += 1;
                }
                let band = lay.span(s, s + k - 1);
                let region = lay.span(s - 1, s + k);
                let Some((_, set)) = band_search(inst, &scale, &band, &region, budget)? else {
                    unreachable!("precheck passed, so every band is feasible");
                };
                set.into_iter().for_each(|v| mask[v] = true);
            }
            assert!(
                covered.iter().all(|&c| c == 1),
                "bands of an offset must tile the layers"
            );
            let set: Vec<Vertex> = comp.iter().copied().filter(|&v| mask[v]).collect();
            let cost = scale.cost_of(&set);
            if best.as_ref().is_none_or(|(c, _)| cost < *c) {
                best = Some((cost, set));
            }
        }
        for v in best.expect("k >= 1 offsets").1 {
            chosen[v] = true;
        }
    }
    let set = (0..g.n()).filter(|&v| chosen[v]).collect();
    Ok(Solution::from_set(set, inst.weights()))
}
