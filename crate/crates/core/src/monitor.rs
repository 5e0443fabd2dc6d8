//! Monitor sets and the feasibility predicates shared by every solver.

use crate::error::{input, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::instance::Instance;

/// `M(e)`: the vertices closing a triangle with `e`, sorted.
pub fn monitors(g: &Graph, e: Edge) -> Result<Vec<Vertex>> {
    if !g.contains_edge(e) {
        return input(format!("{{{}, {}}} is not an edge", e.0, e.1));
    }
    Ok(g.common_neighbors(e.0, e.1))
}

fn membership(n: usize, set: &[Vertex]) -> Result<Vec<bool>> {
    let mut mask = vec![false; n];
    for &v in set {
        if v >= n {
            return input(format!("vertex {v} outside 0..{n}"));
        }
        mask[v] = true;
    }
    Ok(mask)
}

/// Per-edge shortfall of a candidate set: `(edge, demand, monitors in set)`
/// for every edge whose demand is not met.
pub fn deficits(inst: &Instance, set: &[Vertex]) -> Result<Vec<(Edge, u32, u32)>> {
    let g = inst.graph();
    let mask = membership(g.n(), set)?;
    Ok(inst
        .demands()
        .filter(|&(_, c)| c > 0)
        .filter_map(|((u, v), c)| {
            let have = g.common_neighbors(u, v).into_iter().filter(|&x| mask[x]).count() as u32;
            (have < c).then_some(((u, v), c, have))
        })
        .collect())
}

/// True iff `|M(e) ∩ set| >= c(e)` for every edge.
pub fn is_monitoring_set(inst: &Instance, set: &[Vertex]) -> Result<bool> {
    Ok(deficits(inst, set)?.is_empty())
}

pub fn max_demand(inst: &Instance) -> u32 {
    inst.max_demand()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Domination {
    pub dominating: bool,
    pub total: bool,
    pub double: bool,
}

/// Dominating (`N[S] = V`), total dominating (every vertex has a neighbour
/// in `S`) and double dominating (`|N[x] ∩ S| >= 2`) checks.
pub fn domination_predicates(g: &Graph, set: &[Vertex]) -> Result<Domination> {
    let mask = membership(g.n(), set)?;
    let mut out = Domination {
        dominating: true,
        total: true,
        double: true,
    };
    for x in g.vertices() {
        let open = g.neighbors(x).iter().filter(|&&u| mask[u]).count();
        let closed = open + usize::from(mask[x]);
        out.dominating &= closed >= 1;
        out.total &= open >= 1;
        out.double &= closed >= 2;
    }
    Ok(out)
}

/// `c(e) <= |M(e)|` for every edge. For edge monitoring this is equivalent
/// to `V` being a monitoring set, hence to feasibility.
pub fn feasibility_precheck(inst: &Instance) -> bool {
    let g = inst.graph();
    inst.demands()
        .all(|((u, v), c)| c == 0 || g.common_neighbors(u, v).len() >= c as usize)
}
