//! Exact exponential baselines: minimum-weight monitoring sets, total and
//! double dominating sets, vertex covers and independent sets.
//!
//! All of them are weighted multicover problems ("pick vertices so that
//! every row has at least `need` picked candidates"), solved by one
//! branch-and-bound engine over bitmasks. Rows of edge monitoring are the
//! edges with candidates `M(e)`; total domination uses `N(v)`; double
//! domination uses `N[v]` with need 2; vertex cover uses the two endpoints.
//!
//! Reported witnesses are canonical: minimum weight first, then the
//! lexicographically smallest sorted vertex list.

use crate::error::{EmError, Result};
use crate::graph::{Graph, Vertex};
use crate::instance::{unit_weights, Cost, CostScale, Instance, Solution, Weight};

/// Hard limit of the bitmask engine.
pub const MAX_SEARCH_VERTICES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_vertices: usize,
    pub node_limit: Option<u64>,
}

impl SearchBudget {
    pub fn gamma_m() -> Self {
        SearchBudget {
            max_vertices: 20,
            node_limit: None,
        }
    }

    pub fn domination() -> Self {
        SearchBudget {
            max_vertices: 24,
            node_limit: None,
        }
    }

    pub fn with_max_vertices(max_vertices: usize) -> Self {
        SearchBudget {
            max_vertices,
            node_limit: None,
        }
    }

    fn admit(&self, n: usize, what: &str) -> Result<()> {
        let cap = self.max_vertices.min(MAX_SEARCH_VERTICES);
        if n > cap {
            return Err(EmError::Budget(format!(
                "{what}: {n} vertices exceed the limit of {cap}"
            )));
        }
        Ok(())
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::gamma_m()
    }
}

#[derive(Debug, Clone, Copy)]
struct Row {
    candidates: u64,
    need: u32,
}

/// Weighted multicover instance over at most 64 variables.
#[derive(Debug, Clone)]
pub(crate) struct CoverProblem {
    costs: Vec<Cost>,
    rows: Vec<Row>,
    /// Variables in ascending cost order, ties by index.
    order: Vec<usize>,
    forced_out: u64,
    node_limit: Option<u64>,
}

fn bit(v: usize) -> u64 {
    1u64 << v
}

fn mask_of(set: impl IntoIterator<Item = Vertex>) -> u64 {
    set.into_iter().fold(0, |m, v| m | bit(v))
}

fn members(mask: u64) -> Vec<Vertex> {
    (0..64).filter(|&v| mask & bit(v) != 0).collect()
}

struct Search<'a> {
    p: &'a CoverProblem,
    nodes: u64,
}

impl CoverProblem {
    pub fn new(costs: Vec<Cost>) -> Self {
        assert!(costs.len() <= MAX_SEARCH_VERTICES);
        let mut order: Vec<usize> = (0..costs.len()).collect();
        order.sort_by_key(|&v| (costs[v], v));
        CoverProblem {
            costs,
            rows: Vec::new(),
            order,
            forced_out: 0,
            node_limit: None,
        }
    }

    pub fn require(&mut self, candidates: impl IntoIterator<Item = Vertex>, need: u32) {
        if need > 0 {
            self.rows.push(Row {
                candidates: mask_of(candidates),
                need,
            });
        }
    }

    /// Forbids the given variables.
    pub fn exclude(&mut self, vars: impl IntoIterator<Item = Vertex>) {
        self.forced_out |= mask_of(vars);
    }

    pub fn node_limit(mut self, limit: Option<u64>) -> Self {
        self.node_limit = limit;
        self
    }

    fn cost(&self, mask: u64) -> Cost {
        members(mask).into_iter().map(|v| self.costs[v]).sum()
    }

    fn satisfied(&self, inc: u64) -> bool {
        self.rows
            .iter()
            .all(|r| (r.candidates & inc).count_ones() >= r.need)
    }

    /// Minimum cost and canonical witness, or `None` when infeasible.
    pub fn solve(&self) -> Result<Option<(Cost, Vec<Vertex>)>> {
        let mut search = Search { p: self, nodes: 0 };
        let Some(opt) = search.best_below(0, self.forced_out, Cost::MAX)? else {
            return Ok(None);
        };
        // Lexicographic reconstruction: fix vertices in increasing order,
        // including one whenever an optimal completion still exists.
        let n = self.costs.len();
        let (mut inc, mut exc) = (0u64, self.forced_out);
        for v in 0..n {
            if self.satisfied(inc) && self.cost(inc) <= opt {
                break;
            }
            if exc & bit(v) != 0 {
                continue;
            }
            if search.best_below(inc | bit(v), exc, opt + 1)?.is_some() {
                inc |= bit(v);
            } else {
                exc |= bit(v);
            }
        }
        debug_assert!(self.satisfied(inc) && self.cost(inc) == opt);
        Ok(Some((opt, members(inc))))
    }
}

impl Search<'_> {
    /// Smallest cost strictly below `bound` over completions of the partial
    /// assignment, if any.
    fn best_below(&mut self, inc: u64, exc: u64, bound: Cost) -> Result<Option<Cost>> {
        let mut best = bound;
        let base = self.p.cost(inc);
        self.dfs(inc, exc, base, &mut best)?;
        Ok((best < bound).then_some(best))
    }

    fn dfs(&mut self, inc: u64, exc: u64, cost: Cost, best: &mut Cost) -> Result<()> {
        self.nodes += 1;
        if let Some(limit) = self.p.node_limit {
            if self.nodes > limit {
                return Err(EmError::Budget(format!(
                    "branch-and-bound exceeded {limit} nodes"
                )));
            }
        }
        if cost >= *best {
            return Ok(());
        }
        // Row with the largest residual demand drives both the bound and the
        // branching; ties prefer fewer remaining candidates.
        let mut lower = 0;
        let mut pick: Option<(u32, u32, u64)> = None;
        for r in &self.p.rows {
            let have = (r.candidates & inc).count_ones();
            if have >= r.need {
                continue;
            }
            let residual = r.need - have;
            let avail = r.candidates & !inc & !exc;
            let free = avail.count_ones();
            if free < residual {
                return Ok(());
            }
            let mut row_lb = 0;
            let mut left = residual;
            for &v in &self.p.order {
                if left == 0 {
                    break;
                }
                if avail & bit(v) != 0 {
                    row_lb += self.p.costs[v];
                    left -= 1;
                }
            }
            lower = lower.max(row_lb);
            let better = match pick {
                None => true,
                Some((res, fr, _)) => residual > res || (residual == res && free < fr),
            };
            if better {
                pick = Some((residual, free, avail));
            }
        }
        let Some((_, _, avail)) = pick else {
            *best = cost;
            return Ok(());
        };
        if cost + lower >= *best {
            return Ok(());
        }
        let x = *self
            .p
            .order
            .iter()
            .find(|&&v| avail & bit(v) != 0)
            .expect("row has a free candidate");
        self.dfs(inc | bit(x), exc, cost + self.p.costs[x], best)?;
        self.dfs(inc, exc | bit(x), cost, best)
    }
}

pub(crate) fn to_solution(found: Option<(Cost, Vec<Vertex>)>, scale: &CostScale) -> Solution {
    match found {
        None => Solution::Infeasible,
        Some((cost, set)) => Solution::Feasible {
            set,
            value: scale.to_weight(cost),
        },
    }
}

/// Cover problem whose rows are the edge-monitoring constraints of `inst`.
pub(crate) fn monitoring_problem(inst: &Instance, scale: &CostScale) -> CoverProblem {
    let g = inst.graph();
    let mut p = CoverProblem::new(scale.costs.clone());
    for ((u, v), c) in inst.demands() {
        p.require(g.common_neighbors(u, v), c);
    }
    p
}

/// Minimum-weight monitoring set by branch and bound.
pub fn exact_gamma_m(inst: &Instance, budget: SearchBudget) -> Result<Solution> {
    budget.admit(inst.n(), "edge monitoring oracle")?;
    let scale = inst.cost_scale()?;
    let p = monitoring_problem(inst, &scale).node_limit(budget.node_limit);
    Ok(to_solution(p.solve()?, &scale))
}

fn check_weights(g: &Graph, w: &[Weight]) -> Result<CostScale> {
    if w.len() != g.n() {
        return Err(EmError::Input(format!(
            "{} weights given for {} vertices",
            w.len(),
            g.n()
        )));
    }
    CostScale::new(w)
}

/// Minimum-weight total dominating set; infeasible iff some vertex is isolated.
pub fn exact_gamma_t(g: &Graph, w: &[Weight], budget: SearchBudget) -> Result<Solution> {
    budget.admit(g.n(), "total domination oracle")?;
    let scale = check_weights(g, w)?;
    let mut p = CoverProblem::new(scale.costs.clone()).node_limit(budget.node_limit);
    for v in g.vertices() {
        if g.degree(v) == 0 {
            return Ok(Solution::Infeasible);
        }
        p.require(g.neighbors(v).iter().copied(), 1);
    }
    Ok(to_solution(p.solve()?, &scale))
}

pub(crate) fn double_domination_problem(g: &Graph, scale: &CostScale) -> CoverProblem {
    let mut p = CoverProblem::new(scale.costs.clone());
    for v in g.vertices() {
        p.require(g.neighbors(v).iter().copied().chain([v]), 2);
    }
    p
}

/// Minimum-weight double dominating set (`|N[x] ∩ S| >= 2` for all `x`).
pub fn exact_double_dom(g: &Graph, w: &[Weight], budget: SearchBudget) -> Result<Solution> {
    budget.admit(g.n(), "double domination oracle")?;
    let scale = check_weights(g, w)?;
    if g.vertices().any(|v| g.degree(v) == 0) {
        return Ok(Solution::Infeasible);
    }
    let p = double_domination_problem(g, &scale).node_limit(budget.node_limit);
    Ok(to_solution(p.solve()?, &scale))
}

/// Minimum-cardinality vertex cover.
pub fn exact_vertex_cover(g: &Graph, budget: SearchBudget) -> Result<Solution> {
    budget.admit(g.n(), "vertex cover oracle")?;
    let w = unit_weights(g.n());
    let scale = CostScale::new(&w)?;
    let mut p = CoverProblem::new(scale.costs.clone()).node_limit(budget.node_limit);
    for &(u, v) in g.edges() {
        p.require([u, v], 1);
    }
    Ok(to_solution(p.solve()?, &scale))
}

/// An independent set of size `k` if `α(G) >= k`: the smallest `k` vertices
/// outside a canonical minimum vertex cover.
pub fn exists_independent_set(g: &Graph, k: usize, budget: SearchBudget) -> Result<Option<Vec<Vertex>>> {
    let cover = exact_vertex_cover(g, budget)?;
    let cover = cover.set().expect("vertex cover always exists");
    let free: Vec<Vertex> = g.vertices().filter(|v| !cover.contains(v)).collect();
    Ok((free.len() >= k).then(|| free[..k].to_vec()))
}
