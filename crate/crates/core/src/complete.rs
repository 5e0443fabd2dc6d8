//! Solvers for weighted edge monitoring on complete graphs.
//!
//! In `K_n` every other vertex closes a triangle with an edge, so an edge
//! `{a, b}` is monitored by `|S \ {a, b}|` members of `S`. Any `C + 2`
//! vertices therefore monitor, so the optimum is at most `C + 2` and a
//! size-bounded enumeration is exact.

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::error::{contract, input, Result};
use crate::graph::{Graph, Vertex};
use crate::instance::{Cost, Instance, Solution, Weight};
use crate::oracle::{exists_independent_set, to_solution, SearchBudget};

/// An instance whose graph is complete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteInstance(Instance);

impl CompleteInstance {
    pub fn new(inst: Instance) -> Result<Self> {
        if !inst.graph().is_complete() {
            return input("graph is not complete");
        }
        Ok(CompleteInstance(inst))
    }

    pub fn instance(&self) -> &Instance {
        &self.0
    }

    pub fn into_inner(self) -> Instance {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn max_demand(&self) -> u32 {
        self.0.max_demand()
    }
}

/// Positive demands as `(u, v, c)` for fast membership counting.
struct Demands(Vec<(Vertex, Vertex, usize)>);

impl Demands {
    fn of(inst: &Instance) -> Self {
        Demands(
            inst.demands()
                .filter(|&(_, c)| c > 0)
                .map(|((u, v), c)| (u, v, c as usize))
                .collect(),
        )
    }

    fn monitored_by(&self, inside: &[bool], size: usize) -> bool {
        self.0
            .iter()
            .all(|&(u, v, c)| size - usize::from(inside[u]) - usize::from(inside[v]) >= c)
    }
}

/// `(C, C + 2)`. Fails when `n < C + 2`, since the upper bound then has no
/// witness.
pub fn gamma_bounds(inst: &CompleteInstance) -> Result<(u32, u32)> {
    let c = inst.max_demand();
    if inst.n() < c as usize + 2 {
        return contract(format!("bounds need n >= C + 2 = {}", c + 2));
    }
    let first: Vec<Vertex> = (0..c as usize + 2).collect();
    let mut inside = vec![false; inst.n()];
    first.iter().for_each(|&v| inside[v] = true);
    assert!(Demands::of(inst.instance()).monitored_by(&inside, first.len()));
    Ok((c, c + 2))
}

/// Running minimum under (cost, cardinality, lexicographic set).
struct Best(Option<(Cost, Vec<Vertex>)>);

impl Best {
    fn offer(&mut self, cost: Cost, set: &[Vertex]) {
        let better = match &self.0 {
            None => true,
            Some((bc, bs)) => (cost, set.len(), set) < (*bc, bs.len(), bs.as_slice()),
        };
        if better {
            self.0 = Some((cost, set.to_vec()));
        }
    }
}

/// Minimum over all monitoring sets of size at most `cap` (those containing
/// `force` if given).
fn enumerate_up_to(inst: &Instance, cap: usize, force: Option<Vertex>) -> Result<Solution> {
    let n = inst.n();
    if let Some(u) = force {
        if u >= n {
            return input(format!("forced vertex {u} outside 0..{n}"));
        }
    }
    let scale = inst.cost_scale()?;
    let demands = Demands::of(inst);
    let mut best = Best(None);
    let mut inside = vec![false; n];
    let pool: Vec<Vertex> = (0..n).filter(|&v| Some(v) != force).collect();
    let extra = usize::from(force.is_some());
    for size in 0..=cap.min(n).saturating_sub(extra) {
        for combo in pool.iter().copied().combinations(size) {
            let mut set = combo;
            if let Some(u) = force {
                let pos = set.partition_point(|&x| x < u);
                set.insert(pos, u);
            }
            set.iter().for_each(|&v| inside[v] = true);
            if demands.monitored_by(&inside, set.len()) {
                best.offer(scale.cost_of(&set), &set);
            }
            set.iter().for_each(|&v| inside[v] = false);
        }
    }
    Ok(to_solution(best.0, &scale))
}

/// Exact optimum by enumerating every set of size at most `C + 2`; with
/// `force = Some(u)` the optimum among monitoring sets containing `u`.
/// Ties go to the smaller set, then the lexicographically smaller one.
pub fn solve_complete_cbounded(inst: &CompleteInstance, force: Option<Vertex>) -> Result<Solution> {
    let cap = inst.max_demand() as usize + 2;
    enumerate_up_to(inst.instance(), cap, force)
}

fn uniform_k(inst: &CompleteInstance) -> Result<u32> {
    match inst.instance().uniform_demand() {
        Some(k) if k > 0 => Ok(k),
        _ => contract("uniform solver needs a k-uniform demand with k > 0"),
    }
}

fn by_weight(inst: &Instance) -> Vec<Vertex> {
    let mut order: Vec<Vertex> = (0..inst.n()).collect();
    order.sort_by(|&a, &b| inst.weight(a).cmp(inst.weight(b)).then(a.cmp(&b)));
    order
}

/// For `c ≡ k`, the `k + 2` lightest vertices (ties by id).
pub fn solve_complete_uniform(inst: &CompleteInstance) -> Result<Solution> {
    let k = uniform_k(inst)? as usize;
    if inst.n() < k + 2 {
        return Ok(Solution::Infeasible);
    }
    let pick = by_weight(inst.instance())[..k + 2].to_vec();
    Ok(Solution::from_set(pick, inst.instance().weights()))
}

/// For `c ≡ k`, the best monitoring set containing `u`: `u` together with
/// the `k + 1` lightest other vertices.
pub fn solve_complete_uniform_forced(inst: &CompleteInstance, u: Vertex) -> Result<Solution> {
    let k = uniform_k(inst)? as usize;
    if u >= inst.n() {
        return input(format!("forced vertex {u} outside 0..{}", inst.n()));
    }
    if inst.n() < k + 2 {
        return Ok(Solution::Infeasible);
    }
    let mut pick: Vec<Vertex> = by_weight(inst.instance())
        .into_iter()
        .filter(|&v| v != u)
        .take(k + 1)
        .collect();
    pick.push(u);
    Ok(Solution::from_set(pick, inst.instance().weights()))
}

/// Is there a monitoring set of at most `k` vertices? Weights are ignored.
pub fn fpt_monitoring_complete(inst: &CompleteInstance, k: u32, budget: SearchBudget) -> Result<bool> {
    Ok(fpt_monitoring_witness(inst, k, budget)?.is_some())
}

/// The recursive reduction to independent set, returning a monitoring set
/// of size at most `k` when one exists.
pub fn fpt_monitoring_witness(
    inst: &CompleteInstance,
    k: u32,
    budget: SearchBudget,
) -> Result<Option<Vec<Vertex>>> {
    fpt_rec(inst.instance(), k, budget)
}

fn fpt_rec(inst: &Instance, k: u32, budget: SearchBudget) -> Result<Option<Vec<Vertex>>> {
    if inst.max_demand() > k {
        return Ok(None);
    }
    if k == 0 {
        return Ok(Some(Vec::new()));
    }
    if let Some(w) = fpt_rec(inst, k - 1, budget)? {
        return Ok(Some(w));
    }
    let mut blocked = vec![false; inst.n()];
    for ((u, v), c) in inst.demands() {
        if c == k {
            blocked[u] = true;
            blocked[v] = true;
        }
    }
    let kept: Vec<Vertex> = (0..inst.n()).filter(|&v| !blocked[v]).collect();
    if kept.len() < k as usize {
        return Ok(None);
    }
    let mut local = vec![usize::MAX; inst.n()];
    kept.iter().enumerate().for_each(|(i, &v)| local[v] = i);
    let star_edges = inst
        .demands()
        .filter(|&((u, v), c)| c + 1 == k && !blocked[u] && !blocked[v])
        .map(|((u, v), _)| (local[u], local[v]));
    let g_star = Graph::new(kept.len(), star_edges)?;
    Ok(
        exists_independent_set(&g_star, k as usize, budget)?
            .map(|s| s.into_iter().map(|i| kept[i]).collect()),
    )
}

/// `⌈2 / ε⌉` for a positive rational `ε`.
pub fn ptas_k(epsilon: &Weight) -> Result<usize> {
    if !epsilon.is_positive() {
        return input("epsilon must be positive");
    }
    let two_over = Weight::from_integer(2.into()) / epsilon;
    let (q, r) = two_over.numer().div_rem(two_over.denom());
    let k = if r == 0.into() { q } else { q + 1 };
    k.to_usize()
        .ok_or_else(|| crate::error::EmError::Input("epsilon too small".into()))
}

/// `(1 + ε)`-approximation for complete graphs. Exact when `C <= k`;
/// otherwise the search keeps all but at most `k` vertices inside the
/// `C + 2` lightest ones.
pub fn ptas_complete(inst: &CompleteInstance, epsilon: &Weight) -> Result<Solution> {
    let k = ptas_k(epsilon)?;
    let c = inst.max_demand() as usize;
    let n = inst.n();
    let base = inst.instance();
    if c <= k {
        return enumerate_up_to(base, k + 2, None);
    }
    if n < c + 2 {
        return Ok(Solution::Infeasible);
    }
    let scale = base.cost_scale()?;
    let order = by_weight(base);
    let (first, rest) = order.split_at(c + 2);
    let demands = Demands::of(base);
    let mut best = Best(None);
    let mut inside = vec![false; n];
    for outside in 0..=k.min(rest.len()) {
        for b in rest.iter().copied().combinations(outside) {
            let lo = c.saturating_sub(outside);
            let hi = (c + 2 - outside).min(first.len());
            for size in lo..=hi {
                for a in first.iter().copied().combinations(size) {
                    let mut set: Vec<Vertex> = a.iter().chain(&b).copied().collect();
                    set.sort_unstable();
                    set.iter().for_each(|&v| inside[v] = true);
                    if demands.monitored_by(&inside, set.len()) {
                        best.offer(scale.cost_of(&set), &set);
                    }
                    set.iter().for_each(|&v| inside[v] = false);
                }
            }
        }
    }
    Ok(to_solution(best.0, &scale))
}
