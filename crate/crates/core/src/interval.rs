//! Exact dynamic program for weighted edge monitoring on interval graphs
//! with bounded maximum demand.
//!
//! The sweep follows a nice path decomposition built from a realization:
//! left endpoints introduce vertices, right endpoints forget them. A
//! partial solution is summarized by its *representant*: the `C + 2`
//! vertices of `S ∩ N[B_i]` with the largest right endpoints. Any edge
//! inside the current bag that is `α`-monitored by `S` (with `α <= C`) is
//! already `α`-monitored by the representant, so forgetting a vertex only
//! needs to check the forgotten edges against the state key.

use std::collections::BTreeMap;

use crate::error::{contract, input, Result};
use crate::graph::{Graph, Vertex};
use crate::instance::{Cost, Instance, Solution};

/// Closed intervals `[a_i, b_i]` with `a_i < b_i` and all `2n` endpoints
/// pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalRealization {
    intervals: Vec<(i64, i64)>,
}

impl IntervalRealization {
    pub fn new(intervals: Vec<(i64, i64)>) -> Result<Self> {
        if let Some((v, _)) = intervals.iter().enumerate().find(|(_, &(a, b))| a >= b) {
            return input(format!("interval of vertex {v} must satisfy a < b"));
        }
        let mut ends: Vec<i64> = intervals.iter().flat_map(|&(a, b)| [a, b]).collect();
        ends.sort_unstable();
        if ends.windows(2).any(|w| w[0] == w[1]) {
            return input("interval endpoints must be pairwise distinct");
        }
        Ok(IntervalRealization { intervals })
    }

    /// Accepts touching or shared endpoints (and point intervals) and
    /// replaces every endpoint by its rank in a stable order where, at equal
    /// coordinates, left endpoints precede right endpoints and ties break by
    /// vertex index. Closed-interval overlaps are preserved exactly.
    pub fn repaired(intervals: &[(i64, i64)]) -> Result<Self> {
        if let Some((v, _)) = intervals.iter().enumerate().find(|(_, &(a, b))| a > b) {
            return input(format!("interval of vertex {v} has a > b"));
        }
        if let Ok(r) = Self::new(intervals.to_vec()) {
            return Ok(r);
        }
        let mut events: Vec<(i64, u8, usize)> = intervals
            .iter()
            .enumerate()
            .flat_map(|(v, &(a, b))| [(a, 0, v), (b, 1, v)])
            .collect();
        events.sort_unstable();
        let mut out = vec![(0, 0); intervals.len()];
        for (rank, &(_, kind, v)) in events.iter().enumerate() {
            if kind == 0 {
                out[v].0 = rank as i64;
            } else {
                out[v].1 = rank as i64;
            }
        }
        Self::new(out)
    }

    pub fn intervals(&self) -> &[(i64, i64)] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intersection_graph(&self) -> Graph {
        let iv = &self.intervals;
        let edges = (0..iv.len())
            .flat_map(|i| (i + 1..iv.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| iv[i].0 <= iv[j].1 && iv[j].0 <= iv[i].1);
        Graph::new(iv.len(), edges).expect("intersection graph is simple")
    }

    pub fn is_unit(&self) -> bool {
        let mut lens = self.intervals.iter().map(|&(a, b)| b - a);
        match lens.next() {
            None => true,
            Some(l) => lens.all(|x| x == l),
        }
    }

    /// `ω(G)`: the largest number of intervals sharing a point.
    pub fn clique_number(&self) -> usize {
        let (mut open, mut best) = (0usize, 0usize);
        for step in nice_path_decomposition(self).steps {
            match step {
                Step::Introduce(_) => {
                    open += 1;
                    best = best.max(open);
                }
                Step::Forget(_) => open -= 1,
            }
        }
        best
    }

    /// Position of each vertex in the `<_R` order.
    fn right_ranks(&self) -> Vec<usize> {
        let mut by_right: Vec<Vertex> = (0..self.len()).collect();
        by_right.sort_by_key(|&v| self.intervals[v].1);
        let mut rank = vec![0; self.len()];
        for (r, v) in by_right.into_iter().enumerate() {
            rank[v] = r;
        }
        rank
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Introduce(Vertex),
    Forget(Vertex),
}

impl Step {
    pub fn vertex(self) -> Vertex {
        match self {
            Step::Introduce(v) | Step::Forget(v) => v,
        }
    }
}

/// Bags `B_0 .. B_l` with `l = 2n`; step `i` (1-based) turns `B_{i-1}`
/// into `B_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NicePathDecomposition {
    steps: Vec<Step>,
    bags: Vec<Vec<Vertex>>,
}

impl NicePathDecomposition {
    /// `l`, the index of the last bag.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn bag(&self, i: usize) -> &[Vertex] {
        &self.bags[i]
    }

    /// The event of step `i`, `1 <= i <= l`.
    pub fn step(&self, i: usize) -> Step {
        self.steps[i - 1]
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// `V_i`: every vertex that appeared in `B_0 .. B_i`.
    pub fn processed(&self, i: usize) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.steps[..i]
            .iter()
            .filter_map(|s| match s {
                Step::Introduce(v) => Some(*v),
                Step::Forget(_) => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Checks every structural property of a nice path decomposition
    /// against the graph and realization; the error names the first
    /// violation.
    pub fn validate(&self, g: &Graph, real: &IntervalRealization) -> std::result::Result<(), String> {
        let n = g.n();
        let l = self.len();
        if l != 2 * n || self.bags.len() != l + 1 {
            return Err(format!("expected {} steps, found {l}", 2 * n));
        }
        if !self.bags[0].is_empty() || !self.bags[l].is_empty() {
            return Err("first and last bags must be empty".into());
        }
        for (i, b) in self.bags.iter().enumerate() {
            if !g.is_clique(b) {
                return Err(format!("bag {i} is not a clique"));
            }
        }
        for i in 1..=l {
            let (prev, cur) = (&self.bags[i - 1], &self.bags[i]);
            let ok = match self.step(i) {
                Step::Introduce(v) => {
                    !prev.contains(&v)
                        && cur.len() == prev.len() + 1
                        && cur.contains(&v)
                        && prev.iter().all(|x| cur.contains(x))
                }
                Step::Forget(v) => {
                    prev.contains(&v)
                        && cur.len() + 1 == prev.len()
                        && !cur.contains(&v)
                        && cur.iter().all(|x| prev.contains(x))
                }
            };
            if !ok {
                return Err(format!("step {i} is not a single introduce/forget"));
            }
        }
        for &(u, v) in g.edges() {
            if !self.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
                return Err(format!("edge {{{u}, {v}}} is in no bag"));
            }
        }
        for v in 0..n {
            let idx: Vec<usize> = (0..=l).filter(|&i| self.bags[i].contains(&v)).collect();
            if idx.is_empty() || idx.windows(2).any(|w| w[1] != w[0] + 1) {
                return Err(format!("occurrences of vertex {v} are not a segment"));
            }
        }
        let iv = real.intervals();
        let order = |intro: bool| -> Vec<Vertex> {
            self.steps
                .iter()
                .filter(|s| matches!(s, Step::Introduce(_)) == intro)
                .map(|s| s.vertex())
                .collect()
        };
        if order(true).windows(2).any(|w| iv[w[0]].0 > iv[w[1]].0) {
            return Err("introductions do not follow left endpoints".into());
        }
        if order(false).windows(2).any(|w| iv[w[0]].1 > iv[w[1]].1) {
            return Err("forgets do not follow right endpoints".into());
        }
        Ok(())
    }
}

/// Sweeps the sorted endpoints: a left endpoint introduces, a right
/// endpoint forgets.
pub fn nice_path_decomposition(real: &IntervalRealization) -> NicePathDecomposition {
    let mut events: Vec<(i64, Step)> = real
        .intervals()
        .iter()
        .enumerate()
        .flat_map(|(v, &(a, b))| [(a, Step::Introduce(v)), (b, Step::Forget(v))])
        .collect();
    events.sort_by_key(|&(x, s)| (x, matches!(s, Step::Forget(_))));
    let mut bags = vec![Vec::new()];
    let mut current: Vec<Vertex> = Vec::new();
    let mut steps = Vec::with_capacity(events.len());
    for (_, step) in events {
        match step {
            Step::Introduce(v) => {
                let pos = current.binary_search(&v).unwrap_err();
                current.insert(pos, v);
            }
            Step::Forget(v) => {
                let pos = current.binary_search(&v).expect("forgotten vertex is in the bag");
                current.remove(pos);
            }
        }
        steps.push(step);
        bags.push(current.clone());
    }
    NicePathDecomposition { steps, bags }
}

/// Canonical DP state: a vertex list sorted by id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Representant(Vec<Vertex>);

impl Representant {
    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }
}

fn trim(set: &[Vertex], near_bag: &[bool], right_rank: &[usize], cap: usize) -> Vec<Vertex> {
    let mut kept: Vec<Vertex> = set.iter().copied().filter(|&x| near_bag[x]).collect();
    if kept.len() > cap {
        kept.sort_unstable_by_key(|&x| std::cmp::Reverse(right_rank[x]));
        kept.truncate(cap);
    }
    kept.sort_unstable();
    kept
}

/// The step-`i` representant of `set`: the `C + 2` elements of
/// `set ∩ N[B_i]` with the largest right endpoints, or all of them when
/// there are at most `C + 2`.
pub fn representant(
    g: &Graph,
    real: &IntervalRealization,
    decomp: &NicePathDecomposition,
    step: usize,
    max_demand: u32,
    set: &[Vertex],
) -> Representant {
    let near = g.closed_neighborhood_mask(decomp.bag(step));
    Representant(trim(set, &near, &real.right_ranks(), max_demand as usize + 2))
}

#[derive(Debug, Clone)]
struct Entry {
    cost: Cost,
    prev: Vec<Vertex>,
    took: bool,
}

impl Entry {
    fn rank(&self) -> (Cost, &Vec<Vertex>, bool) {
        (self.cost, &self.prev, self.took)
    }
}

type Table = BTreeMap<Vec<Vertex>, Entry>;

fn offer(table: &mut Table, key: Vec<Vertex>, entry: Entry) {
    match table.get(&key) {
        Some(old) if old.rank() <= entry.rank() => {}
        _ => {
            table.insert(key, entry);
        }
    }
}

/// Per-step statistics of a run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IntervalTrace {
    /// `|F_i|` for `i = 0..=l`.
    pub table_sizes: Vec<usize>,
    /// Number of vertex subsets of `N[B_i] ∩ V_i` with at most `C + 2`
    /// elements: an upper bound on `|F_i|`.
    pub size_bounds: Vec<u128>,
}

fn subsets_up_to(m: usize, cap: usize) -> u128 {
    let mut total = 0u128;
    let mut binom = 1u128;
    for j in 0..=cap.min(m) {
        total = total.saturating_add(binom);
        binom = binom.saturating_mul((m - j) as u128) / (j as u128 + 1);
    }
    total
}

pub fn solve_interval(inst: &Instance, real: &IntervalRealization) -> Result<Solution> {
    solve_interval_traced(inst, real).map(|(s, _)| s)
}

/// Runs the representant DP and also reports table sizes per step.
pub fn solve_interval_traced(
    inst: &Instance,
    real: &IntervalRealization,
) -> Result<(Solution, IntervalTrace)> {
    let g = inst.graph();
    if real.len() != g.n() {
        return input(format!(
            "realization has {} intervals for {} vertices",
            real.len(),
            g.n()
        ));
    }
    if &real.intersection_graph() != g {
        return input("realization does not match the instance graph");
    }
    let scale = inst.cost_scale()?;
    let cap = inst.max_demand() as usize + 2;
    let decomp = nice_path_decomposition(real);
    let rank = real.right_ranks();
    let l = decomp.len();

    let mut tables: Vec<Table> = Vec::with_capacity(l + 1);
    tables.push(BTreeMap::from([(
        Vec::new(),
        Entry {
            cost: 0,
            prev: Vec::new(),
            took: false,
        },
    )]));
    let mut trace = IntervalTrace {
        table_sizes: vec![1],
        size_bounds: vec![1],
    };
    let mut seen = vec![false; g.n()];

    for i in 1..=l {
        let near = g.closed_neighborhood_mask(decomp.bag(i));
        let prev = &tables[i - 1];
        let mut next = Table::new();
        match decomp.step(i) {
            Step::Forget(v) => {
                let checks: Vec<(Vertex, usize)> = decomp
                    .bag(i)
                    .iter()
                    .filter_map(|&u| {
                        let c = inst.demand(u, v)?;
                        (c > 0).then_some((u, c as usize))
                    })
                    .collect();
                for (w, e) in prev {
                    let monitored = checks.iter().all(|&(u, c)| {
                        w.iter()
                            .filter(|&&x| x != u && x != v && g.has_edge(x, u) && g.has_edge(x, v))
                            .count()
                            >= c
                    });
                    if monitored {
                        let entry = Entry {
                            cost: e.cost,
                            prev: w.clone(),
                            took: false,
                        };
                        offer(&mut next, trim(w, &near, &rank, cap), entry);
                    }
                }
            }
            Step::Introduce(v) => {
                seen[v] = true;
                for (w, e) in prev {
                    let entry = Entry {
                        cost: e.cost,
                        prev: w.clone(),
                        took: false,
                    };
                    offer(&mut next, trim(w, &near, &rank, cap), entry);
                    let mut with_v = w.clone();
                    with_v.push(v);
                    let entry = Entry {
                        cost: e.cost + scale.costs[v],
                        prev: w.clone(),
                        took: true,
                    };
                    offer(&mut next, trim(&with_v, &near, &rank, cap), entry);
                }
            }
        }
        let m = (0..g.n()).filter(|&x| seen[x] && near[x]).count();
        let bound = subsets_up_to(m, cap);
        debug_assert!(next.len() as u128 <= bound, "state table exceeds its bound");
        trace.table_sizes.push(next.len());
        trace.size_bounds.push(bound);
        tables.push(next);
    }

    let Some((key, best)) = tables[l].iter().min_by(|a, b| a.1.rank().cmp(&b.1.rank())) else {
        return Ok((Solution::Infeasible, trace));
    };
    let cost = best.cost;
    let mut set = Vec::new();
    let mut key = key.clone();
    for i in (1..=l).rev() {
        let e = &tables[i][&key];
        if e.took {
            set.push(decomp.step(i).vertex());
        }
        key = e.prev.clone();
    }
    set.sort_unstable();
    debug_assert_eq!(scale.cost_of(&set), cost);
    Ok((
        Solution::Feasible {
            set,
            value: scale.to_weight(cost),
        },
        trace,
    ))
}

/// Checks `|N[K]| <= 3 ω(G)` for a clique `K` of a unit interval graph.
pub fn unit_interval_bound_check(real: &IntervalRealization, clique: &[Vertex]) -> Result<bool> {
    if !real.is_unit() {
        return contract("realization is not a unit interval realization");
    }
    let g = real.intersection_graph();
    if clique.iter().any(|&v| v >= g.n()) || !g.is_clique(clique) {
        return input("vertex set is not a clique of the interval graph");
    }
    Ok(g.closed_neighborhood(clique).len() <= 3 * real.clique_number())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::weight_from_int;

    fn real(iv: &[(i64, i64)]) -> IntervalRealization {
        IntervalRealization::new(iv.to_vec()).unwrap()
    }

    #[test]
    fn realization_validation_and_repair() {
        assert!(IntervalRealization::new(vec![(0, 0)]).is_err());
        assert!(IntervalRealization::new(vec![(0, 2), (2, 4)]).is_err());
        let r = IntervalRealization::repaired(&[(0, 2), (2, 4), (5, 5)]).unwrap();
        assert_eq!(r.intervals(), &[(0, 2), (1, 3), (4, 5)]);
        assert_eq!(r.intersection_graph().edges(), &[(0, 1)]);
    }

    #[test]
    fn decomposition_examples() {
        let k3 = real(&[(0, 10), (1, 11), (2, 12)]);
        let d = nice_path_decomposition(&k3);
        assert_eq!(d.bags.iter().filter(|b| b.len() == 3).count(), 1);
        d.validate(&k3.intersection_graph(), &k3).unwrap();

        let apart = real(&[(0, 1), (2, 3)]);
        let d = nice_path_decomposition(&apart);
        assert_eq!(d.bags.iter().map(Vec::len).max(), Some(1));
        d.validate(&apart.intersection_graph(), &apart).unwrap();
    }

    #[test]
    fn representant_examples() {
        // K5: intervals share the point 10, right endpoints in id order.
        let r = real(&[(0, 11), (1, 12), (2, 13), (3, 14), (4, 15)]);
        let g = r.intersection_graph();
        let d = nice_path_decomposition(&r);
        // Steps 1..5 introduce 0..4, step 8 leaves bag {3, 4}.
        assert_eq!(d.bag(8), &[3, 4]);
        let all = d.processed(8);
        assert_eq!(representant(&g, &r, &d, 8, 1, &all).vertices(), &[2, 3, 4]);
        assert_eq!(representant(&g, &r, &d, 8, 1, &[0, 4]).vertices(), &[0, 4]);
        assert!(representant(&g, &r, &d, 8, 1, &[]).vertices().is_empty());
    }

    #[test]
    fn solve_examples() {
        let k3 = real(&[(0, 10), (1, 11), (2, 12)]);
        let inst = Instance::uniform(k3.intersection_graph(), 1);
        assert_eq!(
            solve_interval(&inst, &k3).unwrap().value(),
            Some(&weight_from_int(3))
        );

        let apart = real(&[(0, 1), (2, 3)]);
        let inst = Instance::uniform(apart.intersection_graph(), 0);
        let s = solve_interval(&inst, &apart).unwrap();
        assert_eq!(
            s,
            Solution::Feasible {
                set: vec![],
                value: weight_from_int(0)
            }
        );

        let path = real(&[(0, 2), (1, 4), (3, 5)]);
        let inst = Instance::uniform(path.intersection_graph(), 1);
        assert_eq!(solve_interval(&inst, &path).unwrap(), Solution::Infeasible);

        let wrong = Instance::uniform(Graph::complete(2), 0);
        assert!(solve_interval(&wrong, &apart).is_err());
    }

    #[test]
    fn unit_bound_examples() {
        let k3 = real(&[(0, 10), (1, 11), (2, 12)]);
        assert!(unit_interval_bound_check(&k3, &[0]).unwrap());
        let ragged = real(&[(0, 10), (1, 3)]);
        assert!(unit_interval_bound_check(&ragged, &[0]).is_err());
        // Path of cliques: overlapping unit intervals shifted by 4.
        let chain = real(
            &(0..12)
                .map(|i| (4 * i + (i % 3), 4 * i + (i % 3) + 9))
                .collect::<Vec<_>>(),
        );
        let d = nice_path_decomposition(&chain);
        for i in 0..=d.len() {
            assert!(unit_interval_bound_check(&chain, d.bag(i)).unwrap());
        }
    }
}
