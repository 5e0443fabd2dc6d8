use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{input, EmError, Result};
use crate::graph::{edge, Edge, Graph, Vertex};

/// Exact nonnegative vertex weight.
pub type Weight = BigRational;

/// Integer cost in units of `1 / CostScale::denominator`.
pub(crate) type Cost = i128;

pub fn weight_from_int(v: i64) -> Weight {
    BigRational::from_integer(BigInt::from(v))
}

pub fn weight_ratio(num: i64, den: i64) -> Weight {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn unit_weights(n: usize) -> Vec<Weight> {
    vec![Weight::one(); n]
}

/// Weighted edge-monitoring instance `(G, w, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    demand: BTreeMap<Edge, u32>,
    weights: Vec<Weight>,
}

impl Instance {
    pub fn new(graph: Graph, demand: BTreeMap<Edge, u32>, weights: Vec<Weight>) -> Result<Self> {
        if weights.len() != graph.n() {
            return input(format!(
                "{} weights given for {} vertices",
                weights.len(),
                graph.n()
            ));
        }
        if let Some((v, _)) = weights.iter().enumerate().find(|(_, w)| w.is_negative()) {
            return input(format!("negative weight on vertex {v}"));
        }
        if demand.len() != graph.m() || demand.keys().any(|&e| !graph.contains_edge(e)) {
            return input("demand must be defined on exactly the edge set");
        }
        Ok(Instance {
            graph,
            demand,
            weights,
        })
    }

    /// Every edge gets demand `k`, every vertex weight 1.
    pub fn uniform(graph: Graph, k: u32) -> Self {
        let n = graph.n();
        Self::with_demand_fn(graph, unit_weights(n), |_| k)
    }

    pub fn with_demand_fn(graph: Graph, weights: Vec<Weight>, f: impl Fn(Edge) -> u32) -> Self {
        let demand = graph.edges().iter().map(|&e| (e, f(e))).collect();
        Instance::new(graph, demand, weights).expect("demand covers the edge set")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight(&self, v: Vertex) -> &Weight {
        &self.weights[v]
    }

    /// `c(e)`; `None` when `{u, v}` is not an edge.
    pub fn demand(&self, u: Vertex, v: Vertex) -> Option<u32> {
        self.demand.get(&edge(u, v)).copied()
    }

    /// Edges with their demands in canonical order.
    pub fn demands(&self) -> impl Iterator<Item = (Edge, u32)> + '_ {
        self.demand.iter().map(|(&e, &c)| (e, c))
    }

    /// `C(G, c)`, 0 on edgeless graphs.
    pub fn max_demand(&self) -> u32 {
        self.demand.values().copied().max().unwrap_or(0)
    }

    /// `Some(k)` when every edge has demand `k` (vacuously `Some(0)` without edges).
    pub fn uniform_demand(&self) -> Option<u32> {
        let mut it = self.demand.values();
        match it.next() {
            None => Some(0),
            Some(&k) => it.all(|&c| c == k).then_some(k),
        }
    }

    pub fn set_weight(&self, v: Vertex, w: Weight) -> Instance {
        let mut out = self.clone();
        out.weights[v] = w;
        out
    }

    pub fn with_weights(&self, weights: Vec<Weight>) -> Result<Instance> {
        Instance::new(self.graph.clone(), self.demand.clone(), weights)
    }

    /// Sub-instance induced by the sorted vertex list `set`; vertex `set[i]`
    /// becomes `i`.
    pub fn induced(&self, set: &[Vertex]) -> Instance {
        let graph = self.graph.induced(set);
        let weights = set.iter().map(|&v| self.weights[v].clone()).collect();
        let demand = graph
            .edges()
            .iter()
            .map(|&(a, b)| ((a, b), self.demand[&edge(set[a], set[b])]))
            .collect();
        Instance {
            graph,
            demand,
            weights,
        }
    }

    pub fn total_weight(&self, set: &[Vertex]) -> Weight {
        set.iter().fold(Weight::zero(), |acc, &v| acc + &self.weights[v])
    }

    pub(crate) fn cost_scale(&self) -> Result<CostScale> {
        CostScale::new(&self.weights)
    }
}

/// Exact integer image of a rational weight vector: every weight is
/// multiplied by the lcm of the denominators.
#[derive(Debug, Clone)]
pub(crate) struct CostScale {
    pub costs: Vec<Cost>,
    denominator: BigInt,
}

impl CostScale {
    pub fn new(weights: &[Weight]) -> Result<Self> {
        let denominator = weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        // Sums over every subset, plus differences of two such sums, must fit.
        let limit = i128::MAX / 4 / (weights.len() as i128 + 1);
        let costs = weights
            .iter()
            .map(|w| {
                let scaled = w.numer() * (&denominator / w.denom());
                scaled
                    .to_i128()
                    .filter(|&c| c <= limit)
                    .ok_or(EmError::WeightOverflow)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CostScale { costs, denominator })
    }

    pub fn to_weight(&self, cost: Cost) -> Weight {
        BigRational::new(BigInt::from(cost), self.denominator.clone())
    }

    pub fn cost_of(&self, set: &[Vertex]) -> Cost {
        set.iter().map(|&v| self.costs[v]).sum()
    }
}

/// Result of a minimization: a witness set with its exact weight, or
/// `Infeasible` (the optimum is `+inf`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Feasible { set: Vec<Vertex>, value: Weight },
    Infeasible,
}

impl Solution {
    /// Builds a feasible solution, sorting the set and summing its weight.
    pub fn from_set(mut set: Vec<Vertex>, weights: &[Weight]) -> Self {
        set.sort_unstable();
        set.dedup();
        let value = set.iter().fold(Weight::zero(), |acc, &v| acc + &weights[v]);
        Solution::Feasible { set, value }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, Solution::Feasible { .. })
    }

    pub fn value(&self) -> Option<&Weight> {
        match self {
            Solution::Feasible { value, .. } => Some(value),
            Solution::Infeasible => None,
        }
    }

    pub fn set(&self) -> Option<&[Vertex]> {
        match self {
            Solution::Feasible { set, .. } => Some(set),
            Solution::Infeasible => None,
        }
    }

    /// Maps local vertex ids back through `ids`.
    pub(crate) fn relabel(self, ids: &[Vertex]) -> Solution {
        match self {
            Solution::Feasible { set, value } => {
                let mut set: Vec<_> = set.into_iter().map(|v| ids[v]).collect();
                set.sort_unstable();
                Solution::Feasible { set, value }
            }
            Solution::Infeasible => Solution::Infeasible,
        }
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Solution::Infeasible => writeln!(f, "status infeasible"),
            Solution::Feasible { set, value } => {
                writeln!(f, "status feasible")?;
                writeln!(f, "value {value}")?;
                write!(f, "set")?;
                for v in set {
                    write!(f, " {v}")?;
                }
                writeln!(f)
            }
        }
    }
}
