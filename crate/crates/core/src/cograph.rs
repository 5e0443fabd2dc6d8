//! 1-uniform weighted edge monitoring on cographs by cotree recursion.
//!
//! For a union node the optimum is the sum over the children. For a join
//! of `G1` and `G2` it is the cheapest of
//!
//! * a total dominating set of `G1` plus the lightest vertex of `G2`,
//! * the lightest vertex of `G1` plus a total dominating set of `G2`,
//! * a monitoring set of `G1` alone, if `G1` has no isolated vertex,
//! * a monitoring set of `G2` alone, if `G2` has no isolated vertex.
//!
//! The total-domination optimum follows the same shape: any cross pair
//! totally dominates a join, and a one-sided set must totally dominate its
//! own side.

use std::fmt;

use crate::error::{contract, input, EmError, Result};
use crate::graph::{Graph, Vertex};
use crate::instance::{Cost, CostScale, Instance, Solution, Weight};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cotree {
    Leaf(Vertex),
    Union(Vec<Cotree>),
    Join(Vec<Cotree>),
}

/// Signal returned when a graph has an induced `P4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotCograph;

impl Cotree {
    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<Vertex> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Vertex>) {
        match self {
            Cotree::Leaf(v) => out.push(*v),
            Cotree::Union(ch) | Cotree::Join(ch) => {
                for c in ch {
                    c.collect_leaves(out);
                }
            }
        }
    }

    /// The graph this cotree describes on `n` vertices.
    pub fn realize(&self, n: usize) -> Result<Graph> {
        let leaves = self.leaves();
        let mut seen = vec![false; n];
        for &v in &leaves {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return input(format!("cotree leaf {v} is out of range or repeated"));
            }
        }
        if leaves.len() != n {
            return input(format!("cotree has {} leaves for {n} vertices", leaves.len()));
        }
        let mut edges = Vec::new();
        self.collect_edges(&mut edges);
        Graph::new(n, edges)
    }

    fn collect_edges(&self, edges: &mut Vec<(Vertex, Vertex)>) {
        match self {
            Cotree::Leaf(_) => {}
            Cotree::Union(ch) => ch.iter().for_each(|c| c.collect_edges(edges)),
            Cotree::Join(ch) => {
                let sides: Vec<Vec<Vertex>> = ch.iter().map(Cotree::leaves).collect();
                for (i, a) in sides.iter().enumerate() {
                    for b in &sides[i + 1..] {
                        for &u in a {
                            edges.extend(b.iter().map(|&v| (u, v)));
                        }
                    }
                }
                ch.iter().for_each(|c| c.collect_edges(edges));
            }
        }
    }

    /// Parses `(join (leaf 0) (union (leaf 1) (leaf 2)))`.
    pub fn parse(text: &str) -> Result<Cotree> {
        let tokens: Vec<String> = text
            .replace('(', " ( ")
            .replace(')', " ) ")
            .split_whitespace()
            .map(str::to_string)
            .collect();
        let mut pos = 0;
        let tree = parse_node(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return input("trailing tokens after cotree expression");
        }
        Ok(tree)
    }
}

fn parse_node(tokens: &[String], pos: &mut usize) -> Result<Cotree> {
    let mut next = |what: &str| -> Result<&str> {
        let t = tokens
            .get(*pos)
            .ok_or_else(|| EmError::Input(format!("cotree: expected {what}, found end")))?;
        *pos += 1;
        Ok(t.as_str())
    };
    if next("`(`")? != "(" {
        return input("cotree: expected `(`");
    }
    let node = match next("node label")? {
        "leaf" => {
            let id = next("vertex id")?;
            let v = id
                .parse()
                .map_err(|_| EmError::Input(format!("cotree: invalid vertex `{id}`")))?;
            Cotree::Leaf(v)
        }
        label @ ("union" | "join") => {
            let is_join = label == "join";
            let mut children = Vec::new();
            while tokens.get(*pos).map(String::as_str) == Some("(") {
                children.push(parse_node(tokens, pos)?);
            }
            if children.is_empty() {
                return input(format!("cotree: `{label}` needs at least one child"));
            }
            if is_join {
                Cotree::Join(children)
            } else {
                Cotree::Union(children)
            }
        }
        other => return input(format!("cotree: unknown node `{other}`")),
    };
    match tokens.get(*pos) {
        Some(t) if t == ")" => {
            *pos += 1;
            Ok(node)
        }
        _ => input("cotree: expected `)`"),
    }
}

impl fmt::Display for Cotree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (label, children) = match self {
            Cotree::Leaf(v) => return write!(f, "(leaf {v})"),
            Cotree::Union(ch) => ("union", ch),
            Cotree::Join(ch) => ("join", ch),
        };
        write!(f, "({label}")?;
        for c in children {
            write!(f, " {c}")?;
        }
        write!(f, ")")
    }
}

/// Cotree by complement-connectivity recursion: disconnected subgraphs
/// become unions of their components, subgraphs with a disconnected
/// complement become joins of their co-components.
pub fn cotree_build(g: &Graph) -> std::result::Result<Cotree, NotCograph> {
    if g.n() == 0 {
        return Err(NotCograph);
    }
    build_on(g, &g.vertices().collect::<Vec<_>>())
}

fn build_on(g: &Graph, set: &[Vertex]) -> std::result::Result<Cotree, NotCograph> {
    if let [v] = set {
        return Ok(Cotree::Leaf(*v));
    }
    let sub = g.induced(set);
    let lift = |comps: Vec<Vec<Vertex>>| -> Vec<Vec<Vertex>> {
        comps
            .into_iter()
            .map(|c| c.into_iter().map(|i| set[i]).collect())
            .collect()
    };
    let comps = sub.components();
    if comps.len() > 1 {
        let children = lift(comps)
            .iter()
            .map(|c| build_on(g, c))
            .collect::<std::result::Result<_, _>>()?;
        return Ok(Cotree::Union(children));
    }
    let co = sub.complement().components();
    if co.len() > 1 {
        let children = lift(co)
            .iter()
            .map(|c| build_on(g, c))
            .collect::<std::result::Result<_, _>>()?;
        return Ok(Cotree::Join(children));
    }
    Err(NotCograph)
}

type Best = Option<(Cost, Vec<Vertex>)>;

/// Per-subtree quantities of the recursion.
#[derive(Debug, Clone)]
struct NodeSummary {
    gamma_m: Best,
    gamma_t: Best,
    lightest: (Cost, Vertex),
    has_isolated: bool,
}

fn cheaper(a: Best, b: Best) -> Best {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.0 < x.0 { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

fn plus(a: &Best, b: &Best) -> Best {
    let (ca, sa) = a.as_ref()?;
    let (cb, sb) = b.as_ref()?;
    let mut set = sa.clone();
    set.extend_from_slice(sb);
    Some((ca + cb, set))
}

fn single(x: (Cost, Vertex)) -> Best {
    Some((x.0, vec![x.1]))
}

fn lighter(a: (Cost, Vertex), b: (Cost, Vertex)) -> (Cost, Vertex) {
    if b < a {
        b
    } else {
        a
    }
}

fn combine_union(a: NodeSummary, b: NodeSummary) -> NodeSummary {
    NodeSummary {
        gamma_m: plus(&a.gamma_m, &b.gamma_m),
        gamma_t: plus(&a.gamma_t, &b.gamma_t),
        lightest: lighter(a.lightest, b.lightest),
        has_isolated: a.has_isolated || b.has_isolated,
    }
}

fn combine_join(a: NodeSummary, b: NodeSummary) -> NodeSummary {
    let cross = plus(&single(a.lightest), &single(b.lightest));
    let gamma_t = cheaper(cheaper(cross, a.gamma_t.clone()), b.gamma_t.clone());

    let mut gamma_m = plus(&a.gamma_t, &single(b.lightest));
    gamma_m = cheaper(gamma_m, plus(&single(a.lightest), &b.gamma_t));
    if !a.has_isolated {
        gamma_m = cheaper(gamma_m, a.gamma_m.clone());
    }
    if !b.has_isolated {
        gamma_m = cheaper(gamma_m, b.gamma_m.clone());
    }
    NodeSummary {
        gamma_m,
        gamma_t,
        lightest: lighter(a.lightest, b.lightest),
        has_isolated: false,
    }
}

fn summarize(t: &Cotree, costs: &[Cost]) -> NodeSummary {
    match t {
        Cotree::Leaf(v) => NodeSummary {
            gamma_m: Some((0, Vec::new())),
            gamma_t: None,
            lightest: (costs[*v], *v),
            has_isolated: true,
        },
        Cotree::Union(ch) | Cotree::Join(ch) => {
            let join = matches!(t, Cotree::Join(_));
            ch.iter()
                .map(|c| summarize(c, costs))
                .reduce(|acc, s| {
                    if join {
                        combine_join(acc, s)
                    } else {
                        combine_union(acc, s)
                    }
                })
                .expect("internal node has children")
        }
    }
}

fn finish(best: Best, scale: &CostScale) -> Solution {
    match best {
        None => Solution::Infeasible,
        Some((cost, mut set)) => {
            set.sort_unstable();
            Solution::Feasible {
                set,
                value: scale.to_weight(cost),
            }
        }
    }
}

fn check_tree(t: &Cotree, g: &Graph) -> Result<()> {
    if &t.realize(g.n())? != g {
        return input("cotree does not realize the instance graph");
    }
    Ok(())
}

/// Minimum-weight total dominating set of the cograph described by `t`.
pub fn gamma_t_cograph(t: &Cotree, w: &[Weight]) -> Result<Solution> {
    let scale = CostScale::new(w)?;
    t.realize(w.len())?;
    Ok(finish(summarize(t, &scale.costs).gamma_t, &scale))
}

/// Optimum of a 1-uniform instance on a cograph given by its cotree.
pub fn solve_cograph(inst: &Instance, t: &Cotree) -> Result<Solution> {
    if inst.demands().any(|(_, c)| c != 1) {
        return contract("cograph solver requires every edge demand to equal 1");
    }
    check_tree(t, inst.graph())?;
    let scale = inst.cost_scale()?;
    Ok(finish(summarize(t, &scale.costs).gamma_m, &scale))
}
