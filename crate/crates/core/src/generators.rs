//! Seeded instance generators for every graph class the solvers handle.
//!
//! Randomness comes from ChaCha8 seeded with the little-endian bytes of the
//! `u64` seed followed by 24 zero bytes. Draws are consumed in a fixed order:
//! first the structure, then one demand per edge in sorted edge order, then
//! one weight per vertex. Bounded integers use rejection sampling on raw
//! `u64` outputs, so the streams are reproducible from the algorithm alone.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cograph::Cotree;
use crate::error::{input, EmError, Result};
use crate::format::Coordinates;
use crate::graph::{Graph, Vertex};
use crate::instance::{weight_ratio, Instance, Weight};
use crate::interval::IntervalRealization;
use crate::reductions::SplitPartition;

pub struct Rng(ChaCha8Rng);

impl Rng {
    pub fn new(seed: u64) -> Self {
        let mut bytes = [0u8; 32];
        bytes[..8].copy_from_slice(&seed.to_le_bytes());
        Rng(ChaCha8Rng::from_seed(bytes))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `0..n`, `n > 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % n;
            }
        }
    }

    /// Uniform in `lo..=hi`.
    pub fn between(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }

    /// True with probability `num / den`.
    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DemandSpec {
    Uniform(u32),
    /// Each edge independently uniform in `lo..=hi`.
    Range {
        lo: u32,
        hi: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightSpec {
    Unit,
    /// `num / den` with `num` uniform in `1..=max_num`, `den` in `1..=max_den`.
    Random {
        max_num: u32,
        max_den: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    pub seed: u64,
    pub demand: DemandSpec,
    pub weights: WeightSpec,
}

impl GenParams {
    pub fn new(seed: u64, demand: DemandSpec, weights: WeightSpec) -> Self {
        GenParams {
            seed,
            demand,
            weights,
        }
    }

    /// Unit weights, `c ≡ k`.
    pub fn uniform(seed: u64, k: u32) -> Self {
        Self::new(seed, DemandSpec::Uniform(k), WeightSpec::Unit)
    }

    fn validate(&self) -> Result<()> {
        if let DemandSpec::Range { lo, hi } = self.demand {
            if lo > hi {
                return input("demand range is empty");
            }
        }
        if let WeightSpec::Random { max_num, max_den } = self.weights {
            if max_num == 0 || max_den == 0 {
                return input("weight bounds must be positive");
            }
        }
        Ok(())
    }
}

fn decorate(graph: Graph, params: &GenParams, rng: &mut Rng) -> Instance {
    let demand = graph
        .edges()
        .iter()
        .map(|&e| {
            let c = match params.demand {
                DemandSpec::Uniform(k) => k,
                DemandSpec::Range { lo, hi } => rng.between(lo.into(), hi.into()) as u32,
            };
            (e, c)
        })
        .collect();
    let weights: Vec<Weight> = (0..graph.n())
        .map(|_| match params.weights {
            WeightSpec::Unit => weight_ratio(1, 1),
            WeightSpec::Random { max_num, max_den } => {
                let num = rng.between(1, max_num.into()) as i64;
                let den = rng.between(1, max_den.into()) as i64;
                weight_ratio(num, den)
            }
        })
        .collect();
    Instance::new(graph, demand, weights).expect("generated instance is valid")
}

fn start(params: &GenParams) -> Result<Rng> {
    params.validate()?;
    Ok(Rng::new(params.seed))
}

pub fn gen_complete(n: usize, params: &GenParams) -> Result<Instance> {
    if n == 0 {
        return input("complete graph needs n >= 1");
    }
    let mut rng = start(params)?;
    Ok(decorate(Graph::complete(n), params, &mut rng))
}

/// Glues cliques of the given sizes one after another, each at a uniformly
/// chosen vertex of the graph built so far.
pub fn gen_block_graph(sizes: &[usize], params: &GenParams) -> Result<Instance> {
    if sizes.is_empty() || sizes.iter().any(|&s| s < 2) {
        return input("block sizes must be at least 2");
    }
    let mut rng = start(params)?;
    let mut edges = Vec::new();
    let mut n = 0;
    for (i, &s) in sizes.iter().enumerate() {
        let block: Vec<Vertex> = if i == 0 {
            (0..s).collect()
        } else {
            let at = rng.below(n as u64) as usize;
            std::iter::once(at).chain(n..n + s - 1).collect()
        };
        n = if i == 0 { s } else { n + s - 1 };
        for (a, &u) in block.iter().enumerate() {
            edges.extend(block[a + 1..].iter().map(|&v| (u, v)));
        }
    }
    let g = Graph::new(n, edges)?;
    Ok(decorate(g, params, &mut rng))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthSpec {
    /// Every interval has this odd length.
    Unit { length: i64 },
    /// Odd lengths drawn uniformly from `1..=max`.
    Range { max: i64 },
}

/// Left endpoints are distinct even integers below `4n`, lengths are odd,
/// so left and right endpoints never meet. A right endpoint that collides
/// with an earlier one is pushed right by 2 until it is free.
pub fn gen_interval(
    n: usize,
    lengths: LengthSpec,
    params: &GenParams,
) -> Result<(Instance, IntervalRealization)> {
    if n == 0 {
        return input("interval graph needs n >= 1");
    }
    match lengths {
        LengthSpec::Unit { length } if length < 1 || length % 2 == 0 => {
            return input("unit interval length must be odd and positive")
        }
        LengthSpec::Range { max } if max < 1 => return input("maximum length must be positive"),
        _ => {}
    }
    let mut rng = start(params)?;
    let mut slots: Vec<i64> = (0..2 * n as i64).collect();
    rng.shuffle(&mut slots);
    let mut used = std::collections::BTreeSet::new();
    let mut intervals = Vec::with_capacity(n);
    for &slot in &slots[..n] {
        let a = 2 * slot;
        let len = match lengths {
            LengthSpec::Unit { length } => length,
            LengthSpec::Range { max } => 2 * rng.below(((max + 1) / 2) as u64) as i64 + 1,
        };
        let mut b = a + len;
        while !used.insert(b) {
            b += 2;
        }
        intervals.push((a, b));
    }
    let real = IntervalRealization::new(intervals)?;
    let inst = decorate(real.intersection_graph(), params, &mut rng);
    Ok((inst, real))
}

fn random_cotree(rng: &mut Rng, leaves: &[Vertex], join: bool) -> Cotree {
    if leaves.len() == 1 {
        return Cotree::Leaf(leaves[0]);
    }
    let parts = (2 + rng.below(2) as usize).min(leaves.len());
    // Choose `parts - 1` distinct cut positions in 1..len.
    let mut cuts: Vec<usize> = (1..leaves.len()).collect();
    rng.shuffle(&mut cuts);
    let mut cuts = cuts[..parts - 1].to_vec();
    cuts.sort_unstable();
    let mut bounds = vec![0];
    bounds.extend(cuts);
    bounds.push(leaves.len());
    let children = bounds
        .windows(2)
        .map(|w| random_cotree(rng, &leaves[w[0]..w[1]], !join))
        .collect();
    if join {
        Cotree::Join(children)
    } else {
        Cotree::Union(children)
    }
}

/// Random cotree with alternating labels below a random root label.
pub fn gen_cograph(n: usize, params: &GenParams) -> Result<(Instance, Cotree)> {
    if n == 0 {
        return input("cograph needs n >= 1");
    }
    let mut rng = start(params)?;
    let mut leaves: Vec<Vertex> = (0..n).collect();
    rng.shuffle(&mut leaves);
    let join = rng.chance(1, 2);
    let tree = random_cotree(&mut rng, &leaves, join);
    let g = tree.realize(n)?;
    Ok((decorate(g, params, &mut rng), tree))
}

pub const SPLIT_RETRIES: usize = 1000;

/// Clique on `0..clique`, independent set on the rest, each cross edge
/// present with probability `percent / 100`. With `min_degree_two` the
/// structure is redrawn until every vertex has degree at least 2.
pub fn gen_split(
    clique: usize,
    independent: usize,
    percent: u32,
    min_degree_two: bool,
    params: &GenParams,
) -> Result<(Instance, SplitPartition)> {
    if clique == 0 || percent > 100 {
        return input("split graph needs a nonempty clique and a percentage in 0..=100");
    }
    let mut rng = start(params)?;
    let n = clique + independent;
    for _ in 0..SPLIT_RETRIES {
        let mut edges: Vec<(Vertex, Vertex)> = (0..clique)
            .flat_map(|u| (u + 1..clique).map(move |v| (u, v)))
            .collect();
        for x in clique..n {
            for k in 0..clique {
                if rng.chance(percent.into(), 100) {
                    edges.push((k, x));
                }
            }
        }
        let g = Graph::new(n, edges)?;
        if !min_degree_two || g.min_degree().is_some_and(|d| d >= 2) {
            let part = SplitPartition {
                clique: (0..clique).collect(),
                independent: (clique..n).collect(),
            };
            return Ok((decorate(g, params, &mut rng), part));
        }
    }
    Err(EmError::Generation(format!(
        "no split graph with minimum degree 2 after {SPLIT_RETRIES} draws"
    )))
}

/// `rows × cols` grid, vertex `(r, c)` has id `r * cols + c`. When
/// triangulated, each cell gets one diagonal chosen by a fair coin.
pub fn gen_planar(rows: usize, cols: usize, triangulate: bool, params: &GenParams) -> Result<Instance> {
    if rows == 0 || cols == 0 {
        return input("grid needs at least one row and one column");
    }
    let mut rng = start(params)?;
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    if triangulate {
        for r in 0..rows.saturating_sub(1) {
            for c in 0..cols.saturating_sub(1) {
                if rng.chance(1, 2) {
                    edges.push((id(r, c), id(r + 1, c + 1)));
                } else {
                    edges.push((id(r, c + 1), id(r + 1, c)));
                }
            }
        }
    }
    let g = Graph::new(rows * cols, edges)?;
    Ok(decorate(g, params, &mut rng))
}

/// Edge iff the squared lattice distance is at most `(2 · scale)^2`.
pub fn unit_disk_graph(coords: &Coordinates) -> Graph {
    let p = &coords.points;
    let limit = (2 * coords.scale as i128).pow(2);
    let close = |i: usize, j: usize| {
        let dx = (p[i].0 - p[j].0) as i128;
        let dy = (p[i].1 - p[j].1) as i128;
        dx * dx + dy * dy <= limit
    };
    let edges = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| close(i, j));
    Graph::new(p.len(), edges).expect("distance graph is simple")
}

/// `n` lattice points uniform in `[0, side·scale]^2`.
pub fn gen_unit_disk(n: usize, side: i64, scale: i64, params: &GenParams) -> Result<(Instance, Coordinates)> {
    if n == 0 || side < 1 || scale < 1 {
        return input("unit disk generator needs n, side and scale positive");
    }
    let mut rng = start(params)?;
    let hi = (side * scale) as u64;
    let points = (0..n)
        .map(|_| (rng.between(0, hi) as i64, rng.between(0, hi) as i64))
        .collect();
    let coords = Coordinates { scale, points };
    let inst = decorate(unit_disk_graph(&coords), params, &mut rng);
    Ok((inst, coords))
}
