//! Line-oriented instance format.
//!
//! ```text
//! # free-form comment
//! p em <n> <m>
//! v <id> <num>[/<den>]        weight, 1 when omitted
//! e <u> <v> <c>               edge with demand
//! i <id> <a> <b>              interval certificate (all vertices or none)
//! t <cotree-expr>             cotree certificate
//! # scale <s>                 coordinate lattice: unit length = s steps
//! # coord <id> <x> <y>        integer lattice coordinates
//! ```
//!
//! [`write_instance`] emits the canonical form, so parsing and re-emitting a
//! canonical file is byte-identical.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cograph::Cotree;
use crate::error::{EmError, Result};
use crate::graph::{edge, Graph};
use crate::instance::{Instance, Weight};

/// Integer lattice points; one unit of distance is `scale` lattice steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coordinates {
    pub scale: i64,
    pub points: Vec<(i64, i64)>,
}

/// A parsed instance together with whatever certificates the file carried.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub comments: Vec<String>,
    pub instance: Instance,
    pub intervals: Option<Vec<(i64, i64)>>,
    pub cotree: Option<Cotree>,
    pub coordinates: Option<Coordinates>,
}

impl InstanceFile {
    pub fn new(instance: Instance) -> Self {
        InstanceFile {
            comments: Vec::new(),
            instance,
            intervals: None,
            cotree: None,
            coordinates: None,
        }
    }
}

fn perr<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(EmError::Parse {
        line,
        message: message.into(),
    })
}

fn field<T: FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T> {
    match tok {
        None => perr(line, format!("missing {what}")),
        Some(t) => t.parse().or_else(|_| perr(line, format!("invalid {what} `{t}`"))),
    }
}

/// Parses `num` or `num/den` into a nonnegative rational.
pub fn parse_weight(s: &str) -> Option<Weight> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (BigInt::from_str(a).ok()?, BigInt::from_str(b).ok()?),
        None => (BigInt::from_str(s).ok()?, BigInt::one()),
    };
    if den.is_zero() || num.is_negative() || den.is_negative() {
        return None;
    }
    Some(Weight::new(num, den))
}

pub fn parse_instance(text: &str) -> Result<InstanceFile> {
    let mut comments = Vec::new();
    let mut header: Option<(usize, usize)> = None;
    let mut weights: Vec<Option<Weight>> = Vec::new();
    let mut edges = Vec::new();
    let mut demand = BTreeMap::new();
    let mut intervals: BTreeMap<usize, (i64, i64)> = BTreeMap::new();
    let mut cotree = None;
    let mut scale = None;
    let mut coords: BTreeMap<usize, (i64, i64)> = BTreeMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let mut tok = rest.split_whitespace();
            match tok.next() {
                Some("scale") => scale = Some(field::<i64>(ln, tok.next(), "scale")?),
                Some("coord") => {
                    let id: usize = field(ln, tok.next(), "vertex id")?;
                    let x = field(ln, tok.next(), "x")?;
                    let y = field(ln, tok.next(), "y")?;
                    coords.insert(id, (x, y));
                }
                _ => comments.push(rest.strip_prefix(' ').unwrap_or(rest).to_string()),
            }
            continue;
        }
        let mut tok = line.split_whitespace();
        let kind = tok.next().unwrap();
        if kind != "p" && header.is_none() {
            return perr(ln, "expected `p em <n> <m>` before any other line");
        }
        let n = header.map_or(0, |h| h.0);
        let check_id = |id: usize| {
            if id >= n {
                perr(ln, format!("vertex {id} outside 0..{n}"))
            } else {
                Ok(id)
            }
        };
        match kind {
            "p" => {
                if header.is_some() {
                    return perr(ln, "duplicate problem line");
                }
                if tok.next() != Some("em") {
                    return perr(ln, "problem line must read `p em <n> <m>`");
                }
                let n: usize = field(ln, tok.next(), "vertex count")?;
                let m: usize = field(ln, tok.next(), "edge count")?;
                header = Some((n, m));
                weights = vec![None; n];
            }
            "v" => {
                let id = check_id(field(ln, tok.next(), "vertex id")?)?;
                let w = tok.next().ok_or(()).or_else(|_| perr(ln, "missing weight"))?;
                let w = parse_weight(w).map_or_else(|| perr(ln, format!("invalid weight `{w}`")), Ok)?;
                if weights[id].replace(w).is_some() {
                    return perr(ln, format!("duplicate weight for vertex {id}"));
                }
            }
            "e" => {
                let u = check_id(field(ln, tok.next(), "endpoint")?)?;
                let v = check_id(field(ln, tok.next(), "endpoint")?)?;
                let c: u32 = field(ln, tok.next(), "demand")?;
                if u == v {
                    return perr(ln, format!("loop at vertex {u}"));
                }
                if demand.insert(edge(u, v), c).is_some() {
                    return perr(ln, format!("duplicate edge {{{u}, {v}}}"));
                }
                edges.push((u, v));
            }
            "i" => {
                let id = check_id(field(ln, tok.next(), "vertex id")?)?;
                let a = field(ln, tok.next(), "left endpoint")?;
                let b = field(ln, tok.next(), "right endpoint")?;
                if intervals.insert(id, (a, b)).is_some() {
                    return perr(ln, format!("duplicate interval for vertex {id}"));
                }
            }
            "t" => {
                let expr = line[1..].trim();
                let t = Cotree::parse(expr).or_else(|e| perr(ln, e.to_string()))?;
                cotree = Some(t);
            }
            other => return perr(ln, format!("unknown line type `{other}`")),
        }
        if kind != "t" && tok.next().is_some() {
            return perr(ln, "trailing tokens");
        }
    }

    let last = text.lines().count().max(1);
    let (n, m) = match header {
        Some(h) => h,
        None => return perr(last, "missing problem line"),
    };
    if edges.len() != m {
        return perr(last, format!("header announces {m} edges, found {}", edges.len()));
    }
    if !intervals.is_empty() && intervals.len() != n {
        return perr(last, "interval lines must cover every vertex");
    }
    if !coords.is_empty() && coords.len() != n {
        return perr(last, "coordinate lines must cover every vertex");
    }
    let graph = Graph::new(n, edges).or_else(|e| perr(last, e.to_string()))?;
    let weights = weights
        .into_iter()
        .map(|w| w.unwrap_or_else(Weight::one))
        .collect();
    let instance = Instance::new(graph, demand, weights).or_else(|e| perr(last, e.to_string()))?;
    let coordinates = (!coords.is_empty()).then(|| Coordinates {
        scale: scale.unwrap_or(1),
        points: coords.into_values().collect(),
    });
    Ok(InstanceFile {
        comments,
        instance,
        intervals: (!intervals.is_empty()).then(|| intervals.into_values().collect()),
        cotree,
        coordinates,
    })
}

pub fn write_instance(file: &InstanceFile) -> String {
    let inst = &file.instance;
    let mut out = String::new();
    for c in &file.comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "p em {} {}", inst.n(), inst.graph().m());
    for (v, w) in inst.weights().iter().enumerate() {
        let _ = writeln!(out, "v {v} {w}");
    }
    for ((u, v), c) in inst.demands() {
        let _ = writeln!(out, "e {u} {v} {c}");
    }
    if let Some(iv) = &file.intervals {
        for (v, (a, b)) in iv.iter().enumerate() {
            let _ = writeln!(out, "i {v} {a} {b}");
        }
    }
    if let Some(t) = &file.cotree {
        let _ = writeln!(out, "t {t}");
    }
    if let Some(c) = &file.coordinates {
        let _ = writeln!(out, "# scale {}", c.scale);
        for (v, (x, y)) in c.points.iter().enumerate() {
            let _ = writeln!(out, "# coord {v} {x} {y}");
        }
    }
    out
}
