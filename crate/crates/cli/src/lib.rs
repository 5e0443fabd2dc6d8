//! Command-line front end for the edge monitoring solvers.
//!
//! Everything runs through [`run`], which takes the argument vector and
//! returns the exit code and the text written to stdout and stderr. The
//! binary is a thin wrapper around it, which keeps the commands testable
//! without spawning processes.
//!
//! Exit codes are the `EXIT_*` constants below.

use std::fmt::Write as _;
use std::io::Read;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use edgemon::block::{block_cut_tree, solve_block};
use edgemon::cograph::{cotree_build, solve_cograph};
use edgemon::complete::{ptas_complete, solve_complete_cbounded, CompleteInstance};
use edgemon::format::{parse_instance, parse_weight, write_instance, InstanceFile};
use edgemon::generators::*;
use edgemon::instance::unit_weights;
use edgemon::interval::{solve_interval, IntervalRealization};
use edgemon::monitor::deficits;
use edgemon::oracle::{exact_gamma_m, SearchBudget};
use edgemon::planar::{band_budget, ptas_planar};
use edgemon::reductions::*;
use edgemon::{EmError, Graph, Instance, Solution, Weight};
use rayon::prelude::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Environment variable overriding the oracle's vertex limit.
pub const BUDGET_ENV: &str = "EM_BUDGET_VERTICES";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "edgemon", version, about = "Weighted edge monitoring solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve exactly with a class-specific algorithm.
    Solve {
        #[arg(long, value_enum, default_value = "auto")]
        class: ExactClass,
        /// Instance file; stdin when omitted.
        #[arg(long = "in")]
        input: Option<String>,
    },
    /// Run an approximation scheme.
    Approx {
        #[arg(long)]
        epsilon: String,
        #[arg(long, value_enum)]
        class: ApproxClass,
        #[arg(long = "in")]
        input: Option<String>,
    },
    /// Exact branch and bound on any instance within the vertex budget.
    Oracle {
        #[arg(long = "in")]
        input: Option<String>,
    },
    /// Check a vertex set against an instance.
    Verify {
        /// File with vertex ids, or the output of `solve`.
        #[arg(long)]
        solution: String,
        #[arg(long = "in")]
        input: Option<String>,
    },
    /// Emit a seeded random instance with its certificate.
    Generate(GenArgs),
    /// Transform a source graph by one of the hardness reductions.
    Reduce {
        #[arg(long, value_enum)]
        kind: ReductionKind,
        /// Independent set size for `--kind is`.
        #[arg(long)]
        k: Option<u32>,
        /// Comma-separated chain lengths for `--kind udg`; 1 per edge by default.
        #[arg(long)]
        chains: Option<String>,
        #[arg(long = "in")]
        input: Option<String>,
    },
    /// Compare a solver with the oracle over a range of seeds.
    Bench {
        #[arg(long, value_enum)]
        class: BenchClass,
        /// Half-open seed range `A..B`.
        #[arg(long)]
        seeds: String,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        max_demand: u32,
        /// Needed for the approximate classes.
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExactClass {
    Complete,
    Block,
    Interval,
    Cograph,
    Split,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ApproxClass {
    Complete,
    Planar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReductionKind {
    /// Total domination: three new vertices, optimum grows by 3.
    Tds,
    /// Independent set to a complete instance.
    Is,
    /// Bipartite total domination to a comparability graph.
    Comparability,
    /// Planar vertex cover to a unit disk graph.
    Udg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenClass {
    Complete,
    Block,
    Interval,
    UnitInterval,
    Cograph,
    Split,
    Planar,
    UnitDisk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchClass {
    Complete,
    Block,
    Interval,
    Cograph,
    ApproxComplete,
    Planar,
}

#[derive(clap::Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    class: GenClass,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    n: usize,
    /// Demands drawn uniformly from `0..=max_demand`.
    #[arg(long, default_value_t = 1)]
    max_demand: u32,
    /// Fixed demand on every edge; overrides `--max-demand`.
    #[arg(long)]
    uniform: Option<u32>,
    /// Random rational weights instead of unit weights.
    #[arg(long)]
    weighted: bool,
    /// Clique sizes of a block graph, comma separated.
    #[arg(long, default_value = "3,3")]
    sizes: String,
    /// Longest interval; the unit length for `unit-interval`.
    #[arg(long, default_value_t = 9)]
    length: i64,
    #[arg(long, default_value_t = 4)]
    clique: usize,
    #[arg(long, default_value_t = 3)]
    independent: usize,
    #[arg(long, default_value_t = 60)]
    percent: u32,
    #[arg(long)]
    min_degree_two: bool,
    #[arg(long, default_value_t = 4)]
    rows: usize,
    #[arg(long, default_value_t = 4)]
    cols: usize,
    #[arg(long)]
    triangulate: bool,
    #[arg(long, default_value_t = 10)]
    side: i64,
    #[arg(long, default_value_t = 4)]
    scale: i64,
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(code, text)
            } else {
                Outcome::fail(code, text)
            };
        }
    };
    match execute(cli.command) {
        Ok(out) => out,
        Err(Failure(code, msg)) => Outcome::fail(code, msg),
    }
}

struct Failure(i32, String);

impl From<EmError> for Failure {
    fn from(e: EmError) -> Self {
        let code = match e {
            EmError::Budget(_) | EmError::WeightOverflow => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Failure(code, format!("error: {e}"))
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Failure(EXIT_USAGE, format!("error: {}", msg.into())))
}

fn read_source(path: Option<&str>) -> CliResult<String> {
    let mut text = String::new();
    let res = match path {
        Some(p) => std::fs::File::open(p).and_then(|mut f| f.read_to_string(&mut text)),
        None => std::io::stdin().read_to_string(&mut text),
    };
    match res {
        Ok(_) => Ok(text),
        Err(e) => usage(format!("cannot read {}: {e}", path.unwrap_or("stdin"))),
    }
}

fn load(path: Option<&str>) -> CliResult<InstanceFile> {
    Ok(parse_instance(&read_source(path)?)?)
}

/// Oracle budget, honoring the environment override.
fn oracle_budget() -> CliResult<SearchBudget> {
    match std::env::var(BUDGET_ENV) {
        Err(_) => Ok(SearchBudget::default()),
        Ok(v) => match v.trim().parse() {
            Ok(n) => Ok(SearchBudget::with_max_vertices(n)),
            Err(_) => usage(format!("{BUDGET_ENV} must be a vertex count, got `{v}`")),
        },
    }
}

fn epsilon(text: &str) -> CliResult<Weight> {
    match parse_weight(text) {
        Some(e) if e > Weight::from_integer(0.into()) => Ok(e),
        _ => usage(format!("epsilon must be a positive rational, got `{text}`")),
    }
}

fn report(sol: &Solution) -> Outcome {
    let code = if sol.is_feasible() { EXIT_OK } else { EXIT_NO };
    Outcome::ok(code, sol.to_string())
}

fn execute(cmd: Command) -> CliResult<Outcome> {
    match cmd {
        Command::Solve { class, input } => {
            let file = load(input.as_deref())?;
            Ok(report(&solve_exact(class, &file)?))
        }
        Command::Approx {
            epsilon: eps,
            class,
            input,
        } => {
            let eps = epsilon(&eps)?;
            let file = load(input.as_deref())?;
            let sol = match class {
                ApproxClass::Complete => ptas_complete(&CompleteInstance::new(file.instance)?, &eps)?,
                ApproxClass::Planar => ptas_planar(&file.instance, &eps, band_budget())?,
            };
            Ok(report(&sol))
        }
        Command::Oracle { input } => {
            let file = load(input.as_deref())?;
            Ok(report(&exact_gamma_m(&file.instance, oracle_budget()?)?))
        }
        Command::Verify { solution, input } => {
            let file = load(input.as_deref())?;
            let set = parse_vertex_set(&read_source(Some(&solution))?)?;
            verify(&file.instance, &set)
        }
        Command::Generate(args) => Ok(Outcome::ok(EXIT_OK, write_instance(&generate(&args)?))),
        Command::Reduce {
            kind,
            k,
            chains,
            input,
        } => {
            let file = load(input.as_deref())?;
            let out = reduce(kind, k, chains.as_deref(), file.instance.graph())?;
            Ok(Outcome::ok(EXIT_OK, write_instance(&out)))
        }
        Command::Bench {
            class,
            seeds,
            n,
            max_demand,
            epsilon: eps,
            threads,
        } => {
            let eps = eps.as_deref().map(epsilon).transpose()?;
            bench(class, &seeds, n, max_demand, eps, threads)
        }
    }
}

fn solve_exact(class: ExactClass, file: &InstanceFile) -> CliResult<Solution> {
    let inst = &file.instance;
    match class {
        ExactClass::Complete => Ok(solve_complete_cbounded(
            &CompleteInstance::new(inst.clone())?,
            None,
        )?),
        ExactClass::Block => Ok(solve_block(inst)?),
        ExactClass::Interval => {
            let Some(iv) = &file.intervals else {
                return usage("interval solver needs `i` certificate lines");
            };
            Ok(solve_interval(inst, &IntervalRealization::repaired(iv)?)?)
        }
        ExactClass::Cograph => {
            let tree = match &file.cotree {
                Some(t) => t.clone(),
                None => match cotree_build(inst.graph()) {
                    Ok(t) => t,
                    Err(_) => return usage("graph is not a cograph (it has an induced P4)"),
                },
            };
            Ok(solve_cograph(inst, &tree)?)
        }
        ExactClass::Split => {
            if inst.demands().any(|(_, c)| c != 1) || inst.weights() != unit_weights(inst.n()).as_slice() {
                return usage("split solver handles 1-uniform demands with unit weights only");
            }
            let Some(part) = split_partition(inst.graph()) else {
                return usage("graph is not a split graph");
            };
            Ok(split_gamma_m(inst.graph(), &part, oracle_budget()?)?)
        }
        ExactClass::Auto => {
            if file.intervals.is_some() {
                solve_exact(ExactClass::Interval, file)
            } else if file.cotree.is_some() {
                solve_exact(ExactClass::Cograph, file)
            } else if inst.graph().is_complete() {
                solve_exact(ExactClass::Complete, file)
            } else if block_cut_tree(inst.graph()).is_block_graph() && inst.max_demand() <= 4 {
                solve_exact(ExactClass::Block, file)
            } else {
                usage(
                    "no exact class applies: add an interval or cotree certificate, \
                     pick --class explicitly, or use `oracle` or `approx`",
                )
            }
        }
    }
}

/// Accepts bare vertex ids, or `solve` output (its `set` line is used).
fn parse_vertex_set(text: &str) -> CliResult<Vec<usize>> {
    let mut ids = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        let rest = match line.split_whitespace().next() {
            None => continue,
            Some(w) if w.starts_with('#') || w == "status" || w == "value" => continue,
            Some("set") => &line[3..],
            Some(_) => line,
        };
        for tok in rest.split_whitespace() {
            match tok.parse() {
                Ok(v) => ids.push(v),
                Err(_) => return usage(format!("bad vertex id `{tok}` in solution")),
            }
        }
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

fn verify(inst: &Instance, set: &[usize]) -> CliResult<Outcome> {
    let missing = deficits(inst, set)?;
    let mut out = String::new();
    for ((u, v), have, need) in &missing {
        let _ = writeln!(out, "deficit {u} {v} {have} {need}");
    }
    let _ = writeln!(out, "weight {}", inst.total_weight(set));
    let _ = writeln!(out, "verified {}", missing.is_empty());
    Ok(Outcome::ok(
        if missing.is_empty() { EXIT_OK } else { EXIT_NO },
        out,
    ))
}

fn gen_params(args: &GenArgs) -> GenParams {
    let demand = match args.uniform {
        Some(k) => DemandSpec::Uniform(k),
        None => DemandSpec::Range {
            lo: 0,
            hi: args.max_demand,
        },
    };
    let weights = if args.weighted {
        WeightSpec::Random {
            max_num: 9,
            max_den: 4,
        }
    } else {
        WeightSpec::Unit
    };
    GenParams::new(args.seed, demand, weights)
}

fn generate(args: &GenArgs) -> CliResult<InstanceFile> {
    let p = gen_params(args);
    let mut file = match args.class {
        GenClass::Complete => InstanceFile::new(gen_complete(args.n, &p)?),
        GenClass::Block => {
            let sizes: Vec<usize> = parse_list(&args.sizes, "--sizes")?;
            InstanceFile::new(gen_block_graph(&sizes, &p)?)
        }
        GenClass::Interval | GenClass::UnitInterval => {
            let lengths = if args.class == GenClass::Interval {
                LengthSpec::Range { max: args.length }
            } else {
                LengthSpec::Unit { length: args.length }
            };
            let (inst, real) = gen_interval(args.n, lengths, &p)?;
            let mut f = InstanceFile::new(inst);
            f.intervals = Some(real.intervals().to_vec());
            f
        }
        GenClass::Cograph => {
            let (inst, tree) = gen_cograph(args.n, &p)?;
            let mut f = InstanceFile::new(inst);
            f.cotree = Some(tree);
            f
        }
        GenClass::Split => {
            let (inst, _) = gen_split(
                args.clique,
                args.independent,
                args.percent,
                args.min_degree_two,
                &p,
            )?;
            InstanceFile::new(inst)
        }
        GenClass::Planar => InstanceFile::new(gen_planar(args.rows, args.cols, args.triangulate, &p)?),
        GenClass::UnitDisk => {
            let (inst, coords) = gen_unit_disk(args.n, args.side, args.scale, &p)?;
            let mut f = InstanceFile::new(inst);
            f.coordinates = Some(coords);
            f
        }
    };
    file.comments
        .push(format!("generated class={:?} seed={}", args.class, args.seed).to_lowercase());
    Ok(file)
}

fn parse_list(text: &str, flag: &str) -> CliResult<Vec<usize>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .or_else(|_| usage(format!("{flag}: bad entry `{t}`")))
        })
        .collect()
}

fn reduce(kind: ReductionKind, k: Option<u32>, chains: Option<&str>, g: &Graph) -> CliResult<InstanceFile> {
    let (inst, relation, coords) = match kind {
        ReductionKind::Tds => (
            reduce_tds_to_em(g)?,
            "gamma_m(image) = gamma_t(source) + 3".to_string(),
            None,
        ),
        ReductionKind::Comparability => (
            reduce_bip_tds_to_comparability(g)?,
            "gamma_m(image) = gamma_t(source) + 1".to_string(),
            None,
        ),
        ReductionKind::Is => {
            let Some(k) = k else {
                return usage("--kind is needs --k");
            };
            let image = reduce_is_to_em(g, k)?.into_inner();
            (
                image,
                format!("alpha(source) >= {k} iff image has a monitoring set of size {k}"),
                None,
            )
        }
        ReductionKind::Udg => {
            let lengths = match chains {
                Some(c) => parse_list(c, "--chains")?,
                None => vec![1; g.m()],
            };
            let img = reduce_planar_vc_to_udg(g, &lengths, None)?;
            let rel = format!("gamma_m(image) = vc(source) + {}", img.offset);
            (img.instance, rel, img.coordinates)
        }
    };
    let mut file = InstanceFile::new(inst);
    file.comments
        .push(format!("source n={} m={} edges={:?}", g.n(), g.m(), g.edges()));
    file.comments.push(format!("relation {relation}"));
    file.coordinates = coords;
    Ok(file)
}

fn seed_range(text: &str) -> CliResult<std::ops::Range<u64>> {
    let parsed = text
        .split_once("..")
        .and_then(|(a, b)| Some(a.trim().parse().ok()?..b.trim().parse().ok()?));
    match parsed {
        Some(r) if r.start < r.end => Ok(r),
        _ => usage(format!("--seeds expects A..B with A < B, got `{text}`")),
    }
}

struct BenchRow {
    seed: u64,
    value: Option<Weight>,
    oracle: Option<Weight>,
    millis: f64,
}

type BenchSolver = dyn Fn(&Instance) -> CliResult<Solution>;

fn bench_one(class: BenchClass, seed: u64, n: usize, c: u32, eps: Option<&Weight>) -> CliResult<BenchRow> {
    let p = GenParams::new(
        seed,
        DemandSpec::Range { lo: 0, hi: c },
        WeightSpec::Random {
            max_num: 9,
            max_den: 4,
        },
    );
    let uniform = GenParams::new(
        seed,
        DemandSpec::Uniform(1),
        WeightSpec::Random {
            max_num: 9,
            max_den: 4,
        },
    );
    let need_eps = || {
        eps.cloned()
            .map_or_else(|| usage("this class needs --epsilon"), Ok)
    };
    let (inst, solver): (Instance, Box<BenchSolver>) = match class {
        BenchClass::Complete => (
            gen_complete(n, &p)?,
            Box::new(|i| Ok(solve_complete_cbounded(&CompleteInstance::new(i.clone())?, None)?)),
        ),
        BenchClass::Block => {
            let sizes = block_sizes(seed, n);
            (gen_block_graph(&sizes, &p)?, Box::new(|i| Ok(solve_block(i)?)))
        }
        BenchClass::Interval => {
            let (inst, real) = gen_interval(n, LengthSpec::Range { max: 15 }, &p)?;
            (inst, Box::new(move |i| Ok(solve_interval(i, &real)?)))
        }
        BenchClass::Cograph => {
            let (inst, tree) = gen_cograph(n, &uniform)?;
            (inst, Box::new(move |i| Ok(solve_cograph(i, &tree)?)))
        }
        BenchClass::ApproxComplete => {
            let e = need_eps()?;
            (
                gen_complete(n, &p)?,
                Box::new(move |i| Ok(ptas_complete(&CompleteInstance::new(i.clone())?, &e)?)),
            )
        }
        BenchClass::Planar => {
            let e = need_eps()?;
            let cols = n.div_ceil(4).max(1);
            let inst = gen_planar(n.div_ceil(cols), cols, true, &p)?;
            (inst, Box::new(move |i| Ok(ptas_planar(i, &e, band_budget())?)))
        }
    };
    let start = Instant::now();
    let sol = solver(&inst)?;
    let millis = start.elapsed().as_secs_f64() * 1e3;
    let oracle = exact_gamma_m(&inst, oracle_budget()?)?;
    Ok(BenchRow {
        seed,
        value: sol.value().cloned(),
        oracle: oracle.value().cloned(),
        millis,
    })
}

/// Clique sizes in `2..=4` whose block graph has at most `n` vertices.
fn block_sizes(seed: u64, n: usize) -> Vec<usize> {
    let mut rng = Rng::new(seed);
    let mut sizes = vec![2];
    let mut total = 2;
    loop {
        let s = rng.between(2, 4) as usize;
        if total + s - 1 > n {
            return sizes;
        }
        total += s - 1;
        sizes.push(s);
    }
}

fn fmt_opt(w: &Option<Weight>) -> String {
    w.as_ref().map_or_else(|| "inf".to_string(), Weight::to_string)
}

fn bench(
    class: BenchClass,
    seeds: &str,
    n: usize,
    c: u32,
    eps: Option<Weight>,
    threads: usize,
) -> CliResult<Outcome> {
    let range = seed_range(seeds)?;
    if threads == 0 {
        return usage("--threads must be at least 1");
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure(EXIT_USAGE, format!("error: {e}")))?;
    let rows: Vec<CliResult<BenchRow>> = pool.install(|| {
        range
            .into_par_iter()
            .map(|s| bench_one(class, s, n, c, eps.as_ref()))
            .collect()
    });
    let mut out = String::from("seed value oracle ratio ms\n");
    let mut worst_ok = true;
    for row in rows {
        let row = row?;
        let ratio = match (&row.value, &row.oracle) {
            (Some(v), Some(o)) if *o == Weight::from_integer(0.into()) => {
                if *v == *o {
                    "1.0000".to_string()
                } else {
                    "inf".to_string()
                }
            }
            (Some(v), Some(o)) => format!("{:.4}", ratio_f64(&(v / o))),
            (None, None) => "1.0000".to_string(),
            _ => {
                worst_ok = false;
                "mismatch".to_string()
            }
        };
        let _ = writeln!(
            out,
            "{} {} {} {ratio} {:.3}",
            row.seed,
            fmt_opt(&row.value),
            fmt_opt(&row.oracle),
            row.millis
        );
    }
    Ok(Outcome::ok(if worst_ok { EXIT_OK } else { EXIT_NO }, out))
}

fn ratio_f64(r: &Weight) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_sets_parse_from_solver_output() {
        let text = "status feasible\nvalue 5\nset 0 3 1\n";
        assert_eq!(parse_vertex_set(text).ok(), Some(vec![0, 1, 3]));
        assert_eq!(parse_vertex_set("2 2\n# note\n0").ok(), Some(vec![0, 2]));
        assert!(parse_vertex_set("x").is_err());
    }

    #[test]
    fn seed_ranges() {
        assert_eq!(seed_range("0..10").ok(), Some(0..10));
        assert!(seed_range("5..5").is_err());
        assert!(seed_range("a..b").is_err());
    }

    #[test]
    fn block_sizes_fit() {
        for seed in 0..20 {
            let sizes = block_sizes(seed, 9);
            let n: usize = sizes.iter().sum::<usize>() - (sizes.len() - 1);
            assert!(n <= 9);
        }
    }
}
