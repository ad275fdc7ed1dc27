//! `graph-knn` command line: `compute`, `verify` and `bench`.
//!
//! Exit codes: 0 success, 1 unreadable or invalid input, 2 bad usage or
//! flag combination, 3 verification mismatch.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::fast::{knn_all, knn_from_terminals, Membership};
use crate::generate::{gnm, max_edges};
use crate::graph::{Graph, GraphFormat, VertexId};
use crate::oracle::brute_force_knn;
use crate::randomized::{randomized_knn, DEFAULT_CONFIDENCE};
use crate::stats::RunStats;
use crate::table::{format_distance, KnnTable, NeighborEntry};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "graph-knn", version, about = "k nearest neighbors for every vertex of a weighted digraph")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the k-NN table as `v<TAB>rank<TAB>source<TAB>distance` lines.
    Compute(ComputeArgs),
    /// Compare an algorithm's table against the brute-force oracle.
    Verify(ComputeArgs),
    /// Time runs over a list of k values and print CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Fast,
    Randomized,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Dimacs,
    Edgelist,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    /// Rank sources u by dist(u -> v).
    In,
    /// Rank targets u by dist(v -> u).
    Out,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Hashed,
    Bounded,
}

impl From<ModeArg> for Membership {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Hashed => Membership::Hashed,
            ModeArg::Bounded => Membership::Bounded,
        }
    }
}

#[derive(Debug, Args)]
struct ComputeArgs {
    /// Graph file.
    input: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long, value_enum, default_value = "fast")]
    algo: Algo,
    /// Input format; guessed from the content when omitted.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long, value_enum, default_value = "in")]
    direction: Direction,
    /// Membership structure (fast only).
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// File with one terminal id per line (fast and oracle only).
    #[arg(long)]
    terminals: Option<PathBuf>,
    /// Sampling seed (randomized only).
    #[arg(long)]
    seed: Option<u64>,
    /// Failure exponent c, at least 3 (randomized only).
    #[arg(long)]
    confidence: Option<u32>,
    /// Print operation counters to stderr.
    #[arg(long)]
    stats: bool,
    /// Worker threads for the randomized rounds and the oracle.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Graph file; when absent a random graph is generated.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    format: Option<FormatArg>,
    #[arg(long, default_value_t = 10_000)]
    n: usize,
    #[arg(long, default_value_t = 100_000)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    weight_min: u32,
    #[arg(long, default_value_t = 100)]
    weight_max: u32,
    /// Seed of the generated graph.
    #[arg(long, default_value_t = 1)]
    graph_seed: u64,
    /// Comma-separated k values.
    #[arg(long, value_delimiter = ',', default_value = "1,2,4,8")]
    ks: Vec<usize>,
    #[arg(long, value_enum, default_value = "fast")]
    algo: Algo,
    #[arg(long, default_value_t = 1)]
    reps: usize,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    confidence: Option<u32>,
    #[arg(long)]
    threads: Option<usize>,
}

/// Outcome of a subcommand that did not succeed.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut (dyn Write + Send) = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let threads = match &cli.command {
        Command::Compute(a) | Command::Verify(a) => a.threads,
        Command::Bench(a) => a.threads,
    };
    let result = with_threads(threads, || match &cli.command {
        Command::Compute(a) => compute(a, out, err),
        Command::Verify(a) => verify(a, out),
        Command::Bench(a) => bench(a, out),
    });
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "graph-knn: {}", f.message);
            f.code
        }
    }
}

fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

fn load_graph(path: &Path, format: Option<FormatArg>) -> Result<(Graph, GraphFormat), Failure> {
    let bytes = fs::read(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let format = match format {
        Some(FormatArg::Dimacs) => GraphFormat::Dimacs,
        Some(FormatArg::Edgelist) => GraphFormat::EdgeList,
        None => GraphFormat::sniff(&String::from_utf8_lossy(&bytes)),
    };
    let graph = Graph::parse(bytes.as_slice(), format)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    Ok((graph, format))
}

/// One id per line, in the graph format's indexing; `#` starts a comment.
fn load_terminals(path: &Path, format: GraphFormat, n: usize) -> Result<Vec<VertexId>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let base = format.id_base() as i64;
    let mut ids = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fail = |what: &str| input_error(format!("{}: line {}: {what}", path.display(), i + 1));
        let raw: i64 = line.parse().map_err(|_| fail("expected a vertex id"))?;
        let id = raw - base;
        if id < 0 || id as usize >= n {
            return Err(fail(&format!("terminal {raw} out of range for {n} vertices")));
        }
        ids.push(id as usize);
    }
    if ids.is_empty() {
        return Err(input_error(format!("{}: no terminals listed", path.display())));
    }
    Ok(ids)
}

fn check_combination(a: &ComputeArgs) -> Result<(), Failure> {
    if a.algo != Algo::Randomized && (a.seed.is_some() || a.confidence.is_some()) {
        return Err(usage("--seed and --confidence only apply to --algo randomized"));
    }
    if a.algo != Algo::Fast && a.mode.is_some() {
        return Err(usage("--mode only applies to --algo fast"));
    }
    if a.algo == Algo::Randomized && a.terminals.is_some() {
        return Err(usage("--terminals is not supported with --algo randomized"));
    }
    if a.algo == Algo::Oracle && a.stats {
        return Err(usage("--stats is not available for --algo oracle"));
    }
    check_confidence(a.confidence)
}

fn check_confidence(c: Option<u32>) -> Result<(), Failure> {
    match c {
        Some(c) if c < 3 => Err(usage("--confidence must be at least 3")),
        _ => Ok(()),
    }
}

struct Prepared {
    graph: Graph,
    terminals: Option<Vec<VertexId>>,
}

fn prepare(a: &ComputeArgs) -> Result<Prepared, Failure> {
    check_combination(a)?;
    let (graph, format) = load_graph(&a.input, a.format)?;
    let terminals = a
        .terminals
        .as_deref()
        .map(|p| load_terminals(p, format, graph.vertex_count()))
        .transpose()?;
    let graph = match a.direction {
        Direction::In => graph,
        Direction::Out => graph.reverse(),
    };
    Ok(Prepared { graph, terminals })
}

fn run_algo(a: &ComputeArgs, p: &Prepared, stats: &mut RunStats) -> KnnTable {
    let k = a.k as usize;
    match a.algo {
        Algo::Fast => {
            let mode = a.mode.map_or(Membership::Hashed, Membership::from);
            match &p.terminals {
                Some(ts) => knn_from_terminals(&p.graph, k, ts, mode, stats).expect("terminals validated on load"),
                None => knn_all(&p.graph, k, mode, stats),
            }
        }
        Algo::Randomized => randomized_knn(
            &p.graph,
            k,
            a.confidence.unwrap_or(DEFAULT_CONFIDENCE),
            a.seed.unwrap_or(0),
            stats,
        ),
        Algo::Oracle => brute_force_knn(&p.graph, k, p.terminals.as_deref()),
    }
}

fn compute(a: &ComputeArgs, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<i32, Failure> {
    let prepared = prepare(a)?;
    let mut stats = RunStats::default();
    let table = run_algo(a, &prepared, &mut stats);
    table
        .write_tsv(&mut *out)
        .map_err(|e| input_error(format!("writing table: {e}")))?;
    if a.stats {
        let _ = write!(err, "{stats}");
    }
    Ok(EXIT_OK)
}

fn verify(a: &ComputeArgs, out: &mut (dyn Write + Send)) -> Result<i32, Failure> {
    if a.algo == Algo::Oracle {
        return Err(usage("verify compares --algo fast or randomized against the oracle"));
    }
    let prepared = prepare(a)?;
    let table = run_algo(a, &prepared, &mut RunStats::default());
    let oracle = brute_force_knn(&prepared.graph, a.k as usize, prepared.terminals.as_deref());
    Ok(report_verification(&table, &oracle, out))
}

fn show(e: Option<NeighborEntry>) -> String {
    match e {
        Some(e) => format!("(source {}, distance {})", e.source, format_distance(e.distance)),
        None => "(none)".to_string(),
    }
}

/// Writes a verdict and returns 0 for identical tables, 3 otherwise.
pub fn report_verification(table: &KnnTable, oracle: &KnnTable, out: &mut (dyn Write + Send)) -> i32 {
    match table.first_mismatch(oracle) {
        None => {
            let _ = writeln!(out, "ok: {} rows identical to oracle", table.vertex_count());
            EXIT_OK
        }
        Some(m) => {
            let _ = writeln!(
                out,
                "mismatch at vertex {} rank {}: computed {} oracle {}",
                m.vertex,
                m.rank,
                show(m.left),
                show(m.right)
            );
            EXIT_MISMATCH
        }
    }
}

pub const BENCH_HEADER: &str = "k,n,m,wall_nanos,relax_ops,global_extracts,events_inserted,decrease_keys";

fn bench(a: &BenchArgs, out: &mut (dyn Write + Send)) -> Result<i32, Failure> {
    if a.algo == Algo::Oracle {
        return Err(usage("bench supports --algo fast or randomized"));
    }
    if a.algo != Algo::Randomized && (a.seed.is_some() || a.confidence.is_some()) {
        return Err(usage("--seed and --confidence only apply to --algo randomized"));
    }
    if a.algo != Algo::Fast && a.mode.is_some() {
        return Err(usage("--mode only applies to --algo fast"));
    }
    check_confidence(a.confidence)?;
    if a.ks.is_empty() || a.ks.contains(&0) {
        return Err(usage("--ks must list positive integers"));
    }
    let graph = match &a.input {
        Some(path) => load_graph(path, a.format)?.0,
        None => {
            if a.m > max_edges(a.n) {
                return Err(usage(format!("{} edges do not fit in {} vertices", a.m, a.n)));
            }
            if a.weight_min == 0 || a.weight_min > a.weight_max {
                return Err(usage("weights must satisfy 1 <= --weight-min <= --weight-max"));
            }
            gnm(a.n, a.m, a.weight_min..=a.weight_max, a.graph_seed)
        }
    };
    let mode = a.mode.map_or(Membership::Hashed, Membership::from);
    let io = |e: std::io::Error| input_error(format!("writing csv: {e}"));

    writeln!(out, "{BENCH_HEADER}").map_err(io)?;
    for &k in &a.ks {
        for _ in 0..a.reps {
            let mut stats = RunStats::default();
            let start = Instant::now();
            let table = match a.algo {
                Algo::Fast => knn_all(&graph, k, mode, &mut stats),
                _ => randomized_knn(
                    &graph,
                    k,
                    a.confidence.unwrap_or(DEFAULT_CONFIDENCE),
                    a.seed.unwrap_or(0),
                    &mut stats,
                ),
            };
            let nanos = start.elapsed().as_nanos();
            drop(table);
            writeln!(
                out,
                "{k},{},{},{nanos},{},{},{},{}",
                graph.vertex_count(),
                graph.edge_count(),
                stats.relax_ops,
                stats.global_extracts,
                stats.events_inserted,
                stats.decrease_keys
            )
            .map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_detects_corruption() {
        let good = KnnTable::new(2, vec![vec![NeighborEntry { source: 0, distance: 0.0 }]]);
        let bad = KnnTable::new(2, vec![vec![NeighborEntry { source: 0, distance: 1.0 }]]);
        let mut out = Vec::new();
        assert_eq!(report_verification(&good, &good, &mut out), EXIT_OK);
        out.clear();
        assert_eq!(report_verification(&bad, &good, &mut out), EXIT_MISMATCH);
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("vertex 0 rank 0"), "{text}");
        assert!(text.contains("distance 1") && text.contains("distance 0"), "{text}");
    }

    #[test]
    fn usage_errors_exit_2() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["graph-knn", "compute"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(run(["graph-knn", "compute", "x", "--k", "0"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(run(["graph-knn", "--help"], &mut out, &mut err), EXIT_OK);
    }
}
