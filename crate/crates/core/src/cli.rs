//! Command-line entry points.
//!
//! Exit codes: 0 on success, 2 when the input violates a precondition of the
//! requested problem (for example a complete graph for vertex-global), 1 on
//! parse and usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::bench::{run_bench, BenchSpec, Family};
use crate::brute::{brute_min_cut, CutKind, DistinguishedCut};
use crate::epsilon::Epsilon;
use crate::error::{Error, Result};
use crate::global::{solve_global_edge, solve_global_vertex, ApproxOracle, OUTER_REPEATS};
use crate::graph::{CutValue, EdgeCut, VertexCut};
use crate::io::{parse_graph, validate_record, BudgetStats, GraphFile, Label, ResultRecord, Sides};
use crate::rng::seeded;
use crate::rooted_edge::{solve_rooted_edge, Injection, RootedOptions};
use crate::rooted_vertex::solve_rooted_vertex;

#[derive(Parser, Debug)]
#[command(name = "dicut", version, about = "Approximate minimum cuts in weighted digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Global minimum edge cut.
    EdgeGlobal(SolveArgs),
    /// Minimum edge cut with the root on the sink side.
    EdgeRooted(SolveArgs),
    /// Global minimum vertex cut.
    VertexGlobal(SolveArgs),
    /// Minimum vertex cut with the root in R.
    VertexRooted(SolveArgs),
    /// Exact answer by exhaustive search (small graphs only).
    Brute(BruteArgs),
    /// Random-instance benchmark, written as CSV.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Graph file.
    graph: PathBuf,
    #[arg(long)]
    root: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    allow_zero_weights: bool,
    /// Pretty-print the JSON record.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, default_value = "1/4")]
    epsilon: String,
    /// Trials per rooted solve.
    #[arg(long)]
    repeats: Option<usize>,
    /// JSON file with optEstimate, nu and terminals for a single trial.
    #[arg(long)]
    inject: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BruteArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, value_enum)]
    kind: KindArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    EdgeGlobal,
    EdgeRooted,
    VertexGlobal,
    VertexRooted,
}

impl From<KindArg> for CutKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::EdgeGlobal => CutKind::EdgeGlobal,
            KindArg::EdgeRooted => CutKind::EdgeRooted,
            KindArg::VertexGlobal => CutKind::VertexGlobal,
            KindArg::VertexRooted => CutKind::VertexRooted,
        }
    }
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, value_enum, default_value = "er")]
    family: Family,
    #[arg(long, value_enum, default_value = "edge-rooted")]
    problem: KindArg,
    /// Comma-separated vertex counts; empty gives an empty report.
    #[arg(long, value_parser = parse_sizes, default_value = "")]
    sizes: Sizes,
    #[arg(long, value_delimiter = ',', default_value = "1/4")]
    epsilons: Vec<String>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 16)]
    max_weight: u64,
    #[arg(long)]
    repeats: Option<usize>,
    /// Fill the wall_ms column (makes the report machine dependent).
    #[arg(long)]
    timing: bool,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct InjectFile {
    opt_estimate: u128,
    nu: u64,
    terminals: Vec<Label>,
}

/// Runs the CLI with process stdout and stderr.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    run_command_with(argv, &mut out, &mut err)
}

pub fn run_command_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_infeasible() {
                2
            } else {
                1
            }
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let (record, pretty) = match cmd {
        Command::EdgeGlobal(a) => solve(CutKind::EdgeGlobal, &a)?,
        Command::EdgeRooted(a) => solve(CutKind::EdgeRooted, &a)?,
        Command::VertexGlobal(a) => solve(CutKind::VertexGlobal, &a)?,
        Command::VertexRooted(a) => solve(CutKind::VertexRooted, &a)?,
        Command::Brute(a) => brute(&a)?,
        Command::Bench(a) => return bench(&a, out, err),
    };
    emit(&record, pretty, out)
}

fn emit(record: &ResultRecord, pretty: bool, out: &mut dyn Write) -> Result<()> {
    let text = if pretty { serde_json::to_string_pretty(record) } else { serde_json::to_string(record) }
        .map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| Error::Io(e.to_string()))
}

fn kind_name(kind: CutKind) -> &'static str {
    match kind {
        CutKind::EdgeGlobal => "edge-global",
        CutKind::EdgeRooted => "edge-rooted",
        CutKind::VertexGlobal => "vertex-global",
        CutKind::VertexRooted => "vertex-rooted",
    }
}

fn resolve(file: &GraphFile, label: &str) -> Result<usize> {
    file.id_of(label).ok_or_else(|| Error::Parse { line: 0, msg: format!("unknown vertex `{label}`") })
}

fn root_of(file: &GraphFile, common: &CommonArgs) -> Result<usize> {
    let label = common.root.as_deref().ok_or(Error::MissingArgument("--root"))?;
    resolve(file, label)
}

fn read_injection(path: &Path, file: &GraphFile) -> Result<Injection> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let raw: InjectFile = serde_json::from_str(&text).map_err(|e| Error::BadInjection(e.to_string()))?;
    let terminals = raw.terminals.iter().map(|l| resolve(file, &l.text())).collect::<Result<Vec<_>>>()?;
    Ok(Injection { opt_estimate: raw.opt_estimate, nu: raw.nu, terminals })
}

struct Solved {
    sides: Sides,
    value: CutValue,
    repeats: usize,
    trial_stats: Vec<CutValue>,
    budget: BudgetStats,
}

fn edge_solved(file: &GraphFile, cut: EdgeCut, repeats: usize, trial_stats: Vec<CutValue>) -> Result<Solved> {
    let cut = EdgeCut::from_source_side(&file.original, cut.x)?;
    Ok(Solved { sides: Sides::edge(&cut, &file.labels), value: cut.value, repeats, trial_stats, budget: BudgetStats::default() })
}

fn vertex_original(file: &GraphFile, cut: VertexCut) -> Result<VertexCut> {
    VertexCut::from_parts(&file.original, cut.l, cut.s, cut.r)
}

fn solve(kind: CutKind, a: &SolveArgs) -> Result<(ResultRecord, bool)> {
    let eps: Epsilon = a.epsilon.parse()?;
    let file = parse_graph(&a.common.graph, a.common.allow_zero_weights)?;
    let g = &file.graph;
    // lifted vertex weights cost a factor (1 + eps/2) on top of the solver's
    let inner_eps = if file.lifted { eps.halved()? } else { eps };
    let mut rng = seeded(a.common.seed);
    let injection = match &a.inject {
        Some(p) if matches!(kind, CutKind::EdgeRooted | CutKind::VertexRooted) => Some(read_injection(p, &file)?),
        Some(_) => return Err(Error::BadInjection("injection applies to rooted commands only".into())),
        None => None,
    };
    let opts = RootedOptions { repeats: a.repeats, injection, no_rescale: false };
    let solved = match kind {
        CutKind::EdgeGlobal => {
            let out = solve_global_edge(g, inner_eps, &mut rng, &opts)?;
            let trials = out.direct.trial_values.iter().chain(&out.reversed.trial_values).copied().collect();
            edge_solved(&file, out.cut, out.direct.repeats + out.reversed.repeats, trials)?
        }
        CutKind::EdgeRooted => {
            let root = root_of(&file, &a.common)?;
            let out = solve_rooted_edge(g, root, inner_eps, &mut rng, &opts)?;
            edge_solved(&file, out.cut, out.repeats, out.trial_values)?
        }
        CutKind::VertexRooted => {
            let root = root_of(&file, &a.common)?;
            let out = solve_rooted_vertex(g, root, inner_eps, &mut rng, &opts)?;
            let cut = vertex_original(&file, out.cut)?;
            Solved {
                sides: Sides::vertex(&cut, &file.labels),
                value: cut.value,
                repeats: out.repeats,
                trial_stats: out.trial_values,
                budget: BudgetStats::default(),
            }
        }
        CutKind::VertexGlobal => {
            let oracle = ApproxOracle { repeats: a.repeats };
            let out = solve_global_vertex(g, inner_eps, &oracle, &mut rng, OUTER_REPEATS)?;
            let budget = BudgetStats {
                queries: out.runs.iter().map(|r| r.budget.queries).sum(),
                query_edges: out.runs.iter().map(|r| r.budget.query_edges).sum(),
            };
            let cut = vertex_original(&file, out.cut)?;
            Solved {
                sides: Sides::vertex(&cut, &file.labels),
                value: cut.value,
                repeats: out.runs.len(),
                trial_stats: out.runs.iter().map(|r| r.cut.value).collect(),
                budget,
            }
        }
    };
    let record = ResultRecord {
        kind: kind_name(kind).to_string(),
        value: solved.value,
        sides: solved.sides,
        epsilon: eps.to_string(),
        seed: a.common.seed,
        repeats: solved.repeats,
        trial_stats: solved.trial_stats,
        budget_stats: solved.budget,
    };
    validate_record(&record, &file)?;
    Ok((record, a.common.json))
}

fn brute(a: &BruteArgs) -> Result<(ResultRecord, bool)> {
    let file = parse_graph(&a.common.graph, a.common.allow_zero_weights)?;
    let kind = CutKind::from(a.kind);
    let root = match kind {
        CutKind::EdgeRooted | CutKind::VertexRooted => Some(root_of(&file, &a.common)?),
        _ => None,
    };
    let (sides, value) = match brute_min_cut(&file.original, kind, root)? {
        DistinguishedCut::Edge(c) => (Sides::edge(&c, &file.labels), c.value),
        DistinguishedCut::Vertex(c) => (Sides::vertex(&c, &file.labels), c.value),
    };
    let record = ResultRecord {
        kind: format!("brute-{}", kind_name(kind)),
        value,
        sides,
        epsilon: Epsilon::zero().to_string(),
        seed: a.common.seed,
        repeats: 0,
        trial_stats: Vec::new(),
        budget_stats: BudgetStats::default(),
    };
    validate_record(&record, &file)?;
    Ok((record, a.common.json))
}

#[derive(Clone, Debug)]
struct Sizes(Vec<usize>);

fn parse_sizes(text: &str) -> std::result::Result<Sizes, String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|e| format!("bad size {s:?}: {e}")))
        .collect::<std::result::Result<_, _>>()
        .map(Sizes)
}

fn bench(a: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let epsilons = a.epsilons.iter().map(|s| s.parse()).collect::<Result<Vec<Epsilon>>>()?;
    let spec = BenchSpec {
        family: a.family,
        problem: a.problem.into(),
        sizes: a.sizes.0.clone(),
        epsilons,
        trials: a.trials,
        seed: a.seed,
        max_weight: a.max_weight,
        repeats: a.repeats,
        timing: a.timing,
    };
    let report = run_bench(&spec)?;
    let csv = report.to_csv()?;
    match &a.out {
        Some(p) => std::fs::write(p, &csv).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        None => out.write_all(csv.as_bytes()).map_err(|e| Error::Io(e.to_string()))?,
    }
    for line in report.summary() {
        writeln!(err, "{line}").map_err(|e| Error::Io(e.to_string()))?;
    }
    Ok(())
}
