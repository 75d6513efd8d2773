//! Random-instance benchmark harness.
//!
//! Instances are drawn from a per-instance stream of the master seed and
//! solved in parallel; rows come out in instance order, so the report depends
//! only on the spec (wall times excepted, which are left blank unless
//! requested).

use std::time::Instant;

use clap::ValueEnum;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::brute::{brute_min_cut, CutKind, EDGE_LIMIT, VERTEX_LIMIT};
use crate::epsilon::Epsilon;
use crate::error::{Error, Result};
use crate::global::{solve_global_edge, solve_global_vertex, ApproxOracle, OUTER_REPEATS};
use crate::graph::{CutValue, Weight, WeightedDigraph, MAX_WEIGHT};
use crate::rng::{stream, CutRng};
use crate::rooted_edge::{solve_rooted_edge, RootedOptions};
use crate::rooted_vertex::solve_rooted_vertex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Each ordered pair is an edge independently, plus a Hamiltonian cycle.
    Er,
    /// Layers of about sqrt(n) vertices with edges to the next layer only.
    Layered,
    /// A directed cycle plus n random chords.
    Chords,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Er => "er",
            Family::Layered => "layered",
            Family::Chords => "chords",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchSpec {
    pub family: Family,
    pub problem: CutKind,
    pub sizes: Vec<usize>,
    pub epsilons: Vec<Epsilon>,
    pub trials: usize,
    pub seed: u64,
    pub max_weight: Weight,
    pub repeats: Option<usize>,
    pub timing: bool,
}

/// Arcs of a random instance of `family` on `n` vertices, without weights.
pub fn family_arcs(family: Family, n: usize, rng: &mut CutRng) -> Vec<(usize, usize)> {
    let mut arcs = Vec::new();
    if n < 2 {
        return arcs;
    }
    match family {
        Family::Er => {
            let p = (3.0 / (n - 1) as f64).min(0.5);
            for u in 0..n {
                arcs.push((u, (u + 1) % n));
                for v in (0..n).filter(|&v| v != u && v != (u + 1) % n) {
                    if rng.gen_bool(p) {
                        arcs.push((u, v));
                    }
                }
            }
        }
        Family::Layered => {
            let width = ((n as f64).sqrt().round() as usize).max(1);
            let layer = |v: usize| v / width;
            for u in 0..n {
                let next: Vec<usize> = (0..n).filter(|&v| layer(v) == layer(u) + 1).collect();
                if next.is_empty() {
                    continue;
                }
                let forced = *next.choose(rng).expect("non-empty");
                for &v in &next {
                    if v == forced || rng.gen_bool(0.5) {
                        arcs.push((u, v));
                    }
                }
            }
        }
        Family::Chords => {
            for u in 0..n {
                arcs.push((u, (u + 1) % n));
            }
            for _ in 0..n {
                let u = rng.gen_range(0..n);
                let v = rng.gen_range(0..n);
                if u != v {
                    arcs.push((u, v));
                }
            }
        }
    }
    arcs
}

/// A weighted random instance for `problem`.
pub fn random_instance(
    family: Family,
    problem: CutKind,
    n: usize,
    max_weight: Weight,
    rng: &mut CutRng,
) -> Result<WeightedDigraph> {
    if max_weight == 0 || max_weight > MAX_WEIGHT {
        return Err(Error::WeightOutOfRange { weight: max_weight, line: None });
    }
    let arcs = family_arcs(family, n, rng);
    match problem {
        CutKind::EdgeGlobal | CutKind::EdgeRooted => {
            let edges: Vec<_> = arcs.into_iter().map(|(u, v)| (u, v, rng.gen_range(1..=max_weight))).collect();
            WeightedDigraph::edge_weighted(n, edges)
        }
        CutKind::VertexGlobal | CutKind::VertexRooted => {
            let weights = (0..n).map(|_| rng.gen_range(1..=max_weight)).collect();
            WeightedDigraph::vertex_weighted(weights, arcs)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub instance: usize,
    pub family: &'static str,
    pub problem: &'static str,
    pub n: usize,
    pub m: usize,
    pub epsilon: String,
    pub trial: usize,
    pub status: &'static str,
    pub opt: Option<CutValue>,
    pub value: Option<CutValue>,
    pub ratio: Option<String>,
    pub success: Option<bool>,
    pub wall_ms: Option<String>,
    pub queries: u64,
    pub query_edges: u64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

fn problem_name(kind: CutKind) -> &'static str {
    match kind {
        CutKind::EdgeGlobal => "edge-global",
        CutKind::EdgeRooted => "edge-rooted",
        CutKind::VertexGlobal => "vertex-global",
        CutKind::VertexRooted => "vertex-rooted",
    }
}

struct Solution {
    value: CutValue,
    queries: u64,
    query_edges: u64,
}

fn solve_once(g: &WeightedDigraph, spec: &BenchSpec, eps: Epsilon, rng: &mut CutRng) -> Result<Solution> {
    let opts = RootedOptions { repeats: spec.repeats, ..Default::default() };
    let root = g.n() - 1;
    let plain = |value| Solution { value, queries: 0, query_edges: 0 };
    Ok(match spec.problem {
        CutKind::EdgeGlobal => plain(solve_global_edge(g, eps, rng, &opts)?.cut.value),
        CutKind::EdgeRooted => plain(solve_rooted_edge(g, root, eps, rng, &opts)?.cut.value),
        CutKind::VertexRooted => plain(solve_rooted_vertex(g, root, eps, rng, &opts)?.cut.value),
        CutKind::VertexGlobal => {
            let oracle = ApproxOracle { repeats: spec.repeats };
            let out = solve_global_vertex(g, eps, &oracle, rng, OUTER_REPEATS)?;
            Solution {
                value: out.cut.value,
                queries: out.runs.iter().map(|r| r.budget.queries).sum(),
                query_edges: out.runs.iter().map(|r| r.budget.query_edges).sum(),
            }
        }
    })
}

fn ratio(value: CutValue, opt: CutValue) -> String {
    if opt == 0 {
        if value == 0 { "1.000000".into() } else { "inf".into() }
    } else {
        format!("{:.6}", value as f64 / opt as f64)
    }
}

pub fn run_bench(spec: &BenchSpec) -> Result<BenchReport> {
    if spec.epsilons.iter().any(|e| !e.in_open_unit_interval()) {
        return Err(Error::BadEpsilon("bench epsilons must lie in (0, 1)".into()));
    }
    let mut jobs = Vec::new();
    for &n in &spec.sizes {
        for &eps in &spec.epsilons {
            for trial in 0..spec.trials {
                jobs.push((jobs.len(), n, eps, trial));
            }
        }
    }
    let limit = match spec.problem {
        CutKind::EdgeGlobal | CutKind::EdgeRooted => EDGE_LIMIT,
        CutKind::VertexGlobal | CutKind::VertexRooted => VERTEX_LIMIT,
    };
    let rows = jobs
        .into_par_iter()
        .map(|(instance, n, eps, trial)| -> Result<BenchRow> {
            let mut rng = stream(spec.seed, instance as u64);
            let g = random_instance(spec.family, spec.problem, n, spec.max_weight, &mut rng)?;
            let root = Some(n.saturating_sub(1));
            let opt = if n <= limit { brute_min_cut(&g, spec.problem, root).ok().map(|c| c.value()) } else { None };
            let start = Instant::now();
            let solved = solve_once(&g, spec, eps, &mut rng);
            let wall = start.elapsed();
            let mut row = BenchRow {
                instance,
                family: spec.family.name(),
                problem: problem_name(spec.problem),
                n,
                m: g.m(),
                epsilon: eps.to_string(),
                trial,
                status: "ok",
                opt,
                value: None,
                ratio: None,
                success: None,
                wall_ms: spec.timing.then(|| format!("{:.3}", wall.as_secs_f64() * 1e3)),
                queries: 0,
                query_edges: 0,
            };
            match solved {
                Ok(s) => {
                    row.value = Some(s.value);
                    row.queries = s.queries;
                    row.query_edges = s.query_edges;
                    if let Some(opt) = opt {
                        row.ratio = Some(ratio(s.value, opt));
                        row.success = Some(eps.within(s.value, opt));
                    }
                }
                Err(e) if e.is_infeasible() => row.status = "infeasible",
                Err(e) => return Err(e),
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BenchReport { rows })
}

impl BenchReport {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        if self.rows.is_empty() {
            w.write_record([
                "instance", "family", "problem", "n", "m", "epsilon", "trial", "status", "opt", "value", "ratio",
                "success", "wall_ms", "queries", "query_edges",
            ])
            .map_err(|e| Error::Io(e.to_string()))?;
        }
        for row in &self.rows {
            w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    /// Success rate per (n, epsilon) over the rows with a known optimum.
    pub fn summary(&self) -> Vec<String> {
        let mut groups: Vec<(usize, String, usize, usize)> = Vec::new();
        for row in &self.rows {
            let Some(ok) = row.success else { continue };
            let at = match groups.iter().position(|g| g.0 == row.n && g.1 == row.epsilon) {
                Some(i) => i,
                None => {
                    groups.push((row.n, row.epsilon.clone(), 0, 0));
                    groups.len() - 1
                }
            };
            groups[at].2 += ok as usize;
            groups[at].3 += 1;
        }
        groups
            .into_iter()
            .map(|(n, eps, ok, total)| {
                format!("n={n} epsilon={eps} success={ok}/{total} rate={:.4}", ok as f64 / total as f64)
            })
            .collect()
    }
}
