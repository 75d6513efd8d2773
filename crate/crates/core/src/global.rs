//! Global minimum cuts.
//!
//! The edge version fixes the root at vertex 0 and runs the rooted solver on
//! G and on its reversal. The vertex version reduces to rooted queries: roots
//! are sampled with probability proportional to their weight relative to the
//! heaviest forward far-away set, each root gets a sparsified copy of G that
//! keeps only edges into the root and edges leaving its backward far-away
//! set, and the best answer among the roots wins. Both G and reverse(G) are
//! tried under a query and edge budget, and the whole procedure is repeated a
//! constant number of times.

use rand::{Rng, RngCore};

use crate::epsilon::Epsilon;
use crate::error::{Error, Result};
use crate::flow::min_st_vertex_cut;
use crate::graph::{CutValue, EdgeCut, Mode, VertexCut, VertexSet, WeightedDigraph};
use crate::rng::{stream, CutRng};
use crate::rooted_edge::{solve_rooted_edge, unreachable_side, RootedOptions, RootedOutcome};
use crate::rooted_vertex::{forbidden_set, solve_rooted_vertex};

/// Default number of outer repetitions of the vertex reduction.
pub const OUTER_REPEATS: usize = 8;

#[derive(Clone, Debug)]
pub struct GlobalEdgeOutcome {
    pub cut: EdgeCut,
    pub direct: RootedOutcome<EdgeCut>,
    /// Result on reverse(G), already translated back to G.
    pub reversed: RootedOutcome<EdgeCut>,
}

pub fn global_min_edge_cut(
    g: &WeightedDigraph,
    eps: Epsilon,
    rng: &mut CutRng,
    repeats: Option<usize>,
) -> Result<EdgeCut> {
    let opts = RootedOptions { repeats, ..Default::default() };
    Ok(solve_global_edge(g, eps, rng, &opts)?.cut)
}

pub fn solve_global_edge(
    g: &WeightedDigraph,
    eps: Epsilon,
    rng: &mut CutRng,
    opts: &RootedOptions,
) -> Result<GlobalEdgeOutcome> {
    g.require(Mode::EdgeWeighted)?;
    if g.n() < 2 {
        return Err(Error::TooSmall);
    }
    let root = 0;
    let master = rng.next_u64();
    let direct = solve_rooted_edge(g, root, eps, &mut stream(master, 0), opts)?;
    let mut reversed = solve_rooted_edge(&g.reverse(), root, eps, &mut stream(master, 1), opts)?;
    let back = &reversed.cut;
    reversed.cut = EdgeCut { x: back.y.clone(), y: back.x.clone(), value: back.value };
    let cut = if reversed.cut.value < direct.cut.value { reversed.cut.clone() } else { direct.cut.clone() };
    Ok(GlobalEdgeOutcome { cut, direct, reversed })
}

/// Far-away set statistics for every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarAwaySets {
    /// w(F+(v)) = w(V) - w({v} and N+(v)).
    pub forward_weight: Vec<CutValue>,
    /// |F-(v)| = n - 1 - |N-(v)|.
    pub backward_size: Vec<usize>,
    /// vol+(F-(v)) = m - vol+({v} and N-(v)).
    pub backward_volume: Vec<u64>,
}

impl FarAwaySets {
    pub fn new(g: &WeightedDigraph) -> Self {
        let total = g.total_vertex_weight();
        let m = g.m() as u64;
        let n = g.n();
        let mut forward_weight = Vec::with_capacity(n);
        let mut backward_size = Vec::with_capacity(n);
        let mut backward_volume = Vec::with_capacity(n);
        for v in 0..n {
            let out = g.out_neighbors(v);
            forward_weight.push(total - g.vertex_weight(v) as CutValue - g.set_weight(&out));
            let inn = g.in_neighbors(v);
            backward_size.push(n - 1 - inn.len());
            backward_volume.push(m - g.out_degree(v) as u64 - g.out_volume(&inn));
        }
        FarAwaySets { forward_weight, backward_size, backward_volume }
    }

    /// F+(v) as an explicit set.
    pub fn forward(g: &WeightedDigraph, v: usize) -> VertexSet {
        g.out_neighbors(v).union(&VertexSet::singleton(v)).complement(g.n())
    }

    /// F-(v) as an explicit set.
    pub fn backward(g: &WeightedDigraph, v: usize) -> VertexSet {
        g.in_neighbors(v).union(&VertexSet::singleton(v)).complement(g.n())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSamplingParams {
    /// w* = max over v of w(F+(v)).
    pub w_star: CutValue,
    pub far: FarAwaySets,
}

impl RootSamplingParams {
    /// min{1, 2 w(y) / w*}.
    pub fn probability(&self, g: &WeightedDigraph, y: usize) -> f64 {
        (2.0 * g.vertex_weight(y) as f64 / self.w_star as f64).min(1.0)
    }

    /// Vertex maximizing w(F+(v)), smallest id on ties.
    pub fn heaviest(&self) -> usize {
        let w = &self.far.forward_weight;
        (0..w.len()).max_by_key(|&v| (w[v], std::cmp::Reverse(v))).expect("non-empty graph")
    }
}

pub fn compute_root_sampling_params(g: &WeightedDigraph) -> Result<RootSamplingParams> {
    g.require(Mode::VertexWeighted)?;
    if g.n() < 2 {
        return Err(Error::TooSmall);
    }
    if g.is_complete() {
        return Err(Error::CompleteGraph);
    }
    let far = FarAwaySets::new(g);
    // zero weights can make every far set weightless; treat that as w* = 0
    let w_star = far.forward_weight.iter().copied().max().unwrap_or(0);
    Ok(RootSamplingParams { w_star, far })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSample {
    /// Final root set; empty after a trim.
    pub roots: Vec<usize>,
    /// Selected roots with a non-empty backward far-away set, before trimming.
    pub selected: Vec<usize>,
    /// Sum of vol+(F-(y)) over `selected`.
    pub far_volume: u64,
    pub trimmed: bool,
}

/// Bernoulli root selection; the whole set is dropped when its far-away
/// volume exceeds 8m.
pub fn sample_roots(g: &WeightedDigraph, params: &RootSamplingParams, rng: &mut CutRng) -> RootSample {
    let mut selected = Vec::new();
    for y in 0..g.n() {
        let twice = 2 * g.vertex_weight(y) as CutValue;
        let hit = params.w_star == 0 || twice >= params.w_star || rng.gen_range(0..params.w_star) < twice;
        if hit && params.far.backward_size[y] > 0 {
            selected.push(y);
        }
    }
    let far_volume: u64 = selected.iter().map(|&y| params.far.backward_volume[y]).sum();
    let trimmed = far_volume > 8 * g.m() as u64;
    let roots = if trimmed { Vec::new() } else { selected.clone() };
    RootSample { roots, selected, far_volume, trimmed }
}

/// G_y: the edges into y together with every edge leaving F-(y).
pub fn build_root_sparsifier(g: &WeightedDigraph, y: usize) -> Result<WeightedDigraph> {
    g.require(Mode::VertexWeighted)?;
    let far = FarAwaySets::backward(g, y);
    if far.is_empty() {
        return Err(Error::EmptyFarSet(y));
    }
    let mask = far.mask(g.n());
    let arcs = g.edges().iter().filter(|e| e.head == y || mask[e.tail]).map(|e| (e.tail, e.head));
    WeightedDigraph::vertex_weighted_nonneg(g.vertex_weights().to_vec(), arcs)
}

/// A rooted minimum vertex cut solver: given a graph and a root, return a
/// vertex cut with the root in R, (1+eps)-approximate with probability at
/// least 1/2.
pub trait RootedVertexOracle: Sync {
    fn query(&self, g: &WeightedDigraph, root: usize, eps: Epsilon, rng: &mut CutRng) -> Result<VertexCut>;
}

impl<F> RootedVertexOracle for F
where
    F: Fn(&WeightedDigraph, usize, Epsilon, &mut CutRng) -> Result<VertexCut> + Sync,
{
    fn query(&self, g: &WeightedDigraph, root: usize, eps: Epsilon, rng: &mut CutRng) -> Result<VertexCut> {
        self(g, root, eps, rng)
    }
}

/// The randomized rooted solver of [`crate::rooted_vertex`].
#[derive(Clone, Copy, Debug, Default)]
pub struct ApproxOracle {
    pub repeats: Option<usize>,
}

impl RootedVertexOracle for ApproxOracle {
    fn query(&self, g: &WeightedDigraph, root: usize, eps: Epsilon, rng: &mut CutRng) -> Result<VertexCut> {
        let opts = RootedOptions { repeats: self.repeats, ..Default::default() };
        Ok(solve_rooted_vertex(g, root, eps, rng, &opts)?.cut)
    }
}

/// Exact rooted solver: one flow per candidate source.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactOracle;

impl RootedVertexOracle for ExactOracle {
    fn query(&self, g: &WeightedDigraph, root: usize, _eps: Epsilon, _rng: &mut CutRng) -> Result<VertexCut> {
        exact_rooted_vertex_cut(g, root)
    }
}

pub fn exact_rooted_vertex_cut(g: &WeightedDigraph, root: usize) -> Result<VertexCut> {
    if let Some(l) = unreachable_side(g, root) {
        let r = l.complement(g.n());
        return VertexCut::from_parts(g, l, VertexSet::new(), r);
    }
    let forbidden = forbidden_set(g, root);
    let mut best: Option<VertexCut> = None;
    for v in (0..g.n()).filter(|&v| !forbidden.contains(v)) {
        let cut = min_st_vertex_cut(g, v, root)?.cut;
        if best.as_ref().is_none_or(|b| cut.value < b.value) {
            best = Some(cut);
        }
    }
    best.ok_or(Error::NoFeasibleCut)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReductionBudget {
    pub max_queries: u64,
    pub max_query_edges: u64,
    pub queries: u64,
    pub query_edges: u64,
}

impl ReductionBudget {
    /// ceil(9m/(n-1)) queries and 9m query edges in total.
    pub fn for_graph(g: &WeightedDigraph) -> Self {
        let m = g.m() as u64;
        let n1 = (g.n() as u64).saturating_sub(1).max(1);
        ReductionBudget { max_queries: (9 * m).div_ceil(n1), max_query_edges: 9 * m, queries: 0, query_edges: 0 }
    }

    /// Charges one query of `edges` edges, or reports that it would not fit.
    pub fn charge(&mut self, edges: u64) -> bool {
        if self.queries + 1 > self.max_queries || self.query_edges + edges > self.max_query_edges {
            return false;
        }
        self.queries += 1;
        self.query_edges += edges;
        true
    }
}

/// One run of the reduction on G or on reverse(G).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionRun {
    pub reversed: bool,
    /// The run's answer, translated to G.
    pub cut: VertexCut,
    pub budget: ReductionBudget,
    /// False when the budget stopped the run or an oracle answer was invalid.
    pub completed: bool,
    pub roots: usize,
    /// True when no root survived sampling and the fallback cut was used.
    pub fallback: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalVertexOutcome {
    pub cut: VertexCut,
    pub runs: Vec<ReductionRun>,
    /// True when a vertex without out-edges answered directly.
    pub shortcut: bool,
}

fn sink_vertex_cut(g: &WeightedDigraph) -> Option<VertexCut> {
    let v = (0..g.n()).find(|&v| g.out_degree(v) == 0)?;
    let r = VertexSet::singleton(v).complement(g.n());
    Some(VertexCut { l: VertexSet::singleton(v), s: VertexSet::new(), r, value: 0 })
}

fn fallback_cut(g: &WeightedDigraph, params: &RootSamplingParams) -> Result<VertexCut> {
    let v = params.heaviest();
    let l = VertexSet::singleton(v);
    let s = g.out_neighbors(v);
    let r = FarAwaySets::forward(g, v);
    VertexCut::from_parts(g, l, s, r)
}

/// One budgeted run of the reduction on `g` itself.
pub fn reduction_run(
    g: &WeightedDigraph,
    eps: Epsilon,
    oracle: &dyn RootedVertexOracle,
    rng: &mut CutRng,
) -> Result<(VertexCut, ReductionBudget, bool, usize, bool)> {
    let mut budget = ReductionBudget::for_graph(g);
    if let Some(cut) = sink_vertex_cut(g) {
        return Ok((cut, budget, true, 0, false));
    }
    let params = compute_root_sampling_params(g)?;
    let sample = sample_roots(g, &params, rng);
    if sample.roots.is_empty() {
        return Ok((fallback_cut(g, &params)?, budget, true, 0, true));
    }
    let mut best: Option<VertexCut> = None;
    for &y in &sample.roots {
        let gy = build_root_sparsifier(g, y)?;
        if !budget.charge(gy.m() as u64) {
            return Ok((fallback_cut(g, &params)?, budget, false, sample.roots.len(), false));
        }
        let answer = oracle.query(&gy, y, eps, rng)?;
        let cut = match VertexCut::from_parts(g, answer.l, answer.s, answer.r) {
            Ok(c) if c.r.contains(y) => c,
            _ => return Ok((fallback_cut(g, &params)?, budget, false, sample.roots.len(), false)),
        };
        if best.as_ref().is_none_or(|b| cut.value < b.value) {
            best = Some(cut);
        }
    }
    Ok((best.expect("at least one root"), budget, true, sample.roots.len(), false))
}

pub fn global_min_vertex_cut(
    g: &WeightedDigraph,
    eps: Epsilon,
    oracle: &dyn RootedVertexOracle,
    rng: &mut CutRng,
) -> Result<VertexCut> {
    Ok(solve_global_vertex(g, eps, oracle, rng, OUTER_REPEATS)?.cut)
}

pub fn solve_global_vertex(
    g: &WeightedDigraph,
    eps: Epsilon,
    oracle: &dyn RootedVertexOracle,
    rng: &mut CutRng,
    outer_repeats: usize,
) -> Result<GlobalVertexOutcome> {
    g.require(Mode::VertexWeighted)?;
    if g.n() < 2 {
        return Err(Error::TooSmall);
    }
    if g.is_complete() {
        return Err(Error::CompleteGraph);
    }
    if let Some(cut) = sink_vertex_cut(g) {
        return Ok(GlobalVertexOutcome { cut, runs: Vec::new(), shortcut: true });
    }
    let rev = g.reverse();
    let master = rng.next_u64();
    let mut runs = Vec::with_capacity(2 * outer_repeats);
    for k in 0..outer_repeats.max(1) {
        for (reversed, graph) in [(false, g), (true, &rev)] {
            let mut r = stream(master, 2 * k as u64 + reversed as u64);
            let (cut, budget, completed, roots, fallback) = reduction_run(graph, eps, oracle, &mut r)?;
            let cut = if reversed { VertexCut { l: cut.r, s: cut.s, r: cut.l, value: cut.value } } else { cut };
            cut.validate(g)?;
            runs.push(ReductionRun { reversed, cut, budget, completed, roots, fallback });
        }
    }
    let best = runs
        .iter()
        .enumerate()
        .min_by_key(|(i, run)| (run.cut.value, *i))
        .map(|(_, run)| run.cut.clone())
        .expect("at least one run");
    Ok(GlobalVertexOutcome { cut: best, runs, shortcut: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn four_cycle() -> WeightedDigraph {
        WeightedDigraph::vertex_weighted(vec![1, 2, 3, 4], [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn sampling_params() {
        let g = four_cycle();
        let p = compute_root_sampling_params(&g).unwrap();
        assert_eq!(p.far.forward_weight, vec![7, 5, 3, 5]);
        assert_eq!(p.w_star, 7);
        assert_eq!(p.probability(&g, 3), 1.0);
        let k3 = WeightedDigraph::vertex_weighted(vec![1; 3], [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)]).unwrap();
        assert_eq!(compute_root_sampling_params(&k3).unwrap_err(), Error::CompleteGraph);
    }

    #[test]
    fn root_sparsifier() {
        let g = four_cycle();
        let ga = build_root_sparsifier(&g, 0).unwrap();
        let mut es: Vec<_> = ga.edges().iter().map(|e| (e.tail, e.head)).collect();
        es.sort();
        assert_eq!(es, vec![(1, 2), (2, 3), (3, 0)]);
        let k3 = WeightedDigraph::vertex_weighted(vec![1; 3], [(0, 1), (1, 0), (0, 2), (2, 0)]).unwrap();
        assert_eq!(build_root_sparsifier(&k3, 0).unwrap_err(), Error::EmptyFarSet(0));
    }

    #[test]
    fn trim_and_full_selection() {
        let g = four_cycle();
        let p = compute_root_sampling_params(&g).unwrap();
        // probabilities are 2/7, 4/7, 6/7, 1; with everything selected the far
        // volume is 4 * 2 = 8 <= 32
        let mut rng = seeded(3);
        let mut seen_all = false;
        for _ in 0..200 {
            let s = sample_roots(&g, &p, &mut rng);
            assert!(!s.trimmed);
            assert!(s.roots.contains(&3));
            seen_all |= s.roots.len() == 4;
        }
        assert!(seen_all);
    }

    #[test]
    fn global_edge_examples() {
        let tri = WeightedDigraph::edge_weighted(3, [(0, 1, 1), (1, 2, 2), (2, 0, 3)]).unwrap();
        let eps = Epsilon::new(1, 4).unwrap();
        let out = solve_global_edge(&tri, eps, &mut seeded(1), &Default::default()).unwrap();
        assert_eq!(out.cut.value, 1);
        assert_eq!(out.direct.cut.value, 2);
        assert_eq!(out.reversed.cut.value, 1);
        out.cut.validate(&tri).unwrap();
        let anti = WeightedDigraph::edge_weighted(2, [(0, 1, 7), (1, 0, 9)]).unwrap();
        assert_eq!(global_min_edge_cut(&anti, eps, &mut seeded(1), None).unwrap().value, 7);
    }

    #[test]
    fn global_vertex_examples() {
        let path = WeightedDigraph::vertex_weighted(vec![1, 1, 1], [(0, 1), (1, 2)]).unwrap();
        let cut = global_min_vertex_cut(&path, Epsilon::zero(), &ExactOracle, &mut seeded(0)).unwrap();
        assert_eq!((cut.l, cut.value), (VertexSet::singleton(2), 0));
        let cut = global_min_vertex_cut(&four_cycle(), Epsilon::zero(), &ExactOracle, &mut seeded(0)).unwrap();
        assert_eq!(cut.value, 1);
        let cut = global_min_vertex_cut(&four_cycle(), Epsilon::new(1, 4).unwrap(), &ApproxOracle::default(), &mut seeded(0))
            .unwrap();
        assert_eq!(cut.value, 1);
        let k3 = WeightedDigraph::vertex_weighted(vec![1; 3], [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)]).unwrap();
        assert_eq!(
            global_min_vertex_cut(&k3, Epsilon::zero(), &ExactOracle, &mut seeded(0)).unwrap_err(),
            Error::CompleteGraph
        );
    }
}
