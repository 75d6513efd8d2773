//! Rooted minimum edge cut: find (X, Y) with the root in Y minimizing
//! w(E(X, Y)), to within a factor 1 + eps with high probability.
//!
//! One trial guesses OPT and the source-side out-volume, samples terminals,
//! and walks the batch hierarchy. Every batch below the first level gets a
//! sparsifier obtained by contracting everything outside a core set into the
//! root, where the core set is the source side of a minimum cut in a
//! penalized copy of the parent sparsifier. At the bottom, every terminal is
//! measured in its own sparsifier and the best one is cut exactly in G.

use rand::RngCore;
use rayon::prelude::*;

use crate::epsilon::Epsilon;
use crate::error::{Error, Result};
use crate::flow::{edge_connectivity, min_cut_arcs, min_st_edge_cut, CutSide};
use crate::graph::{CutValue, EdgeCut, Mode, VertexSet, Weight, WeightedDigraph};
use crate::rescale::{solve_with_rescale, InnerSolver};
use crate::rng::{stream, CutRng};
use crate::sampling::{
    build_batch_hierarchy, guess_estimates, pick_terminals, EstimateContext, EstimateMode,
};

/// Above this maximum weight the rescaling reduction is used.
pub const RESCALE_THRESHOLD: Weight = 1 << 20;

/// 64 * ceil(log2(mW)^2), at least 64.
pub fn default_repeats(m: usize, max_weight: Weight) -> usize {
    let mw = (m as f64 * max_weight as f64).max(2.0);
    let l = mw.log2();
    64 * (l * l).ceil().max(1.0) as usize
}

/// Index of `v` in the sorted list `vertices`.
pub(crate) fn local_index(vertices: &[usize], v: usize) -> Option<usize> {
    vertices.binary_search(&v).ok()
}

/// A sparsifier G_B for one batch, on local ids `0..vertices.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsifierBundle {
    pub graph: WeightedDigraph,
    /// Local id -> id in G, ascending.
    pub vertices: Vec<usize>,
    /// Local id of the root.
    pub root: usize,
    pub level: usize,
    pub batch: Vec<usize>,
    pub batch_index: usize,
    pub parent_index: Option<usize>,
    /// A_B in G ids followed by the root.
    pub core_set: Vec<usize>,
}

impl SparsifierBundle {
    /// The level-1 bundle: G itself.
    pub fn whole(g: &WeightedDigraph, ystar: usize, batch: Vec<usize>, batch_index: usize) -> Self {
        let mut core_set: Vec<usize> = (0..g.n()).filter(|&v| v != ystar).collect();
        core_set.push(ystar);
        SparsifierBundle {
            graph: g.clone(),
            vertices: (0..g.n()).collect(),
            root: ystar,
            level: 1,
            batch,
            batch_index,
            parent_index: None,
            core_set,
        }
    }

    pub fn local(&self, v: usize) -> Option<usize> {
        local_index(&self.vertices, v)
    }

    pub fn root_global(&self) -> usize {
        self.vertices[self.root]
    }

    /// Maps a set of local ids to G ids.
    pub fn to_global(&self, local: &VertexSet) -> VertexSet {
        local.iter().map(|v| self.vertices[v]).collect()
    }
}

/// The parent sparsifier plus a super-source and penalty edges into the
/// root, with every capacity multiplied by `scale` to make it integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PenalizedGraph {
    /// Parent's local ids, then the super-source.
    pub num_vertices: usize,
    pub arcs: Vec<(usize, usize, u128)>,
    pub source: usize,
    pub sink: usize,
    pub scale: u128,
    /// (local vertex, capacity of its edge to the root).
    pub penalty_edges: Vec<(usize, u128)>,
    /// (local terminal, capacity of the edge from the super-source).
    pub source_edges: Vec<(usize, u128)>,
    /// Local id -> id in G for the parent's vertices.
    pub vertices: Vec<usize>,
}

/// scale = z * 2nu * q; penalty numerator p * OPT-hat, so a vertex of degree
/// d gets penalty capacity p * OPT-hat * d in scaled units.
pub(crate) fn scaled_units(ctx: &EstimateContext, eps: Epsilon) -> Result<(u128, u128, u128)> {
    let z = ctx.z.max(1) as u128;
    let scale = z
        .checked_mul(2 * ctx.nu as u128)
        .and_then(|x| x.checked_mul(eps.den() as u128))
        .ok_or(Error::Overflow)?;
    let per_degree = (eps.num() as u128).checked_mul(ctx.opt_estimate).ok_or(Error::Overflow)?;
    let source_cap = ctx
        .opt_estimate
        .checked_mul(4)
        .and_then(|x| x.checked_mul(scale))
        .ok_or(Error::Overflow)?;
    Ok((scale, per_degree, source_cap))
}

pub fn build_penalized_graph_edge(
    g: &WeightedDigraph,
    parent: &SparsifierBundle,
    batch: &[usize],
    ctx: &EstimateContext,
    eps: Epsilon,
) -> Result<PenalizedGraph> {
    let (scale, per_degree, source_cap) = scaled_units(ctx, eps)?;
    let np = parent.vertices.len();
    let source = np;
    let sink = parent.root;
    let mut arcs = Vec::with_capacity(parent.graph.m() + 2 * np);
    for e in parent.graph.edges() {
        let cap = (e.weight as u128).checked_mul(scale).ok_or(Error::Overflow)?;
        arcs.push((e.tail, e.head, cap));
    }
    let mut penalty_edges = Vec::new();
    for v in 0..np {
        let deg = g.out_degree(parent.vertices[v]) as u128;
        if v != sink && deg > 0 {
            let cap = per_degree.checked_mul(deg).ok_or(Error::Overflow)?;
            penalty_edges.push((v, cap));
            arcs.push((v, sink, cap));
        }
    }
    let mut source_edges = Vec::new();
    for &x in batch {
        if let Some(lx) = parent.local(x) {
            if lx != sink {
                source_edges.push((lx, source_cap));
                arcs.push((source, lx, source_cap));
            }
        }
    }
    Ok(PenalizedGraph {
        num_vertices: np + 1,
        arcs,
        source,
        sink,
        scale,
        penalty_edges,
        source_edges,
        vertices: parent.vertices.clone(),
    })
}

/// A core set A_B (G ids, ascending) and the penalized cut value it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreSet {
    pub members: Vec<usize>,
    pub cut_value: u128,
}

/// Source side of the source-maximal minimum s-root cut of H, minus s.
pub fn extract_core_set_edge(h: &PenalizedGraph) -> Result<CoreSet> {
    if h.source_edges.is_empty() {
        return Ok(CoreSet { members: Vec::new(), cut_value: 0 });
    }
    let cut = min_cut_arcs(h.num_vertices, &h.arcs, h.source, h.sink, CutSide::SourceMaximal)?;
    let members = (0..h.num_vertices)
        .filter(|&v| v != h.source && cut.source_side[v])
        .map(|v| h.vertices[v])
        .collect();
    Ok(CoreSet { members, cut_value: cut.value })
}

/// Merges every vertex outside `core` into the root, dropping self-loops and
/// edges leaving the merged root. Returns the contracted graph and its
/// local-to-global vertex list.
pub fn contract_beyond(g: &WeightedDigraph, core: &[usize], ystar: usize) -> Result<(WeightedDigraph, Vec<usize>)> {
    let mut vertices: Vec<usize> = core.to_vec();
    vertices.push(ystar);
    vertices.sort_unstable();
    vertices.dedup();
    let root = local_index(&vertices, ystar).expect("root was inserted");
    let mut edges = Vec::with_capacity(g.out_volume(&VertexSet::from(core.to_vec())) as usize);
    for &u in core {
        let lu = local_index(&vertices, u).expect("core member");
        for &e in g.out_edges(u) {
            let edge = g.edge(e);
            let lh = local_index(&vertices, edge.head).unwrap_or(root);
            edges.push((lu, lh, edge.weight));
        }
    }
    Ok((WeightedDigraph::edge_weighted_nonneg(vertices.len(), edges)?, vertices))
}

#[allow(clippy::too_many_arguments)]
pub fn approx_sparsify_edge(
    level: usize,
    batch: &[usize],
    batch_index: usize,
    ctx: &EstimateContext,
    eps: Epsilon,
    g: &WeightedDigraph,
    ystar: usize,
    parent: Option<(&SparsifierBundle, usize)>,
) -> Result<SparsifierBundle> {
    if level <= 1 {
        return Ok(SparsifierBundle::whole(g, ystar, batch.to_vec(), batch_index));
    }
    let (parent, parent_index) = parent.ok_or(Error::MissingParent)?;
    let h = build_penalized_graph_edge(g, parent, batch, ctx, eps)?;
    let core = extract_core_set_edge(&h)?;
    let (graph, vertices) = contract_beyond(g, &core.members, ystar)?;
    let root = local_index(&vertices, ystar).expect("root kept");
    let mut core_set = core.members;
    core_set.push(ystar);
    Ok(SparsifierBundle {
        graph,
        vertices,
        root,
        level,
        batch: batch.to_vec(),
        batch_index,
        parent_index: Some(parent_index),
        core_set,
    })
}

/// Callback receiving every bundle a trial builds.
pub type EdgeObserver<'a> = &'a (dyn Fn(&SparsifierBundle) + Sync);

/// One trial with fixed estimates and terminals.
pub fn run_edge_trial(
    g: &WeightedDigraph,
    ystar: usize,
    eps: Epsilon,
    ctx: &EstimateContext,
    observer: Option<EdgeObserver<'_>>,
) -> Result<EdgeCut> {
    let hierarchy = build_batch_hierarchy(&ctx.terminals.terminals)?;
    let z = hierarchy.z as usize;
    let mut current: Vec<SparsifierBundle> = Vec::new();
    if z == 0 {
        let mut b = SparsifierBundle::whole(g, ystar, ctx.terminals.terminals.clone(), 0);
        b.level = 0;
        current.push(b);
    }
    for i in 1..=z {
        let next = hierarchy
            .level(i)
            .iter()
            .enumerate()
            .map(|(k, batch)| {
                let parent = batch.parent.filter(|_| i > 1).map(|p| (&current[p], p));
                approx_sparsify_edge(i, &batch.terminals, k, ctx, eps, g, ystar, parent)
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(obs) = observer {
            next.iter().for_each(obs);
        }
        current = next;
    }
    let mut best: Option<(CutValue, usize)> = None;
    for bundle in &current {
        for &x in &bundle.batch {
            let Some(lx) = bundle.local(x) else { continue };
            let lambda = edge_connectivity(&bundle.graph, lx, bundle.root)?;
            if best.is_none_or(|(b, _)| lambda < b) {
                best = Some((lambda, x));
            }
        }
    }
    match best {
        Some((_, x)) => Ok(min_st_edge_cut(g, x, ystar)?.cut),
        None => {
            let x: VertexSet = (0..g.n()).filter(|&v| v != ystar).collect();
            EdgeCut::from_source_side(g, x)
        }
    }
}

/// Externally fixed estimates and terminals for a single deterministic trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Injection {
    pub opt_estimate: u128,
    pub nu: u64,
    pub terminals: Vec<usize>,
}

#[derive(Clone, Debug, Default)]
pub struct RootedOptions {
    /// Number of independent trials; `None` picks [`default_repeats`].
    pub repeats: Option<usize>,
    /// Replaces random trials by one trial with these parameters.
    pub injection: Option<Injection>,
    /// Disable the rescaling reduction for large weights.
    pub no_rescale: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedOutcome<C> {
    pub cut: C,
    /// Value found by each trial, in trial order.
    pub trial_values: Vec<CutValue>,
    /// True when the zero-value reachability shortcut answered.
    pub shortcut: bool,
    pub repeats: usize,
}

/// Zero-value cut when some vertex cannot reach the root.
pub(crate) fn unreachable_side(g: &WeightedDigraph, ystar: usize) -> Option<VertexSet> {
    let reach = g.reaching(ystar);
    if reach.iter().all(|&b| b) {
        None
    } else {
        Some(VertexSet::from_mask(&reach).complement(g.n()))
    }
}

/// Rooted (1+eps)-approximate minimum edge cut with the root in Y.
pub fn rooted_min_edge_cut(
    g: &WeightedDigraph,
    ystar: usize,
    eps: Epsilon,
    rng: &mut CutRng,
    repeats: Option<usize>,
) -> Result<EdgeCut> {
    let opts = RootedOptions { repeats, ..Default::default() };
    Ok(solve_rooted_edge(g, ystar, eps, rng, &opts)?.cut)
}

pub fn solve_rooted_edge(
    g: &WeightedDigraph,
    ystar: usize,
    eps: Epsilon,
    rng: &mut CutRng,
    opts: &RootedOptions,
) -> Result<RootedOutcome<EdgeCut>> {
    solve_rooted_edge_observed(g, ystar, eps, rng, opts, None)
}

/// As [`solve_rooted_edge`], reporting every bundle built by every trial.
/// The rescaled path does not report its bundles.
pub fn solve_rooted_edge_observed(
    g: &WeightedDigraph,
    ystar: usize,
    eps: Epsilon,
    rng: &mut CutRng,
    opts: &RootedOptions,
    observer: Option<EdgeObserver<'_>>,
) -> Result<RootedOutcome<EdgeCut>> {
    g.require(Mode::EdgeWeighted)?;
    eps.require_unit()?;
    if ystar >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: ystar, n: g.n() });
    }
    if g.n() == 1 {
        return Err(Error::RootOnly);
    }
    if let Some(x) = unreachable_side(g, ystar) {
        let cut = EdgeCut::from_source_side(g, x)?;
        return Ok(RootedOutcome { cut, trial_values: Vec::new(), shortcut: true, repeats: 0 });
    }
    let forbidden = VertexSet::singleton(ystar);
    if let Some(inj) = &opts.injection {
        let ctx = EstimateContext::injected(g, inj.opt_estimate, inj.nu, &inj.terminals, &forbidden)?;
        let cut = run_edge_trial(g, ystar, eps, &ctx, observer)?;
        let trial_values = vec![cut.value];
        return Ok(RootedOutcome { cut, trial_values, shortcut: false, repeats: 1 });
    }
    if g.max_weight() > RESCALE_THRESHOLD && !opts.no_rescale {
        return solve_rescaled(g, ystar, eps, rng, opts);
    }
    let repeats = opts.repeats.unwrap_or_else(|| default_repeats(g.m(), g.max_weight())).max(1);
    let master = rng.next_u64();
    let cuts = (0..repeats)
        .into_par_iter()
        .map(|t| {
            let mut r = stream(master, t as u64);
            let est = guess_estimates(EstimateMode::Edge, g, &mut r);
            let terminals = pick_terminals(g, est.nu, &forbidden, &mut r)?;
            run_edge_trial(g, ystar, eps, &EstimateContext::new(est, terminals), observer)
        })
        .collect::<Result<Vec<_>>>()?;
    let trial_values = cuts.iter().map(|c| c.value).collect();
    let cut = cuts
        .into_iter()
        .enumerate()
        .min_by_key(|(i, c)| (c.value, *i))
        .map(|(_, c)| c)
        .expect("at least one trial");
    Ok(RootedOutcome { cut, trial_values, shortcut: false, repeats })
}

struct EdgeInner<'a> {
    g: &'a WeightedDigraph,
    ystar: usize,
    eps: Epsilon,
    master: u64,
    calls: u64,
    repeats: Option<usize>,
    trial_values: Vec<CutValue>,
    repeats_used: usize,
}

impl InnerSolver for EdgeInner<'_> {
    type Solution = EdgeCut;

    fn solve(&mut self, weights: &[Weight], _max_weight: Weight) -> Result<EdgeCut> {
        let h = self.g.with_edge_weights(weights)?;
        let mut r = stream(self.master, self.calls);
        self.calls += 1;
        let opts = RootedOptions { repeats: self.repeats, injection: None, no_rescale: true };
        let out = solve_rooted_edge(&h, self.ystar, self.eps, &mut r, &opts)?;
        self.repeats_used += out.repeats;
        self.trial_values.extend(out.trial_values.iter().copied());
        Ok(out.cut)
    }

    fn elements(&self, sol: &EdgeCut) -> Vec<usize> {
        let mask = sol.x.mask(self.g.n());
        (0..self.g.m())
            .filter(|&e| {
                let edge = self.g.edge(e);
                mask[edge.tail] && !mask[edge.head]
            })
            .collect()
    }
}

fn solve_rescaled(
    g: &WeightedDigraph,
    ystar: usize,
    eps: Epsilon,
    rng: &mut CutRng,
    opts: &RootedOptions,
) -> Result<RootedOutcome<EdgeCut>> {
    let weights: Vec<Weight> = g.edges().iter().map(|e| e.weight).collect();
    let mut inner = EdgeInner {
        g,
        ystar,
        eps,
        master: rng.next_u64(),
        calls: 0,
        repeats: opts.repeats,
        trial_values: Vec::new(),
        repeats_used: 0,
    };
    let out = solve_with_rescale(&weights, g.max_weight(), eps, &mut inner)?;
    let cut = EdgeCut::from_source_side(g, out.solution.x)?;
    Ok(RootedOutcome { cut, trial_values: inner.trial_values, shortcut: false, repeats: inner.repeats_used })
}
