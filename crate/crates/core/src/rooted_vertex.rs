//! Rooted minimum vertex cut: find (L, S, R) with the root in R minimizing
//! w(S), to within a factor 1 + eps with high probability.
//!
//! The trial structure matches [`crate::rooted_edge`]. The penalized graph
//! attaches a heavy copy of every batch terminal to the super-source and a
//! light penalty copy to every eligible vertex; the sparsifier is the graph
//! derived from the core set, which keeps the core, its out-neighborhood and
//! the root.

use rand::RngCore;
use rayon::prelude::*;

use crate::epsilon::Epsilon;
use crate::error::{Error, Result};
use crate::flow::{min_st_vertex_cut, min_vertex_cut_arcs, vertex_connectivity, CutSide};
use crate::graph::{CutValue, Mode, VertexCut, VertexSet, Weight, WeightedDigraph};
use crate::rescale::{solve_with_rescale, InnerSolver};
use crate::rng::{stream, CutRng};
use crate::rooted_edge::{
    default_repeats, local_index, scaled_units, unreachable_side, Injection, RootedOptions, RootedOutcome,
};
use crate::sampling::{
    build_batch_hierarchy, guess_estimates, pick_terminals, EstimateContext, EstimateMode,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSparsifierBundle {
    pub graph: WeightedDigraph,
    /// Local id -> id in G, ascending.
    pub vertices: Vec<usize>,
    pub root: usize,
    pub level: usize,
    pub batch: Vec<usize>,
    pub batch_index: usize,
    pub parent_index: Option<usize>,
    /// A_B in G ids followed by the root.
    pub core_set: Vec<usize>,
    /// Local ids of vertices that are neither the root nor in-neighbors of it.
    pub eligible: Vec<usize>,
}

fn eligible(graph: &WeightedDigraph, root: usize) -> Vec<usize> {
    let mut blocked = vec![false; graph.n()];
    blocked[root] = true;
    for t in graph.in_tails(root) {
        blocked[t] = true;
    }
    (0..graph.n()).filter(|&v| !blocked[v]).collect()
}

/// F = {root} and its in-neighbors, in G ids.
pub fn forbidden_set(g: &WeightedDigraph, ystar: usize) -> VertexSet {
    g.in_tails(ystar).chain([ystar]).collect()
}

impl VertexSparsifierBundle {
    pub fn whole(g: &WeightedDigraph, ystar: usize, batch: Vec<usize>, batch_index: usize) -> Self {
        let eligible = eligible(g, ystar);
        let mut core_set = eligible.clone();
        core_set.push(ystar);
        VertexSparsifierBundle {
            graph: g.clone(),
            vertices: (0..g.n()).collect(),
            root: ystar,
            level: 1,
            batch,
            batch_index,
            parent_index: None,
            core_set,
            eligible,
        }
    }

    pub fn local(&self, v: usize) -> Option<usize> {
        local_index(&self.vertices, v)
    }

    pub fn to_global(&self, local: &VertexSet) -> VertexSet {
        local.iter().map(|v| self.vertices[v]).collect()
    }

    pub fn is_eligible(&self, local: usize) -> bool {
        self.eligible.binary_search(&local).is_ok()
    }
}

/// Parent sparsifier with a super-source, terminal copies and penalty copies.
///
/// Local ids: the parent's vertices `0..np`, then the super-source, then one
/// copy per batch terminal, then one penalty copy per eligible vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPenalizedGraph {
    pub num_vertices: usize,
    pub arcs: Vec<(usize, usize)>,
    pub weights: Vec<u128>,
    pub source: usize,
    pub sink: usize,
    pub scale: u128,
    pub parent_count: usize,
    /// (terminal, its copy).
    pub copies: Vec<(usize, usize)>,
    /// (eligible vertex, its penalty copy).
    pub penalty_copies: Vec<(usize, usize)>,
    /// Membership in the completion universe: eligible vertices and copies.
    pub universe: Vec<bool>,
    /// Parent local id -> id in G.
    pub vertices: Vec<usize>,
}

impl VertexPenalizedGraph {
    pub fn is_copy(&self, v: usize) -> bool {
        self.copies.iter().any(|&(_, c)| c == v)
    }

    /// Distinct out-neighbors of `v` in H.
    pub fn out_neighbors(&self, v: usize) -> VertexSet {
        self.arcs.iter().filter(|a| a.0 == v).map(|a| a.1).collect()
    }

    /// N+_H(L) for local ids.
    pub fn out_neighborhood(&self, l: &VertexSet) -> VertexSet {
        self.arcs.iter().filter(|a| l.contains(a.0) && !l.contains(a.1)).map(|a| a.1).collect()
    }

    pub fn set_weight(&self, s: &VertexSet) -> u128 {
        s.iter().map(|v| self.weights[v]).sum()
    }
}

pub fn build_penalized_graph_vertex(
    g: &WeightedDigraph,
    parent: &VertexSparsifierBundle,
    batch: &[usize],
    ctx: &EstimateContext,
    eps: Epsilon,
) -> Result<VertexPenalizedGraph> {
    let (scale, per_degree, copy_weight) = scaled_units(ctx, eps)?;
    let pg = &parent.graph;
    let np = pg.n();
    let source = np;
    let sink = parent.root;
    let mut weights = Vec::with_capacity(np + 1 + batch.len() + parent.eligible.len());
    for &w in pg.vertex_weights() {
        weights.push((w as u128).checked_mul(scale).ok_or(Error::Overflow)?);
    }
    weights.push(0);
    let mut arcs: Vec<(usize, usize)> = pg.edges().iter().map(|e| (e.tail, e.head)).collect();
    let terminals: Vec<usize> = batch
        .iter()
        .filter_map(|&x| parent.local(x))
        .filter(|&lx| parent.is_eligible(lx))
        .collect();
    let first_penalty = np + 1 + terminals.len();
    let penalty_of = |v: usize| first_penalty + parent.eligible.binary_search(&v).expect("eligible");
    let mut copies = Vec::with_capacity(terminals.len());
    for (k, &x) in terminals.iter().enumerate() {
        let c = np + 1 + k;
        copies.push((x, c));
        weights.push(copy_weight);
        arcs.push((source, c));
        for u in pg.out_neighbors(x).iter() {
            arcs.push((c, u));
        }
        arcs.push((c, penalty_of(x)));
    }
    let mut penalty_copies = Vec::with_capacity(parent.eligible.len());
    for &v in &parent.eligible {
        let p = penalty_of(v);
        let deg = g.out_degree(parent.vertices[v]) as u128;
        weights.push(per_degree.checked_mul(deg).ok_or(Error::Overflow)?);
        penalty_copies.push((v, p));
        arcs.push((v, p));
        arcs.push((p, sink));
    }
    let num_vertices = weights.len();
    let mut universe = vec![false; num_vertices];
    for &v in &parent.eligible {
        universe[v] = true;
    }
    for &(_, c) in &copies {
        universe[c] = true;
    }
    Ok(VertexPenalizedGraph {
        num_vertices,
        arcs,
        weights,
        source,
        sink,
        scale,
        parent_count: np,
        copies,
        penalty_copies,
        universe,
        vertices: parent.vertices.clone(),
    })
}

/// Adds the copy of every terminal in `lhat` and the original of every copy.
pub fn complete_set(lhat: &VertexSet, h: &VertexPenalizedGraph) -> Result<VertexSet> {
    if let Some(v) = lhat.iter().find(|&v| v >= h.num_vertices || !h.universe[v]) {
        return Err(Error::OutOfUniverse(v));
    }
    let mut out: Vec<usize> = lhat.as_slice().to_vec();
    for &(x, c) in &h.copies {
        if lhat.contains(x) || lhat.contains(c) {
            out.push(x);
            out.push(c);
        }
    }
    Ok(out.into_iter().collect())
}

/// A_B: completed source side of the source-maximal minimum vertex cut of H,
/// with the super-source and the copies removed, in G ids.
pub fn extract_core_set_vertex(h: &VertexPenalizedGraph) -> Result<crate::rooted_edge::CoreSet> {
    if h.copies.is_empty() {
        return Ok(crate::rooted_edge::CoreSet { members: Vec::new(), cut_value: 0 });
    }
    let cut = min_vertex_cut_arcs(h.num_vertices, &h.arcs, &h.weights, h.source, h.sink, CutSide::SourceMaximal)?;
    let lhat: VertexSet = (0..h.num_vertices).filter(|&v| v != h.source && cut.left[v]).collect();
    let complete = complete_set(&lhat, h)?;
    let members = complete.iter().filter(|&v| v < h.parent_count).map(|v| h.vertices[v]).collect();
    Ok(crate::rooted_edge::CoreSet { members, cut_value: cut.value })
}

/// The graph derived from `core`: the core, its out-neighborhood and the
/// root; all edges leaving the core, plus an edge to the root from every
/// out-neighbor.
pub fn derive_graph(g: &WeightedDigraph, core: &[usize], ystar: usize) -> Result<(WeightedDigraph, Vec<usize>)> {
    let core_set = VertexSet::from(core.to_vec());
    let boundary = g.out_neighborhood(&core_set);
    let vertices: Vec<usize> = core_set.union(&boundary).union(&VertexSet::singleton(ystar)).into_vec();
    let root = local_index(&vertices, ystar).expect("root kept");
    let at = |v: usize| local_index(&vertices, v).expect("vertex kept");
    let mut arcs = Vec::with_capacity(g.out_volume(&core_set) as usize + boundary.len());
    for u in core_set.iter() {
        for h in g.out_heads(u) {
            arcs.push((at(u), at(h)));
        }
    }
    for v in boundary.iter().filter(|&v| v != ystar) {
        arcs.push((at(v), root));
    }
    let weights = vertices.iter().map(|&v| g.vertex_weight(v)).collect();
    Ok((WeightedDigraph::vertex_weighted_nonneg(weights, arcs)?, vertices))
}

#[allow(clippy::too_many_arguments)]
pub fn approx_sparsify_vertex(
    level: usize,
    batch: &[usize],
    batch_index: usize,
    ctx: &EstimateContext,
    eps: Epsilon,
    g: &WeightedDigraph,
    ystar: usize,
    parent: Option<(&VertexSparsifierBundle, usize)>,
) -> Result<VertexSparsifierBundle> {
    if level <= 1 {
        return Ok(VertexSparsifierBundle::whole(g, ystar, batch.to_vec(), batch_index));
    }
    let (parent, parent_index) = parent.ok_or(Error::MissingParent)?;
    let h = build_penalized_graph_vertex(g, parent, batch, ctx, eps)?;
    let core = extract_core_set_vertex(&h)?;
    let (graph, vertices) = derive_graph(g, &core.members, ystar)?;
    let root = local_index(&vertices, ystar).expect("root kept");
    let eligible = eligible(&graph, root);
    let mut core_set = core.members;
    core_set.push(ystar);
    Ok(VertexSparsifierBundle {
        graph,
        vertices,
        root,
        level,
        batch: batch.to_vec(),
        batch_index,
        parent_index: Some(parent_index),
        core_set,
        eligible,
    })
}

pub type VertexObserver<'a> = &'a (dyn Fn(&VertexSparsifierBundle) + Sync);

/// One trial with fixed estimates and terminals.
pub fn run_vertex_trial(
    g: &WeightedDigraph,
    ystar: usize,
    eps: Epsilon,
    ctx: &EstimateContext,
    observer: Option<VertexObserver<'_>>,
) -> Result<VertexCut> {
    let hierarchy = build_batch_hierarchy(&ctx.terminals.terminals)?;
    let z = hierarchy.z as usize;
    let mut current: Vec<VertexSparsifierBundle> = Vec::new();
    if z == 0 {
        let mut b = VertexSparsifierBundle::whole(g, ystar, ctx.terminals.terminals.clone(), 0);
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
                approx_sparsify_vertex(i, &batch.terminals, k, ctx, eps, g, ystar, parent)
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
            let Some(lx) = bundle.local(x).filter(|&lx| bundle.is_eligible(lx)) else { continue };
            let Some(kappa) = vertex_connectivity(&bundle.graph, lx, bundle.root)? else { continue };
            if best.is_none_or(|(b, _)| kappa < b) {
                best = Some((kappa, x));
            }
        }
    }
    match best {
        Some((_, x)) => Ok(min_st_vertex_cut(g, x, ystar)?.cut),
        None => {
            let forbidden = forbidden_set(g, ystar);
            let v = (0..g.n()).find(|&v| !forbidden.contains(v)).ok_or(Error::NoFeasibleCut)?;
            VertexCut::from_left(g, VertexSet::singleton(v))
        }
    }
}

/// Rooted (1+eps)-approximate minimum vertex cut with the root in R.
pub fn rooted_min_vertex_cut(
    g: &WeightedDigraph,
    ystar: usize,
    eps: Epsilon,
    rng: &mut CutRng,
    repeats: Option<usize>,
) -> Result<VertexCut> {
    let opts = RootedOptions { repeats, ..Default::default() };
    Ok(solve_rooted_vertex(g, ystar, eps, rng, &opts)?.cut)
}

pub fn solve_rooted_vertex(
    g: &WeightedDigraph,
    ystar: usize,
    eps: Epsilon,
    rng: &mut CutRng,
    opts: &RootedOptions,
) -> Result<RootedOutcome<VertexCut>> {
    solve_rooted_vertex_observed(g, ystar, eps, rng, opts, None)
}

/// As [`solve_rooted_vertex`], reporting every bundle built by every trial.
/// The rescaled path does not report its bundles.
pub fn solve_rooted_vertex_observed(
    g: &WeightedDigraph,
    ystar: usize,
    eps: Epsilon,
    rng: &mut CutRng,
    opts: &RootedOptions,
    observer: Option<VertexObserver<'_>>,
) -> Result<RootedOutcome<VertexCut>> {
    g.require(Mode::VertexWeighted)?;
    eps.require_unit()?;
    if ystar >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: ystar, n: g.n() });
    }
    if let Some(l) = unreachable_side(g, ystar) {
        let r = l.complement(g.n());
        let cut = VertexCut::from_parts(g, l, VertexSet::new(), r)?;
        return Ok(RootedOutcome { cut, trial_values: Vec::new(), shortcut: true, repeats: 0 });
    }
    let forbidden = forbidden_set(g, ystar);
    if forbidden.len() == g.n() {
        return Err(Error::NoFeasibleCut);
    }
    if let Some(Injection { opt_estimate, nu, terminals }) = &opts.injection {
        let ctx = EstimateContext::injected(g, *opt_estimate, *nu, terminals, &forbidden)?;
        let cut = run_vertex_trial(g, ystar, eps, &ctx, observer)?;
        let trial_values = vec![cut.value];
        return Ok(RootedOutcome { cut, trial_values, shortcut: false, repeats: 1 });
    }
    if g.max_weight() > crate::rooted_edge::RESCALE_THRESHOLD && !opts.no_rescale {
        return solve_rescaled(g, ystar, eps, rng, opts);
    }
    let repeats = opts.repeats.unwrap_or_else(|| default_repeats(g.m(), g.max_weight())).max(1);
    let master = rng.next_u64();
    let cuts = (0..repeats)
        .into_par_iter()
        .map(|t| {
            let mut r = stream(master, t as u64);
            let est = guess_estimates(EstimateMode::Vertex, g, &mut r);
            let terminals = pick_terminals(g, est.nu, &forbidden, &mut r)?;
            run_vertex_trial(g, ystar, eps, &EstimateContext::new(est, terminals), observer)
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

struct VertexInner<'a> {
    g: &'a WeightedDigraph,
    ystar: usize,
    eps: Epsilon,
    master: u64,
    calls: u64,
    repeats: Option<usize>,
    trial_values: Vec<CutValue>,
    repeats_used: usize,
}

impl InnerSolver for VertexInner<'_> {
    type Solution = VertexCut;

    fn solve(&mut self, weights: &[Weight], _max_weight: Weight) -> Result<VertexCut> {
        let h = self.g.with_vertex_weights(weights)?;
        let mut r = stream(self.master, self.calls);
        self.calls += 1;
        let opts = RootedOptions { repeats: self.repeats, injection: None, no_rescale: true };
        let out = solve_rooted_vertex(&h, self.ystar, self.eps, &mut r, &opts)?;
        self.repeats_used += out.repeats;
        self.trial_values.extend(out.trial_values.iter().copied());
        Ok(out.cut)
    }

    fn elements(&self, sol: &VertexCut) -> Vec<usize> {
        sol.s.as_slice().to_vec()
    }
}

fn solve_rescaled(
    g: &WeightedDigraph,
    ystar: usize,
    eps: Epsilon,
    rng: &mut CutRng,
    opts: &RootedOptions,
) -> Result<RootedOutcome<VertexCut>> {
    let mut inner = VertexInner {
        g,
        ystar,
        eps,
        master: rng.next_u64(),
        calls: 0,
        repeats: opts.repeats,
        trial_values: Vec::new(),
        repeats_used: 0,
    };
    let out = solve_with_rescale(g.vertex_weights(), g.max_weight(), eps, &mut inner)?;
    let c = out.solution;
    let cut = VertexCut::from_parts(g, c.l, c.s, c.r)?;
    Ok(RootedOutcome { cut, trial_values: inner.trial_values, shortcut: false, repeats: inner.repeats_used })
}
