#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Mutex;

use dicut::brute::{brute_min_cut, CutKind};
use dicut::epsilon::Epsilon;
use dicut::graph::{CutValue, VertexSet, WeightedDigraph};
use dicut::rng::CutRng;
use dicut::rooted_edge::{Injection, SparsifierBundle};
use dicut::rooted_vertex::{forbidden_set, VertexSparsifierBundle};
use dicut::sampling::pick_terminals;
use rand::seq::SliceRandom;
use rand::Rng;

/// A random cycle through all vertices plus random extra arcs, up to `m` total.
pub fn strong_arcs(n: usize, m: usize, rng: &mut CutRng) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut arcs: Vec<(usize, usize)> = (0..n).map(|k| (order[k], order[(k + 1) % n])).collect();
    while arcs.len() < m.max(n) {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            arcs.push((u, v));
        }
    }
    arcs
}

/// Arbitrary arcs, possibly disconnected.
pub fn loose_arcs(n: usize, m: usize, rng: &mut CutRng) -> Vec<(usize, usize)> {
    let mut arcs = Vec::new();
    while arcs.len() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            arcs.push((u, v));
        }
    }
    arcs
}

pub fn edge_instance(n: usize, m: usize, w: u64, rng: &mut CutRng) -> WeightedDigraph {
    let arcs = strong_arcs(n, m, rng);
    let edges: Vec<_> = arcs.into_iter().map(|(u, v)| (u, v, rng.gen_range(1..=w))).collect();
    WeightedDigraph::edge_weighted(n, edges).unwrap()
}

pub fn vertex_instance(n: usize, m: usize, w: u64, rng: &mut CutRng) -> WeightedDigraph {
    let arcs = strong_arcs(n, m, rng);
    let weights = (0..n).map(|_| rng.gen_range(1..=w)).collect();
    WeightedDigraph::vertex_weighted(weights, arcs).unwrap()
}

pub fn floor_pow2(x: u128) -> u128 {
    assert!(x >= 1);
    1 << (127 - x.leading_zeros())
}

/// value <= (1 + i eps / z) opt, exactly.
pub fn within_level(value: CutValue, opt: CutValue, eps: Epsilon, i: u32, z: u32) -> bool {
    let (p, q) = (eps.num() as u128, eps.den() as u128);
    let z = z.max(1) as u128;
    value * z * q <= opt * (z * q + i as u128 * p)
}

/// Non-empty masks over `0..k` with bit 0 as the lowest local id.
pub fn subsets(k: usize) -> impl Iterator<Item = u64> {
    1..(1u64 << k)
}

fn members(bits: u64, pool: &[usize]) -> Vec<usize> {
    pool.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, &v)| v).collect()
}

/// A rooted instance with its lexicographically least optimum and an injection
/// that makes the good event hold.
pub struct Planted {
    pub opt: CutValue,
    /// X* or L*, in G ids.
    pub source: VertexSet,
    pub xstar: usize,
    pub injection: Injection,
}

pub fn plant_edge(g: &WeightedDigraph, ystar: usize, extra: &mut CutRng) -> Planted {
    let cut = brute_min_cut(g, CutKind::EdgeRooted, Some(ystar)).unwrap().edge().unwrap();
    plant(g, cut.value, cut.x, VertexSet::singleton(ystar), extra)
}

pub fn plant_vertex(g: &WeightedDigraph, ystar: usize, extra: &mut CutRng) -> Planted {
    let cut = brute_min_cut(g, CutKind::VertexRooted, Some(ystar)).unwrap().vertex().unwrap();
    plant(g, cut.value, cut.l, forbidden_set(g, ystar), extra)
}

fn plant(g: &WeightedDigraph, opt: CutValue, source: VertexSet, forbidden: VertexSet, rng: &mut CutRng) -> Planted {
    let nu = floor_pow2(g.out_volume(&source) as u128) as u64;
    let xstar = *source.as_slice().choose(rng).unwrap();
    let mut terminals = pick_terminals(g, nu, &forbidden, rng).unwrap().terminals;
    terminals.push(xstar);
    terminals.sort_unstable();
    terminals.dedup();
    let injection = Injection { opt_estimate: floor_pow2(opt.max(1)), nu, terminals };
    Planted { opt, source, xstar, injection }
}

/// Exhaustive checker for the edge sparsifier properties, memoized by core set.
pub struct EdgeBundleCheck<'a> {
    pub g: &'a WeightedDigraph,
    pub ystar: usize,
    seen: Mutex<HashSet<(bool, Vec<usize>)>>,
    pub checked: Mutex<usize>,
    pub bundles: Mutex<usize>,
    pub violations: Mutex<Vec<String>>,
}

impl<'a> EdgeBundleCheck<'a> {
    pub fn new(g: &'a WeightedDigraph, ystar: usize) -> Self {
        EdgeBundleCheck {
            g,
            ystar,
            seen: Mutex::new(HashSet::new()),
            checked: Mutex::new(0),
            bundles: Mutex::new(0),
            violations: Mutex::new(Vec::new()),
        }
    }

    pub fn observe(&self, b: &SparsifierBundle) {
        *self.bundles.lock().unwrap() += 1;
        if !self.seen.lock().unwrap().insert((b.level <= 1, b.core_set.clone())) {
            return;
        }
        *self.checked.lock().unwrap() += 1;
        if let Err(e) = check_edge_bundle(self.g, self.ystar, b) {
            self.violations.lock().unwrap().push(e);
        }
    }
}

/// P1-P3 for one edge bundle (P3 exhaustively, so |V(G_B)| must be small).
pub fn check_edge_bundle(g: &WeightedDigraph, ystar: usize, b: &SparsifierBundle) -> Result<(), String> {
    let gb = &b.graph;
    let k = b.vertices.len();
    if gb.n() != k || gb.m() > g.m() || k > g.n() {
        return Err(format!("P1 size: |V|={k} |E|={} vs G {} {}", gb.m(), g.n(), g.m()));
    }
    if b.level > 1 {
        let core = VertexSet::from(b.core_set.iter().copied().filter(|&v| v != ystar).collect::<Vec<_>>());
        if gb.m() as u64 != g.out_volume(&core) {
            return Err(format!("P1: |E(G_B)|={} but vol+(A_B)={}", gb.m(), g.out_volume(&core)));
        }
        if k > gb.m() + 1 {
            return Err(format!("P1: |V(G_B)|={k} > |E|+1"));
        }
    }
    if b.vertices.windows(2).any(|w| w[0] >= w[1]) || b.vertices.iter().any(|&v| v >= g.n()) {
        return Err("P2: vertex list is not a sorted subset of V(G)".into());
    }
    if b.vertices.get(b.root) != Some(&ystar) {
        return Err("P2: root missing".into());
    }
    if k > 12 {
        return Err(format!("bundle with {k} vertices is too large to enumerate"));
    }
    let pool: Vec<usize> = (0..k).filter(|&v| v != b.root).collect();
    for bits in subsets(pool.len()) {
        let local = members(bits, &pool);
        let mut lmask = vec![false; k];
        local.iter().for_each(|&v| lmask[v] = true);
        let mut gmask = vec![false; g.n()];
        local.iter().for_each(|&v| gmask[b.vertices[v]] = true);
        let wb = gb.boundary_weight(&lmask);
        let wg = g.boundary_weight(&gmask);
        if wb < wg {
            return Err(format!("P3: X'={local:?} has {wb} in G_B but {wg} in G"));
        }
    }
    Ok(())
}

/// P4 for an edge bundle whose batch holds x*: some X' with x* in X' has
/// value <= (1 + i eps / z) OPT and vol+_G(X') <= 2 nu.
pub fn check_edge_p4(
    g: &WeightedDigraph,
    b: &SparsifierBundle,
    p: &Planted,
    eps: Epsilon,
    z: u32,
) -> Result<(), String> {
    let Some(lx) = b.local(p.xstar) else { return Err(format!("P4: x*={} not in G_B", p.xstar)) };
    let k = b.vertices.len();
    let pool: Vec<usize> = (0..k).filter(|&v| v != b.root && v != lx).collect();
    for bits in 0..(1u64 << pool.len()) {
        let mut local = members(bits, &pool);
        local.push(lx);
        let mut lmask = vec![false; k];
        local.iter().for_each(|&v| lmask[v] = true);
        let vol: u64 = local.iter().map(|&v| g.out_degree(b.vertices[v]) as u64).sum();
        if vol <= 2 * p.injection.nu
            && within_level(b.graph.boundary_weight(&lmask), p.opt, eps, b.level as u32, z)
        {
            return Ok(());
        }
    }
    Err(format!("P4: no good cut at level {} around x*={}", b.level, p.xstar))
}

/// Exhaustive checker for the vertex sparsifier properties, memoized by core set.
pub struct VertexBundleCheck<'a> {
    pub g: &'a WeightedDigraph,
    pub ystar: usize,
    seen: Mutex<HashSet<(bool, Vec<usize>)>>,
    pub checked: Mutex<usize>,
    pub bundles: Mutex<usize>,
    pub violations: Mutex<Vec<String>>,
}

impl<'a> VertexBundleCheck<'a> {
    pub fn new(g: &'a WeightedDigraph, ystar: usize) -> Self {
        VertexBundleCheck {
            g,
            ystar,
            seen: Mutex::new(HashSet::new()),
            checked: Mutex::new(0),
            bundles: Mutex::new(0),
            violations: Mutex::new(Vec::new()),
        }
    }

    pub fn observe(&self, b: &VertexSparsifierBundle) {
        *self.bundles.lock().unwrap() += 1;
        if !self.seen.lock().unwrap().insert((b.level <= 1, b.core_set.clone())) {
            return;
        }
        *self.checked.lock().unwrap() += 1;
        if let Err(e) = check_vertex_bundle(self.g, self.ystar, b) {
            self.violations.lock().unwrap().push(e);
        }
    }
}

fn blocked_in_bundle(b: &VertexSparsifierBundle) -> Vec<bool> {
    let mut blocked = vec![false; b.vertices.len()];
    blocked[b.root] = true;
    for t in b.graph.in_tails(b.root) {
        blocked[t] = true;
    }
    blocked
}

/// P'1-P'3 for one vertex bundle, plus the derived-graph equality on A_B.
pub fn check_vertex_bundle(g: &WeightedDigraph, ystar: usize, b: &VertexSparsifierBundle) -> Result<(), String> {
    let gb = &b.graph;
    let k = b.vertices.len();
    if gb.n() != k || gb.m() > g.m() || k > g.n() {
        return Err(format!("P'1 size: |V|={k} |E|={} vs G {} {}", gb.m(), g.n(), g.m()));
    }
    let core = VertexSet::from(b.core_set.iter().copied().filter(|&v| v != ystar).collect::<Vec<_>>());
    if b.level > 1 {
        let expected = g.out_volume(&core) + g.out_neighborhood(&core).len() as u64;
        if gb.m() as u64 != expected {
            return Err(format!("P'1: |E(G_B)|={} but vol+(A_B)+|N+(A_B)|={expected}", gb.m()));
        }
    }
    if b.vertices.windows(2).any(|w| w[0] >= w[1]) || b.vertices.iter().any(|&v| v >= g.n()) {
        return Err("P'2: vertex list is not a sorted subset of V(G)".into());
    }
    if b.vertices.get(b.root) != Some(&ystar) {
        return Err("P'2: root missing".into());
    }
    if k > 10 {
        return Err(format!("bundle with {k} vertices is too large to enumerate"));
    }
    let blocked = blocked_in_bundle(b);
    let pool: Vec<usize> = (0..k).filter(|&v| !blocked[v]).collect();
    let core_local: Vec<bool> = b.vertices.iter().map(|&v| core.contains(v)).collect();
    for bits in subsets(pool.len()) {
        let local = members(bits, &pool);
        let global: VertexSet = local.iter().map(|&v| b.vertices[v]).collect();
        let gn = g.out_neighborhood(&global);
        if gn.contains(ystar) {
            return Err(format!("P'3: root is an out-neighbor of L'={global:?} in G"));
        }
        let wb = gb.out_neighbor_weight(&VertexSet::from(local.clone()));
        let wg = g.set_weight(&gn);
        if wb < wg {
            return Err(format!("P'3: L'={global:?} has {wb} in G_B but {wg} in G"));
        }
        if b.level > 1 && local.iter().all(|&v| core_local[v]) && wb != wg {
            return Err(format!("derived graph: L'={global:?} has {wb} in G_B but {wg} in G"));
        }
    }
    Ok(())
}

/// P'4 for a vertex bundle whose batch holds x*.
pub fn check_vertex_p4(
    g: &WeightedDigraph,
    b: &VertexSparsifierBundle,
    p: &Planted,
    eps: Epsilon,
    z: u32,
) -> Result<(), String> {
    let Some(lx) = b.local(p.xstar) else { return Err(format!("P'4: x*={} not in G_B", p.xstar)) };
    let blocked = blocked_in_bundle(b);
    if blocked[lx] {
        return Err(format!("P'4: x*={} is an in-neighbor of the root in G_B", p.xstar));
    }
    let k = b.vertices.len();
    let pool: Vec<usize> = (0..k).filter(|&v| !blocked[v] && v != lx).collect();
    for bits in 0..(1u64 << pool.len()) {
        let mut local = members(bits, &pool);
        local.push(lx);
        let vol: u64 = local.iter().map(|&v| g.out_degree(b.vertices[v]) as u64).sum();
        let w = b.graph.out_neighbor_weight(&VertexSet::from(local));
        if vol <= 2 * p.injection.nu && within_level(w, p.opt, eps, b.level as u32, z) {
            return Ok(());
        }
    }
    Err(format!("P'4: no good cut at level {} around x*={}", b.level, p.xstar))
}
