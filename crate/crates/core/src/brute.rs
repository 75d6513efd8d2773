//! Exhaustive reference solvers for small graphs.
//!
//! Ties between optimal cuts are broken lexicographically: edge cuts by the
//! sorted list X, vertex cuts by (L, S).

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CutValue, EdgeCut, Mode, VertexCut, VertexSet, WeightedDigraph};

pub const EDGE_LIMIT: usize = 14;
pub const VERTEX_LIMIT: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutKind {
    EdgeGlobal,
    EdgeRooted,
    VertexGlobal,
    VertexRooted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistinguishedCut {
    Edge(EdgeCut),
    Vertex(VertexCut),
}

impl DistinguishedCut {
    pub fn value(&self) -> CutValue {
        match self {
            DistinguishedCut::Edge(c) => c.value,
            DistinguishedCut::Vertex(c) => c.value,
        }
    }

    pub fn edge(self) -> Option<EdgeCut> {
        match self {
            DistinguishedCut::Edge(c) => Some(c),
            DistinguishedCut::Vertex(_) => None,
        }
    }

    pub fn vertex(self) -> Option<VertexCut> {
        match self {
            DistinguishedCut::Vertex(c) => Some(c),
            DistinguishedCut::Edge(_) => None,
        }
    }
}

pub fn brute_min_cut(g: &WeightedDigraph, kind: CutKind, root: Option<usize>) -> Result<DistinguishedCut> {
    let root = match kind {
        CutKind::EdgeRooted | CutKind::VertexRooted => {
            let r = root.ok_or(Error::MissingArgument("root"))?;
            if r >= g.n() {
                return Err(Error::VertexOutOfRange { vertex: r, n: g.n() });
            }
            Some(r)
        }
        _ => None,
    };
    match kind {
        CutKind::EdgeGlobal | CutKind::EdgeRooted => brute_edge(g, root).map(DistinguishedCut::Edge),
        CutKind::VertexGlobal | CutKind::VertexRooted => {
            brute_vertex(g, root, false).map(DistinguishedCut::Vertex)
        }
    }
}

/// Global minimum vertex cut preferring, among optima, one with w(L) <= w(R).
pub fn brute_min_vertex_cut_balanced(g: &WeightedDigraph) -> Result<VertexCut> {
    brute_vertex(g, None, true)
}

fn out_masks(g: &WeightedDigraph) -> Vec<u64> {
    let mut out = vec![0u64; g.n()];
    for e in g.edges() {
        out[e.tail] |= 1 << e.head;
    }
    out
}

fn lex_bits(a: u64, b: u64) -> Ordering {
    // compare the sorted element lists of two bit sets
    if a == b {
        return Ordering::Equal;
    }
    let diff = a ^ b;
    let low = diff.trailing_zeros();
    let below = (1u64 << low) - 1;
    let a_has = a >> low & 1 == 1;
    // both share all elements below the first difference; the one holding that
    // element is smaller unless the other list ends there
    if a_has {
        if b & !below == 0 { Ordering::Greater } else { Ordering::Less }
    } else if a & !below == 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

fn brute_edge(g: &WeightedDigraph, root: Option<usize>) -> Result<EdgeCut> {
    g.require(Mode::EdgeWeighted)?;
    let n = g.n();
    if n > EDGE_LIMIT {
        return Err(Error::TooLarge { n, limit: EDGE_LIMIT });
    }
    if n < 2 {
        return Err(Error::NoFeasible);
    }
    let full = (1u64 << n) - 1;
    let mut best: Option<(CutValue, u64)> = None;
    for x in 1..full {
        if root.is_some_and(|r| x >> r & 1 == 1) {
            continue;
        }
        let v: CutValue = g
            .edges()
            .iter()
            .filter(|e| x >> e.tail & 1 == 1 && x >> e.head & 1 == 0)
            .map(|e| e.weight as CutValue)
            .sum();
        let better = match best {
            None => true,
            Some((bv, bx)) => v < bv || (v == bv && lex_bits(x, bx) == Ordering::Less),
        };
        if better {
            best = Some((v, x));
        }
    }
    let (value, x) = best.ok_or(Error::NoFeasible)?;
    Ok(EdgeCut { x: VertexSet::from_bits(x, n), y: VertexSet::from_bits(full & !x, n), value })
}

struct VertexSearch<'a> {
    n: usize,
    out: Vec<u64>,
    inn: Vec<u64>,
    weight: &'a [u64],
    root: Option<usize>,
    balanced: bool,
    best: Option<(CutValue, bool, u64, u64)>,
}

impl VertexSearch<'_> {
    fn side_weight(&self, bits: u64) -> CutValue {
        (0..self.n).filter(|&v| bits >> v & 1 == 1).map(|v| self.weight[v] as CutValue).sum()
    }

    fn offer(&mut self, l: u64, s: u64, r: u64) {
        if l == 0 || r == 0 {
            return;
        }
        let value = self.side_weight(s);
        // unbalanced sorts after balanced when balance is requested
        let unbalanced = self.balanced && self.side_weight(l) > self.side_weight(r);
        let better = match self.best {
            None => true,
            Some((bv, bu, bl, bs)) => {
                (value, unbalanced).cmp(&(bv, bu)).then_with(|| lex_bits(l, bl).then(lex_bits(s, bs)))
                    == Ordering::Less
            }
        };
        if better {
            self.best = Some((value, unbalanced, l, s));
        }
    }

    fn go(&mut self, v: usize, l: u64, s: u64, r: u64) {
        if v == self.n {
            self.offer(l, s, r);
            return;
        }
        let bit = 1u64 << v;
        let forced_r = self.root == Some(v);
        if !forced_r && self.out[v] & r == 0 {
            self.go(v + 1, l | bit, s, r);
        }
        if !forced_r {
            self.go(v + 1, l, s | bit, r);
        }
        if self.inn[v] & l == 0 {
            self.go(v + 1, l, s, r | bit);
        }
    }
}

fn brute_vertex(g: &WeightedDigraph, root: Option<usize>, balanced: bool) -> Result<VertexCut> {
    g.require(Mode::VertexWeighted)?;
    let n = g.n();
    if n > VERTEX_LIMIT {
        return Err(Error::TooLarge { n, limit: VERTEX_LIMIT });
    }
    let out = out_masks(g);
    let mut inn = vec![0u64; n];
    for e in g.edges() {
        inn[e.head] |= 1 << e.tail;
    }
    let mut search = VertexSearch { n, out, inn, weight: g.vertex_weights(), root, balanced, best: None };
    search.go(0, 0, 0, 0);
    let (value, _, l, s) = search.best.ok_or(Error::NoFeasible)?;
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(VertexCut {
        l: VertexSet::from_bits(l, n),
        s: VertexSet::from_bits(s, n),
        r: VertexSet::from_bits(full & !l & !s, n),
        value,
    })
}

/// Minimum s-t edge cut value by enumeration.
pub fn brute_st_edge_cut(g: &WeightedDigraph, s: usize, t: usize) -> Result<CutValue> {
    g.require(Mode::EdgeWeighted)?;
    if s == t {
        return Err(Error::SameVertex);
    }
    let n = g.n();
    if n > EDGE_LIMIT {
        return Err(Error::TooLarge { n, limit: EDGE_LIMIT });
    }
    let mut best = CutValue::MAX;
    for x in 0..1u64 << n {
        if x >> s & 1 == 0 || x >> t & 1 == 1 {
            continue;
        }
        let v = g
            .edges()
            .iter()
            .filter(|e| x >> e.tail & 1 == 1 && x >> e.head & 1 == 0)
            .map(|e| e.weight as CutValue)
            .sum();
        best = best.min(v);
    }
    Ok(best)
}

/// Minimum s-t vertex cut value by enumeration of L (S = N+(L)).
pub fn brute_st_vertex_cut(g: &WeightedDigraph, s: usize, t: usize) -> Result<CutValue> {
    g.require(Mode::VertexWeighted)?;
    if s == t {
        return Err(Error::SameVertex);
    }
    if g.has_edge(s, t) {
        return Err(Error::NoVertexCut(s, t));
    }
    let n = g.n();
    if n > EDGE_LIMIT {
        return Err(Error::TooLarge { n, limit: EDGE_LIMIT });
    }
    let out = out_masks(g);
    let mut best = CutValue::MAX;
    for l in 0..1u64 << n {
        if l >> s & 1 == 0 || l >> t & 1 == 1 {
            continue;
        }
        let mut nb = 0u64;
        for (v, &o) in out.iter().enumerate() {
            if l >> v & 1 == 1 {
                nb |= o;
            }
        }
        nb &= !l;
        if nb >> t & 1 == 1 {
            continue;
        }
        let w = (0..n).filter(|&v| nb >> v & 1 == 1).map(|v| g.vertex_weight(v) as CutValue).sum();
        best = best.min(w);
    }
    Ok(best)
}
