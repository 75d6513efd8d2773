//! Directed multigraphs carrying either edge weights or vertex weights, and
//! the edge-cut / vertex-cut value types built on top of them.
//!
//! Vertices are dense ids `0..n`. Parallel edges are allowed, self-loops are
//! not. Weights are `u64`; cut values are accumulated in `u128`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Weight = u64;
pub type CutValue = u128;

/// Largest weight accepted by the public constructors.
pub const MAX_WEIGHT: Weight = 1 << 40;
/// Largest vertex or edge count accepted.
pub const MAX_SIZE: usize = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    EdgeWeighted,
    VertexWeighted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    /// Zero in vertex-weighted graphs.
    pub weight: Weight,
}

/// Sorted, duplicate-free list of vertex ids. The derived ordering is the
/// lexicographic order on the sorted lists.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        VertexSet(mask.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect())
    }

    pub fn from_bits(bits: u64, n: usize) -> Self {
        VertexSet((0..n).filter(|&v| bits >> v & 1 == 1).collect())
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(vec![v])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.0 {
            m[v] = true;
        }
        m
    }

    pub fn bits(&self) -> u64 {
        self.0.iter().fold(0, |acc, &v| acc | 1 << v)
    }

    pub fn complement(&self, n: usize) -> VertexSet {
        (0..n).filter(|&v| !self.contains(v)).collect()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| other.contains(v)).collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph {
    n: usize,
    mode: Mode,
    edges: Vec<Edge>,
    vertex_weights: Vec<Weight>,
    out_start: Vec<usize>,
    out_list: Vec<usize>,
    in_start: Vec<usize>,
    in_list: Vec<usize>,
}

fn csr(n: usize, keys: impl Iterator<Item = usize> + Clone) -> (Vec<usize>, Vec<usize>) {
    let mut start = vec![0usize; n + 1];
    for k in keys.clone() {
        start[k + 1] += 1;
    }
    for v in 0..n {
        start[v + 1] += start[v];
    }
    let mut fill = start.clone();
    let mut list = vec![0usize; start[n]];
    for (i, k) in keys.enumerate() {
        list[fill[k]] = i;
        fill[k] += 1;
    }
    (start, list)
}

impl WeightedDigraph {
    fn build(
        n: usize,
        mode: Mode,
        edges: Vec<Edge>,
        vertex_weights: Vec<Weight>,
        allow_zero: bool,
    ) -> Result<Self> {
        if n > MAX_SIZE || edges.len() > MAX_SIZE {
            return Err(Error::GraphTooLarge);
        }
        let check = |w: Weight| {
            if (w == 0 && !allow_zero) || w > MAX_WEIGHT {
                Err(Error::WeightOutOfRange { weight: w, line: None })
            } else {
                Ok(())
            }
        };
        for e in &edges {
            for v in [e.tail, e.head] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if e.tail == e.head {
                return Err(Error::SelfLoop { vertex: e.tail, line: None });
            }
            if mode == Mode::EdgeWeighted {
                check(e.weight)?;
            }
        }
        for &w in &vertex_weights {
            check(w)?;
        }
        let (out_start, out_list) = csr(n, edges.iter().map(|e| e.tail));
        let (in_start, in_list) = csr(n, edges.iter().map(|e| e.head));
        Ok(WeightedDigraph { n, mode, edges, vertex_weights, out_start, out_list, in_start, in_list })
    }

    /// Edge-weighted graph; every weight must lie in `1..=MAX_WEIGHT`.
    pub fn edge_weighted<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Weight)>,
    {
        let edges = edges.into_iter().map(|(tail, head, weight)| Edge { tail, head, weight }).collect();
        Self::build(n, Mode::EdgeWeighted, edges, Vec::new(), false)
    }

    /// Vertex-weighted graph on `weights.len()` vertices.
    pub fn vertex_weighted<I>(weights: Vec<Weight>, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let edges = arcs.into_iter().map(|(tail, head)| Edge { tail, head, weight: 0 }).collect();
        Self::build(weights.len(), Mode::VertexWeighted, edges, weights, false)
    }

    /// Same structure with new edge weights, zero allowed.
    pub fn with_edge_weights(&self, weights: &[Weight]) -> Result<Self> {
        self.require(Mode::EdgeWeighted)?;
        assert_eq!(weights.len(), self.m());
        let edges = self.edges.iter().zip(weights).map(|(e, &weight)| Edge { weight, ..*e }).collect();
        Self::build(self.n, self.mode, edges, Vec::new(), true)
    }

    /// Same structure with new vertex weights, zero allowed.
    pub fn with_vertex_weights(&self, weights: &[Weight]) -> Result<Self> {
        self.require(Mode::VertexWeighted)?;
        assert_eq!(weights.len(), self.n);
        Self::build(self.n, self.mode, self.edges.clone(), weights.to_vec(), true)
    }

    /// Edge-weighted graph accepting zero weights.
    pub fn edge_weighted_nonneg<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Weight)>,
    {
        let edges = edges.into_iter().map(|(tail, head, weight)| Edge { tail, head, weight }).collect();
        Self::build(n, Mode::EdgeWeighted, edges, Vec::new(), true)
    }

    /// Vertex-weighted graph accepting zero weights.
    pub fn vertex_weighted_nonneg<I>(weights: Vec<Weight>, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let edges = arcs.into_iter().map(|(tail, head)| Edge { tail, head, weight: 0 }).collect();
        Self::build(weights.len(), Mode::VertexWeighted, edges, weights, true)
    }

    pub(crate) fn require(&self, mode: Mode) -> Result<()> {
        if self.mode == mode {
            Ok(())
        } else {
            Err(Error::WrongMode(mode))
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn vertex_weights(&self) -> &[Weight] {
        &self.vertex_weights
    }

    pub fn vertex_weight(&self, v: usize) -> Weight {
        self.vertex_weights[v]
    }

    /// W: the largest weight of the active kind, at least 1.
    pub fn max_weight(&self) -> Weight {
        let w = match self.mode {
            Mode::EdgeWeighted => self.edges.iter().map(|e| e.weight).max(),
            Mode::VertexWeighted => self.vertex_weights.iter().copied().max(),
        };
        w.unwrap_or(1).max(1)
    }

    pub fn total_vertex_weight(&self) -> CutValue {
        self.vertex_weights.iter().map(|&w| w as CutValue).sum()
    }

    /// Ids of edges leaving `v`.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_list[self.out_start[v]..self.out_start[v + 1]]
    }

    /// Ids of edges entering `v`.
    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_list[self.in_start[v]..self.in_start[v + 1]]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_start[v + 1] - self.out_start[v]
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_start[v + 1] - self.in_start[v]
    }

    /// Heads of edges leaving `v`, repeated for parallel edges.
    pub fn out_heads(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_edges(v).iter().map(move |&e| self.edges[e].head)
    }

    /// Tails of edges entering `v`, repeated for parallel edges.
    pub fn in_tails(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.in_edges(v).iter().map(move |&e| self.edges[e].tail)
    }

    /// Distinct out-neighbors of `v`, sorted.
    pub fn out_neighbors(&self, v: usize) -> VertexSet {
        self.out_heads(v).collect()
    }

    /// Distinct in-neighbors of `v`, sorted.
    pub fn in_neighbors(&self, v: usize) -> VertexSet {
        self.in_tails(v).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out_heads(u).any(|h| h == v)
    }

    /// Every edge (u,v) becomes (v,u).
    pub fn reverse(&self) -> WeightedDigraph {
        let edges = self.edges.iter().map(|e| Edge { tail: e.head, head: e.tail, weight: e.weight }).collect();
        Self::build(self.n, self.mode, edges, self.vertex_weights.clone(), true)
            .expect("reversal keeps a valid graph valid")
    }

    /// w(E(X, V\X)).
    pub fn edge_cut_value(&self, x: &VertexSet) -> Result<CutValue> {
        self.require(Mode::EdgeWeighted)?;
        if x.is_empty() || x.len() >= self.n {
            return Err(Error::EmptySide);
        }
        Ok(self.boundary_weight(&x.mask(self.n)))
    }

    /// Total weight of edges from `inside` to its complement.
    pub fn boundary_weight(&self, inside: &[bool]) -> CutValue {
        self.edges
            .iter()
            .filter(|e| inside[e.tail] && !inside[e.head])
            .map(|e| e.weight as CutValue)
            .sum()
    }

    /// N+(L): out-neighbors of L outside L.
    pub fn out_neighborhood(&self, l: &VertexSet) -> VertexSet {
        let mask = l.mask(self.n);
        l.iter().flat_map(|v| self.out_heads(v)).filter(|&h| !mask[h]).collect()
    }

    /// N-(L): in-neighbors of L outside L.
    pub fn in_neighborhood(&self, l: &VertexSet) -> VertexSet {
        let mask = l.mask(self.n);
        l.iter().flat_map(|v| self.in_tails(v)).filter(|&t| !mask[t]).collect()
    }

    /// w(N+(L)).
    pub fn out_neighbor_weight(&self, l: &VertexSet) -> CutValue {
        self.set_weight(&self.out_neighborhood(l))
    }

    pub fn set_weight(&self, s: &VertexSet) -> CutValue {
        s.iter().map(|v| self.vertex_weights[v] as CutValue).sum()
    }

    /// vol+(A) = sum of out-degrees.
    pub fn out_volume(&self, a: &VertexSet) -> u64 {
        a.iter().map(|v| self.out_degree(v) as u64).sum()
    }

    /// Vertices that can reach `target` (including itself).
    pub fn reaching(&self, target: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[target] = true;
        let mut stack = vec![target];
        while let Some(v) = stack.pop() {
            for u in self.in_tails(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen
    }

    /// True when every vertex has an edge to every other vertex.
    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|v| self.out_neighbors(v).len() == self.n - 1)
    }
}

/// An ordered bipartition (X, Y) with its value w(E(X, Y)).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeCut {
    pub x: VertexSet,
    pub y: VertexSet,
    pub value: CutValue,
}

impl EdgeCut {
    pub fn from_source_side(g: &WeightedDigraph, x: VertexSet) -> Result<Self> {
        let value = g.edge_cut_value(&x)?;
        let y = x.complement(g.n());
        Ok(EdgeCut { x, y, value })
    }

    pub fn validate(&self, g: &WeightedDigraph) -> Result<()> {
        if self.x.is_empty() || self.y.is_empty() {
            return Err(Error::EmptySide);
        }
        if self.x.len() + self.y.len() != g.n()
            || self.x.iter().chain(self.y.iter()).any(|v| v >= g.n())
            || self.x.iter().any(|v| self.y.contains(v))
        {
            return Err(Error::InvalidCut("sides do not partition the vertex set".into()));
        }
        let value = g.edge_cut_value(&self.x)?;
        if value != self.value {
            return Err(Error::InvalidCut(format!("stored value {} but edges sum to {value}", self.value)));
        }
        Ok(())
    }
}

/// An ordered tripartition (L, S, R) with no L -> R edge, valued w(S).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexCut {
    pub l: VertexSet,
    pub s: VertexSet,
    pub r: VertexSet,
    pub value: CutValue,
}

impl VertexCut {
    pub fn from_parts(g: &WeightedDigraph, l: VertexSet, s: VertexSet, r: VertexSet) -> Result<Self> {
        let value = g.set_weight(&s);
        let cut = VertexCut { l, s, r, value };
        cut.validate(g)?;
        Ok(cut)
    }

    /// (L, N+(L), rest).
    pub fn from_left(g: &WeightedDigraph, l: VertexSet) -> Result<Self> {
        let s = g.out_neighborhood(&l);
        let r = l.union(&s).complement(g.n());
        Self::from_parts(g, l, s, r)
    }

    pub fn validate(&self, g: &WeightedDigraph) -> Result<()> {
        g.require(Mode::VertexWeighted)?;
        if self.l.is_empty() || self.r.is_empty() {
            return Err(Error::EmptySide);
        }
        let n = g.n();
        let mut side = vec![u8::MAX; n];
        for (k, set) in [&self.l, &self.s, &self.r].into_iter().enumerate() {
            for v in set.iter() {
                if v >= n || side[v] != u8::MAX {
                    return Err(Error::InvalidCut("sides do not partition the vertex set".into()));
                }
                side[v] = k as u8;
            }
        }
        if side.contains(&u8::MAX) {
            return Err(Error::InvalidCut("sides do not cover the vertex set".into()));
        }
        if let Some(e) = g.edges().iter().find(|e| side[e.tail] == 0 && side[e.head] == 2) {
            return Err(Error::InvalidCut(format!("edge {} -> {} goes from L to R", e.tail, e.head)));
        }
        let value = g.set_weight(&self.s);
        if value != self.value {
            return Err(Error::InvalidCut(format!("stored value {} but S weighs {value}", self.value)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> WeightedDigraph {
        WeightedDigraph::edge_weighted(3, [(0, 1, 1), (1, 2, 2), (2, 0, 3)]).unwrap()
    }

    #[test]
    fn reverse_flips_edges() {
        let g = triangle();
        let r = g.reverse();
        let pairs: Vec<_> = r.edges().iter().map(|e| (e.tail, e.head, e.weight)).collect();
        assert_eq!(pairs, vec![(1, 0, 1), (2, 1, 2), (0, 2, 3)]);
        assert_eq!(r.reverse(), g);
        let single = WeightedDigraph::edge_weighted(2, [(0, 1, 5)]).unwrap().reverse();
        assert_eq!(single.edge(0), Edge { tail: 1, head: 0, weight: 5 });
    }

    #[test]
    fn edge_cut_values() {
        let g = triangle();
        assert_eq!(g.edge_cut_value(&VertexSet::from([0, 2])).unwrap(), 1);
        let st = WeightedDigraph::edge_weighted(2, [(0, 1, 5)]).unwrap();
        assert_eq!(st.edge_cut_value(&VertexSet::from([0])).unwrap(), 5);
        assert_eq!(st.edge_cut_value(&VertexSet::from([1])).unwrap(), 0);
        assert_eq!(st.edge_cut_value(&VertexSet::new()), Err(Error::EmptySide));
        assert_eq!(st.edge_cut_value(&VertexSet::from([0, 1])), Err(Error::EmptySide));
    }

    #[test]
    fn neighbor_weights_and_volumes() {
        let path = WeightedDigraph::vertex_weighted(vec![2, 5, 1], [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.out_neighbor_weight(&VertexSet::from([0])), 5);
        assert_eq!(path.out_neighbor_weight(&VertexSet::from([0, 1])), 1);
        assert_eq!(path.out_neighbor_weight(&VertexSet::new()), 0);

        let star = WeightedDigraph::edge_weighted(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)]).unwrap();
        assert_eq!(star.out_volume(&VertexSet::from([0])), 3);
        assert_eq!(star.out_volume(&VertexSet::from([0, 1, 2, 3])), 3);
        let cycle = WeightedDigraph::edge_weighted(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]).unwrap();
        assert_eq!(cycle.out_volume(&VertexSet::from([0, 1])), 2);
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(matches!(
            WeightedDigraph::edge_weighted(2, [(0, 0, 3)]),
            Err(Error::SelfLoop { vertex: 0, .. })
        ));
        assert!(matches!(
            WeightedDigraph::edge_weighted(2, [(0, 1, 0)]),
            Err(Error::WeightOutOfRange { weight: 0, .. })
        ));
        assert!(matches!(
            WeightedDigraph::edge_weighted(2, [(0, 2, 1)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
        assert!(WeightedDigraph::edge_weighted_nonneg(2, [(0, 1, 0)]).is_ok());
    }

    #[test]
    fn vertex_cut_validation() {
        let path = WeightedDigraph::vertex_weighted(vec![2, 5, 1], [(0, 1), (1, 2)]).unwrap();
        let cut = VertexCut::from_left(&path, VertexSet::from([0])).unwrap();
        assert_eq!(cut.value, 5);
        assert_eq!(cut.r, VertexSet::from([2]));
        let bad = VertexCut {
            l: VertexSet::from([0]),
            s: VertexSet::new(),
            r: VertexSet::from([1, 2]),
            value: 0,
        };
        assert!(matches!(bad.validate(&path), Err(Error::InvalidCut(_))));
    }

    #[test]
    fn vertex_set_order_is_lexicographic() {
        assert!(VertexSet::from([0]) < VertexSet::from([0, 1]));
        assert!(VertexSet::from([0, 1]) < VertexSet::from([0, 2]));
        assert!(VertexSet::from([0, 2]) < VertexSet::from([1]));
    }
}
