/*!
Exact s-t minimum cuts by maximum flow.

The solver is Dinic's algorithm run in capacity-scaling phases over `u128`
capacities. After the flow is maximal, two minimum cuts can be read off the
residual network:

* the source-minimal cut, whose source side is everything reachable from `s`;
* the source-maximal cut, whose source side is everything that can *not*
  reach `t`.

Vertex cuts use the usual splitting: every vertex other than `s` and `t`
becomes `v_in -> v_out` with capacity `w(v)`, and every original edge
`u -> v` becomes `u_out -> v_in` with capacity `1 + sum of all weights`, which
no finite vertex cut can reach.
*/

use crate::error::{Error, Result};
use crate::graph::{CutValue, EdgeCut, Mode, VertexCut, VertexSet, WeightedDigraph};

/// Which of the extreme minimum cuts to report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutSide {
    SourceMinimal,
    SourceMaximal,
}

struct Residual {
    head: Vec<usize>,
    res: Vec<u128>,
    start: Vec<usize>,
    order: Vec<usize>,
}

impl Residual {
    fn new(n: usize, arcs: &[(usize, usize, u128)]) -> Self {
        let mut head = Vec::with_capacity(2 * arcs.len());
        let mut res = Vec::with_capacity(2 * arcs.len());
        let mut start = vec![0usize; n + 1];
        for &(u, v, c) in arcs {
            head.push(v);
            res.push(c);
            head.push(u);
            res.push(0);
            start[u + 1] += 1;
            start[v + 1] += 1;
        }
        for i in 0..n {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut order = vec![0usize; 2 * arcs.len()];
        for a in 0..head.len() {
            let tail = head[a ^ 1];
            order[fill[tail]] = a;
            fill[tail] += 1;
        }
        Residual { head, res, start, order }
    }

    fn n(&self) -> usize {
        self.start.len() - 1
    }

    fn levels(&self, s: usize, t: usize, delta: u128, level: &mut [u32]) -> bool {
        level.fill(u32::MAX);
        level[s] = 0;
        let mut queue = vec![s];
        let mut qi = 0;
        while qi < queue.len() {
            let u = queue[qi];
            qi += 1;
            for &a in &self.order[self.start[u]..self.start[u + 1]] {
                let v = self.head[a];
                if self.res[a] >= delta && level[v] == u32::MAX {
                    level[v] = level[u] + 1;
                    if v != t {
                        queue.push(v);
                    }
                }
            }
        }
        level[t] != u32::MAX
    }

    fn blocking_flow(&mut self, s: usize, t: usize, delta: u128, level: &[u32], it: &mut [usize]) -> u128 {
        let mut total = 0u128;
        let mut path: Vec<usize> = Vec::new();
        let mut u = s;
        loop {
            if u == t {
                let f = path.iter().map(|&a| self.res[a]).min().expect("path to t is non-empty");
                for &a in &path {
                    self.res[a] -= f;
                    self.res[a ^ 1] += f;
                }
                total += f;
                let k = path.iter().position(|&a| self.res[a] < delta).expect("some arc saturates");
                path.truncate(k);
                u = path.last().map_or(s, |&a| self.head[a]);
                continue;
            }
            let mut next = None;
            while it[u] < self.start[u + 1] {
                let a = self.order[it[u]];
                let v = self.head[a];
                if self.res[a] >= delta && level[v] == level[u].wrapping_add(1) {
                    next = Some(a);
                    break;
                }
                it[u] += 1;
            }
            match next {
                Some(a) => {
                    path.push(a);
                    u = self.head[a];
                }
                None => {
                    let Some(a) = path.pop() else { return total };
                    u = self.head[a ^ 1];
                    it[u] += 1;
                }
            }
        }
    }

    fn max_flow(&mut self, s: usize, t: usize) -> u128 {
        let top = self.res.iter().copied().max().unwrap_or(0);
        if top == 0 {
            return 0;
        }
        let mut delta = 1u128 << (127 - top.leading_zeros());
        let n = self.n();
        let mut level = vec![u32::MAX; n];
        let mut it = vec![0usize; n];
        let mut flow = 0u128;
        loop {
            while self.levels(s, t, delta, &mut level) {
                it.copy_from_slice(&self.start[..n]);
                flow += self.blocking_flow(s, t, delta, &level, &mut it);
            }
            if delta == 1 {
                return flow;
            }
            delta >>= 1;
        }
    }

    fn reachable_from(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.order[self.start[u]..self.start[u + 1]] {
                let v = self.head[a];
                if self.res[a] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    fn reaching(&self, t: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        seen[t] = true;
        let mut stack = vec![t];
        while let Some(v) = stack.pop() {
            // a ^ 1 runs head[a] -> v
            for &a in &self.order[self.start[v]..self.start[v + 1]] {
                let u = self.head[a];
                if self.res[a ^ 1] > 0 && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen
    }

    fn source_side(&self, s: usize, t: usize, side: CutSide) -> Vec<bool> {
        match side {
            CutSide::SourceMinimal => self.reachable_from(s),
            CutSide::SourceMaximal => self.reaching(t).into_iter().map(|b| !b).collect(),
        }
    }
}

/// A minimum cut of an arc-capacitated network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawCut {
    pub value: u128,
    pub source_side: Vec<bool>,
}

/// Minimum s-t cut of the network on `0..n` with the given arcs.
pub fn min_cut_arcs(n: usize, arcs: &[(usize, usize, u128)], s: usize, t: usize, side: CutSide) -> Result<RawCut> {
    if s == t {
        return Err(Error::SameVertex);
    }
    let mut r = Residual::new(n, arcs);
    let value = r.max_flow(s, t);
    Ok(RawCut { value, source_side: r.source_side(s, t, side) })
}

/// A minimum vertex cut of a vertex-capacitated network: `left[v]` marks L,
/// `separator[v]` marks S, everything else is R.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawVertexCut {
    pub value: u128,
    pub left: Vec<bool>,
    pub separator: Vec<bool>,
    /// Vertices whose in-copy is on the source side (L together with S).
    pub reached: Vec<bool>,
}

/// Minimum s-t vertex cut; the weights of `s` and `t` are ignored.
pub fn min_vertex_cut_arcs(
    n: usize,
    arcs: &[(usize, usize)],
    weights: &[u128],
    s: usize,
    t: usize,
    side: CutSide,
) -> Result<RawVertexCut> {
    if s == t {
        return Err(Error::SameVertex);
    }
    if arcs.iter().any(|&(u, v)| u == s && v == t) {
        return Err(Error::NoVertexCut(s, t));
    }
    let total: u128 = weights.iter().try_fold(0u128, |a, &w| a.checked_add(w)).ok_or(Error::Overflow)?;
    let inf = total.checked_add(1).ok_or(Error::Overflow)?;
    let mut split = Vec::with_capacity(n + arcs.len());
    for (v, &w) in weights.iter().enumerate().take(n) {
        let cap = if v == s || v == t { inf } else { w };
        split.push((2 * v, 2 * v + 1, cap));
    }
    for &(u, v) in arcs {
        split.push((2 * u + 1, 2 * v, inf));
    }
    let cut = min_cut_arcs(2 * n, &split, 2 * s, 2 * t + 1, side)?;
    let a = &cut.source_side;
    let left: Vec<bool> = (0..n).map(|v| a[2 * v + 1]).collect();
    let separator: Vec<bool> = (0..n).map(|v| a[2 * v] && !a[2 * v + 1]).collect();
    let reached: Vec<bool> = (0..n).map(|v| a[2 * v]).collect();
    Ok(RawVertexCut { value: cut.value, left, separator, reached })
}

/// A minimum cut together with the flow value certifying it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowResult<C> {
    pub cut: C,
    pub max_flow_value: CutValue,
    /// Vertices reachable from `s` in the final residual network.
    pub source_side: VertexSet,
}

fn edge_arcs(g: &WeightedDigraph) -> Vec<(usize, usize, u128)> {
    g.edges().iter().map(|e| (e.tail, e.head, e.weight as u128)).collect()
}

/// Minimum s-t edge cut whose source side is the residual-reachable set of `s`.
pub fn min_st_edge_cut(g: &WeightedDigraph, s: usize, t: usize) -> Result<FlowResult<EdgeCut>> {
    min_st_edge_cut_with(g, s, t, CutSide::SourceMinimal)
}

pub fn min_st_edge_cut_with(g: &WeightedDigraph, s: usize, t: usize, side: CutSide) -> Result<FlowResult<EdgeCut>> {
    g.require(Mode::EdgeWeighted)?;
    check_ends(g, s, t)?;
    let mut r = Residual::new(g.n(), &edge_arcs(g));
    let value = r.max_flow(s, t);
    let reach = r.reachable_from(s);
    let x = VertexSet::from_mask(&r.source_side(s, t, side));
    let y = x.complement(g.n());
    Ok(FlowResult { cut: EdgeCut { x, y, value }, max_flow_value: value, source_side: VertexSet::from_mask(&reach) })
}

/// lambda(s, t).
pub fn edge_connectivity(g: &WeightedDigraph, s: usize, t: usize) -> Result<CutValue> {
    g.require(Mode::EdgeWeighted)?;
    check_ends(g, s, t)?;
    Ok(Residual::new(g.n(), &edge_arcs(g)).max_flow(s, t))
}

/// Minimum s-t vertex cut with the source-minimal L.
pub fn min_st_vertex_cut(g: &WeightedDigraph, s: usize, t: usize) -> Result<FlowResult<VertexCut>> {
    min_st_vertex_cut_with(g, s, t, CutSide::SourceMinimal)
}

pub fn min_st_vertex_cut_with(
    g: &WeightedDigraph,
    s: usize,
    t: usize,
    side: CutSide,
) -> Result<FlowResult<VertexCut>> {
    g.require(Mode::VertexWeighted)?;
    check_ends(g, s, t)?;
    let arcs: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.tail, e.head)).collect();
    let weights: Vec<u128> = g.vertex_weights().iter().map(|&w| w as u128).collect();
    let raw = min_vertex_cut_arcs(g.n(), &arcs, &weights, s, t, side)?;
    let l = VertexSet::from_mask(&raw.left);
    let sep = VertexSet::from_mask(&raw.separator);
    let r = l.union(&sep).complement(g.n());
    let cut = VertexCut { l, s: sep, r, value: raw.value };
    let source_side = if side == CutSide::SourceMinimal {
        VertexSet::from_mask(&raw.reached)
    } else {
        let minimal = min_vertex_cut_arcs(g.n(), &arcs, &weights, s, t, CutSide::SourceMinimal)?;
        VertexSet::from_mask(&minimal.reached)
    };
    Ok(FlowResult { cut, max_flow_value: raw.value, source_side })
}

/// kappa(s, t); `None` when the edge s -> t exists.
pub fn vertex_connectivity(g: &WeightedDigraph, s: usize, t: usize) -> Result<Option<CutValue>> {
    match min_st_vertex_cut(g, s, t) {
        Ok(r) => Ok(Some(r.max_flow_value)),
        Err(Error::NoVertexCut(..)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn check_ends(g: &WeightedDigraph, s: usize, t: usize) -> Result<()> {
    for v in [s, t] {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    if s == t {
        return Err(Error::SameVertex);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = WeightedDigraph::edge_weighted(2, [(0, 1, 5)]).unwrap();
        let r = min_st_edge_cut(&g, 0, 1).unwrap();
        assert_eq!(r.max_flow_value, 5);
        assert_eq!(r.cut.x, VertexSet::from([0]));
        let back = WeightedDigraph::edge_weighted(2, [(1, 0, 9)]).unwrap();
        let r = min_st_edge_cut(&back, 0, 1).unwrap();
        assert_eq!((r.cut.value, r.cut.x), (0, VertexSet::from([0])));
        assert_eq!(min_st_edge_cut(&g, 1, 1), Err(Error::SameVertex));
    }

    #[test]
    fn two_paths() {
        // s=0, a=1, b=2, t=3; bipartitions with s in X, t outside give {5, 6, 10, 11}
        let g = WeightedDigraph::edge_weighted(4, [(0, 1, 3), (1, 3, 4), (0, 2, 2), (2, 3, 7)]).unwrap();
        let r = min_st_edge_cut(&g, 0, 3).unwrap();
        assert_eq!(r.cut.value, 5);
        assert_eq!(g.edge_cut_value(&r.cut.x).unwrap(), 5);
    }

    #[test]
    fn minimal_and_maximal_sides() {
        // 0 -> 1 -> 2 with equal capacities: both single edges are minimum cuts.
        let g = WeightedDigraph::edge_weighted(3, [(0, 1, 2), (1, 2, 2)]).unwrap();
        let lo = min_st_edge_cut_with(&g, 0, 2, CutSide::SourceMinimal).unwrap();
        let hi = min_st_edge_cut_with(&g, 0, 2, CutSide::SourceMaximal).unwrap();
        assert_eq!(lo.cut.x, VertexSet::from([0]));
        assert_eq!(hi.cut.x, VertexSet::from([0, 1]));
        assert_eq!(lo.cut.value, hi.cut.value);
    }

    #[test]
    fn vertex_cuts() {
        let g = WeightedDigraph::vertex_weighted(vec![1, 4, 1], [(0, 1), (1, 2)]).unwrap();
        let r = min_st_vertex_cut(&g, 0, 2).unwrap();
        assert_eq!((r.cut.value, r.cut.s.clone()), (4, VertexSet::from([1])));

        // s=0, u=1 (w 2), v=2 (w 3), t=3
        let g = WeightedDigraph::vertex_weighted(vec![1, 2, 3, 1], [(0, 1), (1, 3), (0, 2), (2, 3)]).unwrap();
        let r = min_st_vertex_cut(&g, 0, 3).unwrap();
        assert_eq!(r.cut.value, 5);
        assert_eq!(r.cut.s, VertexSet::from([1, 2]));
        r.cut.validate(&g).unwrap();

        let direct = WeightedDigraph::vertex_weighted(vec![1, 1], [(0, 1)]).unwrap();
        assert_eq!(min_st_vertex_cut(&direct, 0, 1).unwrap_err(), Error::NoVertexCut(0, 1));
    }

    #[test]
    fn large_capacities() {
        let big = 1u128 << 100;
        let cut = min_cut_arcs(3, &[(0, 1, big), (1, 2, big + 7), (0, 2, 3)], 0, 2, CutSide::SourceMinimal).unwrap();
        assert_eq!(cut.value, big + 3);
    }
}
