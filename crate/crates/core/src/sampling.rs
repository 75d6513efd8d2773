//! Terminal sampling, estimate guessing and the halving batch hierarchy.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{VertexSet, WeightedDigraph};
use crate::rng::CutRng;

/// Extra sampling rounds tried before falling back to a fixed vertex.
pub const TERMINAL_RETRIES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminalSet {
    /// Sorted ascending; this is the fixed order the hierarchy splits.
    pub terminals: Vec<usize>,
    pub nu: u64,
    pub forbidden: VertexSet,
}

/// Samples `floor(2m/nu)` edges with repetition and keeps their tails outside
/// `forbidden`.
pub fn pick_terminals(g: &WeightedDigraph, nu: u64, forbidden: &VertexSet, rng: &mut CutRng) -> Result<TerminalSet> {
    let m = g.m();
    if nu < 1 || nu > m as u64 {
        return Err(Error::BadNu { nu, m });
    }
    let draws = 2 * m as u64 / nu;
    let mask = forbidden.mask(g.n());
    for _ in 0..=TERMINAL_RETRIES {
        let picked: VertexSet = (0..draws)
            .map(|_| g.edge(rng.gen_range(0..m)).tail)
            .filter(|&v| !mask[v])
            .collect();
        if !picked.is_empty() {
            return Ok(TerminalSet { terminals: picked.into_vec(), nu, forbidden: forbidden.clone() });
        }
    }
    let v = (0..g.n()).find(|&v| !mask[v] && g.out_degree(v) > 0).ok_or(Error::NoEligibleTerminal)?;
    Ok(TerminalSet { terminals: vec![v], nu, forbidden: forbidden.clone() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EstimateMode {
    Edge,
    Vertex,
}

/// A guess of OPT and of the out-volume of the optimal source side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Estimates {
    pub opt_estimate: u128,
    pub nu: u64,
}

/// Number of powers of two in `[1, x]`, for `x >= 1`.
pub fn powers_of_two_upto(x: u128) -> u32 {
    128 - x.max(1).leading_zeros()
}

/// `ceil(log2 x)` for `x >= 1`.
pub fn ceil_log2(x: u128) -> u32 {
    if x <= 1 {
        0
    } else {
        128 - (x - 1).leading_zeros()
    }
}

/// Upper end of the OPT range: m*W for edge cuts, n*W for vertex cuts.
pub fn opt_range(mode: EstimateMode, g: &WeightedDigraph) -> u128 {
    let count = match mode {
        EstimateMode::Edge => g.m(),
        EstimateMode::Vertex => g.n(),
    };
    (count as u128 * g.max_weight() as u128).max(1)
}

pub fn guess_estimates(mode: EstimateMode, g: &WeightedDigraph, rng: &mut CutRng) -> Estimates {
    let opt_exp = rng.gen_range(0..powers_of_two_upto(opt_range(mode, g)));
    let nu_exp = rng.gen_range(0..powers_of_two_upto(g.m().max(1) as u128));
    Estimates { opt_estimate: 1u128 << opt_exp, nu: 1u64 << nu_exp }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EstimateContext {
    pub opt_estimate: u128,
    pub nu: u64,
    pub z: u32,
    pub terminals: TerminalSet,
    pub injected: bool,
}

impl EstimateContext {
    pub fn new(est: Estimates, terminals: TerminalSet) -> Self {
        let z = ceil_log2(terminals.terminals.len() as u128);
        EstimateContext { opt_estimate: est.opt_estimate, nu: est.nu, z, terminals, injected: false }
    }

    /// A context with caller-chosen estimates and terminals.
    pub fn injected(
        g: &WeightedDigraph,
        opt_estimate: u128,
        nu: u64,
        terminals: &[usize],
        forbidden: &VertexSet,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::BadInjection(msg));
        if !opt_estimate.is_power_of_two() {
            return bad(format!("OPT estimate {opt_estimate} is not a power of two"));
        }
        if !nu.is_power_of_two() || nu > g.m() as u64 {
            return bad(format!("nu {nu} is not a power of two in [1, m]"));
        }
        let set: VertexSet = terminals.iter().copied().collect();
        if set.is_empty() {
            return Err(Error::EmptyTerminals);
        }
        if let Some(v) = set.iter().find(|&v| v >= g.n() || forbidden.contains(v)) {
            return bad(format!("terminal {v} is forbidden or out of range"));
        }
        let ts = TerminalSet { terminals: set.into_vec(), nu, forbidden: forbidden.clone() };
        let mut ctx = EstimateContext::new(Estimates { opt_estimate, nu }, ts);
        ctx.injected = true;
        Ok(ctx)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Batch {
    pub terminals: Vec<usize>,
    /// Index of the parent batch in the previous level.
    pub parent: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatchHierarchy {
    pub z: u32,
    pub levels: Vec<Vec<Batch>>,
}

impl BatchHierarchy {
    pub fn level(&self, i: usize) -> &[Batch] {
        &self.levels[i]
    }

    pub fn sizes(&self, i: usize) -> Vec<usize> {
        self.levels[i].iter().map(|b| b.terminals.len()).collect()
    }
}

pub fn build_batch_hierarchy(terminals: &[usize]) -> Result<BatchHierarchy> {
    if terminals.is_empty() {
        return Err(Error::EmptyTerminals);
    }
    let z = ceil_log2(terminals.len() as u128);
    let mut levels = vec![vec![Batch { terminals: terminals.to_vec(), parent: None }]];
    for _ in 0..z {
        let prev = levels.last().expect("level 0 exists");
        let mut next = Vec::with_capacity(2 * prev.len());
        for (p, b) in prev.iter().enumerate() {
            let cut = b.terminals.len().div_ceil(2);
            let (lo, hi) = b.terminals.split_at(cut);
            next.push(Batch { terminals: lo.to_vec(), parent: Some(p) });
            if !hi.is_empty() {
                next.push(Batch { terminals: hi.to_vec(), parent: Some(p) });
            }
        }
        levels.push(next);
    }
    Ok(BatchHierarchy { z, levels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn hierarchy_sizes() {
        let h = build_batch_hierarchy(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(h.z, 3);
        let sizes: Vec<_> = (0..=3).map(|i| h.sizes(i)).collect();
        assert_eq!(sizes, vec![vec![5], vec![3, 2], vec![2, 1, 1, 1], vec![1, 1, 1, 1, 1]]);

        let h = build_batch_hierarchy(&[7]).unwrap();
        assert_eq!((h.z, h.levels.len()), (0, 1));

        let h = build_batch_hierarchy(&[0, 1, 2, 3]).unwrap();
        let sizes: Vec<_> = (0..=2).map(|i| h.sizes(i)).collect();
        assert_eq!(sizes, vec![vec![4], vec![2, 2], vec![1, 1, 1, 1]]);
        assert_eq!(build_batch_hierarchy(&[]), Err(Error::EmptyTerminals));
    }

    #[test]
    fn terminal_count_bound() {
        let edges: Vec<_> = (0..10).map(|i| (i, (i + 1) % 10, 1)).collect();
        let g = WeightedDigraph::edge_weighted(10, edges).unwrap();
        let mut rng = seeded(1);
        for _ in 0..100 {
            let t = pick_terminals(&g, 10, &VertexSet::new(), &mut rng).unwrap();
            assert!(t.terminals.len() <= 2);
        }
        assert_eq!(pick_terminals(&g, 0, &VertexSet::new(), &mut rng).unwrap_err(), Error::BadNu { nu: 0, m: 10 });
        assert!(pick_terminals(&g, 11, &VertexSet::new(), &mut rng).is_err());
    }

    #[test]
    fn star_center_always_hit() {
        let g = WeightedDigraph::edge_weighted(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)]).unwrap();
        let mut rng = seeded(2);
        for nu in [1, 2, 3] {
            let t = pick_terminals(&g, nu, &VertexSet::new(), &mut rng).unwrap();
            assert_eq!(t.terminals, vec![0]);
        }
    }

    #[test]
    fn fallback_when_all_tails_forbidden() {
        let g = WeightedDigraph::edge_weighted(3, [(0, 1, 1), (1, 0, 1)]).unwrap();
        let mut rng = seeded(3);
        let forbid = VertexSet::from([0, 1]);
        assert_eq!(pick_terminals(&g, 1, &forbid, &mut rng).unwrap_err(), Error::NoEligibleTerminal);
        let g = WeightedDigraph::edge_weighted(3, [(0, 1, 1), (1, 0, 1), (2, 0, 1)]).unwrap();
        let t = pick_terminals(&g, 3, &forbid, &mut rng).unwrap();
        assert_eq!(t.terminals, vec![2]);
    }

    #[test]
    fn estimate_ranges() {
        let edges: Vec<_> = (0..8).map(|i| (i % 4, (i + 1) % 4, if i == 0 { 4 } else { 1 })).collect();
        let g = WeightedDigraph::edge_weighted(4, edges).unwrap();
        let mut rng = seeded(4);
        let mut counts = [0usize; 6];
        for _ in 0..6000 {
            let e = guess_estimates(EstimateMode::Edge, &g, &mut rng);
            assert!(e.opt_estimate.is_power_of_two() && e.opt_estimate <= 32);
            counts[e.opt_estimate.trailing_zeros() as usize] += 1;
        }
        assert!(counts.iter().all(|&c| c > 800 && c < 1200), "{counts:?}");

        let one = WeightedDigraph::edge_weighted(2, [(0, 1, 3)]).unwrap();
        assert!((0..50).all(|_| guess_estimates(EstimateMode::Edge, &one, &mut rng).nu == 1));

        let v = WeightedDigraph::vertex_weighted(vec![1, 1], [(0, 1)]).unwrap();
        assert_eq!(powers_of_two_upto(opt_range(EstimateMode::Vertex, &v)), 2);
    }

    #[test]
    fn logs() {
        assert_eq!([1, 2, 3, 4, 5, 8, 9].map(ceil_log2), [0, 1, 2, 2, 3, 3, 4]);
        assert_eq!([1, 2, 3, 32, 33].map(powers_of_two_upto), [1, 2, 2, 6, 6]);
    }
}
