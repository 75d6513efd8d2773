//! Weight transforms: reducing a large-weight minimization problem to
//! `z = ceil(log2(W|U| + 1))` instances with weights at most `W'`, and lifting
//! non-negative vertex weights to positive ones.
//!
//! A problem is seen abstractly as a universe `U` of weighted elements, where
//! every feasible solution `F` is valued by the total weight of a subset
//! `Q(F)` of `U`.

use crate::epsilon::Epsilon;
use crate::error::{Error, Result};
use crate::graph::Weight;
use crate::sampling::ceil_log2;

/// A solver for the problem at hand under arbitrary non-negative weights.
pub trait InnerSolver {
    type Solution;

    fn solve(&mut self, weights: &[Weight], max_weight: Weight) -> Result<Self::Solution>;

    /// Indices into the universe of the elements the solution pays for.
    fn elements(&self, solution: &Self::Solution) -> Vec<usize>;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RescalePlan {
    pub z: u32,
    pub w_prime: Weight,
    pub log_w_prime: u32,
    pub universe_size: usize,
    weights: Vec<Weight>,
}

/// `w_i(e)` for a single weight.
pub fn rescaled_weight(w: Weight, i: u32, log_w_prime: u32) -> Weight {
    let shift = i + 2;
    if shift < 64 && w < 1u64 << shift {
        ((w as u128) << log_w_prime >> shift) as Weight
    } else {
        1 << log_w_prime
    }
}

pub fn build_rescale_plan(weights: &[Weight], max_weight: Weight, eps: Epsilon) -> Result<RescalePlan> {
    eps.require_unit()?;
    let u = weights.len().max(1) as u128;
    // W' = 2^k with 2^k * p > 4|U| q
    let bound = 4 * u * eps.den() as u128;
    let mut log_w_prime = 0u32;
    while (1u128 << log_w_prime) * (eps.num() as u128) <= bound {
        log_w_prime += 1;
    }
    if log_w_prime >= 63 {
        return Err(Error::Overflow);
    }
    let z = ceil_log2(max_weight.max(1) as u128 * weights.len() as u128 + 1).max(1);
    Ok(RescalePlan {
        z,
        w_prime: 1 << log_w_prime,
        log_w_prime,
        universe_size: weights.len(),
        weights: weights.to_vec(),
    })
}

impl RescalePlan {
    /// The weight family w_i, for `1 <= i <= z`.
    pub fn family(&self, i: u32) -> Vec<Weight> {
        self.weights.iter().map(|&w| rescaled_weight(w, i, self.log_w_prime)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct RescaleOutcome<S> {
    pub solution: S,
    /// The index i whose solution was returned.
    pub index: u32,
    pub i_star: Option<u32>,
    /// val_i(F_i) for every i, in order.
    pub rescaled_values: Vec<u128>,
    /// Largest weight handed to any inner call.
    pub max_inner_weight: Weight,
}

fn value_of(weights: &[Weight], elements: &[usize]) -> u128 {
    elements.iter().map(|&e| weights[e] as u128).sum()
}

/// Runs `inner` on every rescaled family and returns the best of the
/// candidates i*, i*+1, i*+2 under the original weights, where i* is the first
/// index whose solution is cheaper than W'. When no such index exists, the
/// best of all z solutions is returned.
pub fn solve_with_rescale<S: InnerSolver>(
    weights: &[Weight],
    max_weight: Weight,
    eps: Epsilon,
    inner: &mut S,
) -> Result<RescaleOutcome<S::Solution>> {
    let plan = build_rescale_plan(weights, max_weight, eps)?;
    let mut solutions = Vec::with_capacity(plan.z as usize);
    let mut rescaled_values = Vec::with_capacity(plan.z as usize);
    let mut max_inner_weight = 0;
    for i in 1..=plan.z {
        let w_i = plan.family(i);
        max_inner_weight = max_inner_weight.max(w_i.iter().copied().max().unwrap_or(0));
        let sol = inner.solve(&w_i, plan.w_prime)?;
        let elems = inner.elements(&sol);
        rescaled_values.push(value_of(&w_i, &elems));
        solutions.push((sol, elems));
    }
    let i_star = rescaled_values.iter().position(|&v| v < plan.w_prime as u128).map(|k| k as u32 + 1);
    let candidates: Vec<u32> = match i_star {
        Some(s) => (s..=(s + 2).min(plan.z)).collect(),
        None => (1..=plan.z).collect(),
    };
    let best = candidates
        .into_iter()
        .min_by_key(|&i| (value_of(weights, &solutions[i as usize - 1].1), i))
        .expect("z >= 1");
    let (solution, _) = solutions.swap_remove(best as usize - 1);
    Ok(RescaleOutcome { solution, index: best, i_star, rescaled_values, max_inner_weight })
}

/// w'(v) = 4 n^2 w(v) + 1.
pub fn lift_zero_weights(weights: &[Weight], n: usize) -> Result<Vec<Weight>> {
    let factor = 4u64.checked_mul((n as u64).checked_mul(n as u64).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
    weights
        .iter()
        .map(|&w| w.checked_mul(factor).and_then(|x| x.checked_add(1)).ok_or(Error::Overflow))
        .collect()
}
