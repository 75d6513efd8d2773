//! Running a weight-sensitive solver on rescaled weight families.
//!
//! The inner solver here is a toy: it picks the cheapest single element. The
//! point is the plan shape and the bound on the largest inner weight.

use dicut::rescale::{build_rescale_plan, lift_zero_weights, solve_with_rescale, InnerSolver};
use dicut::{Epsilon, Weight};

struct Cheapest;

impl InnerSolver for Cheapest {
    type Solution = usize;

    fn solve(&mut self, weights: &[Weight], _max: Weight) -> dicut::Result<usize> {
        Ok((0..weights.len()).min_by_key(|&i| (weights[i], i)).expect("non-empty"))
    }

    fn elements(&self, s: &usize) -> Vec<usize> {
        vec![*s]
    }
}

fn main() -> dicut::Result<()> {
    let weights: Vec<Weight> = vec![1 << 35, 3 << 20, 7, 1 << 39, 12345];
    let eps = Epsilon::new(1, 4)?;
    let plan = build_rescale_plan(&weights, 1 << 39, eps)?;
    println!("families 1..={}, W' = {} (2^{})", plan.z, plan.w_prime, plan.log_w_prime);
    let out = solve_with_rescale(&weights, 1 << 39, eps, &mut Cheapest)?;
    println!("picked element {} from family {} (i* = {:?})", out.solution, out.index, out.i_star);
    println!("largest inner weight {}", out.max_inner_weight);

    let lifted = lift_zero_weights(&[0, 3, 0, 1], 4)?;
    println!("zero weights lifted: {lifted:?}");
    Ok(())
}
