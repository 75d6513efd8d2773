//! Global minimum vertex cut through root sampling.
//!
//! The reduction is generic over the rooted oracle; here the approximate
//! rooted solver and the exact flow-based one are run side by side, and the
//! per-run query budgets are printed.

use dicut::global::{solve_global_vertex, ApproxOracle, ExactOracle, OUTER_REPEATS};
use dicut::{seeded, Epsilon, WeightedDigraph};

fn main() -> dicut::Result<()> {
    let n = 9;
    let mut arcs: Vec<(usize, usize)> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    arcs.extend([(0, 3), (3, 6), (6, 0), (1, 7), (8, 4), (5, 2)]);
    let weights = vec![3, 1, 4, 1, 5, 9, 2, 6, 5];
    let g = WeightedDigraph::vertex_weighted(weights, arcs)?;
    let eps = Epsilon::new(1, 4)?;

    let approx = solve_global_vertex(&g, eps, &ApproxOracle { repeats: Some(32) }, &mut seeded(11), OUTER_REPEATS)?;
    let exact = solve_global_vertex(&g, eps, &ExactOracle, &mut seeded(11), OUTER_REPEATS)?;
    println!("approx oracle: S = {:?} value {}", approx.cut.s.as_slice(), approx.cut.value);
    println!("exact oracle:  S = {:?} value {}", exact.cut.s.as_slice(), exact.cut.value);

    for run in &exact.runs {
        let b = &run.budget;
        println!(
            "reversed={:<5} roots={} queries={}/{} query_edges={}/{}",
            run.reversed, run.roots, b.queries, b.max_queries, b.query_edges, b.max_query_edges
        );
    }
    Ok(())
}
