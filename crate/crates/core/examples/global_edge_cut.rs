//! Global minimum edge cut: rooted solves in G and in its reverse.

use dicut::global::solve_global_edge;
use dicut::{seeded, Epsilon, RootedOptions, WeightedDigraph};

fn main() -> dicut::Result<()> {
    let n = 8;
    let mut edges: Vec<(usize, usize, u64)> = (0..n).map(|v| (v, (v + 1) % n, 5)).collect();
    edges.extend([(0, 4, 2), (4, 0, 2), (2, 6, 1), (7, 3, 4)]);
    let g = WeightedDigraph::edge_weighted(n, edges)?;

    let out = solve_global_edge(&g, Epsilon::new(1, 8)?, &mut seeded(1), &RootedOptions::default())?;
    println!("rooted at 0 in G:       {}", out.direct.cut.value);
    println!("rooted at 0 in rev(G):  {}", out.reversed.cut.value);
    println!("global cut X = {:?} value {}", out.cut.x.as_slice(), out.cut.value);
    println!("trials per side: {}", out.direct.repeats);
    Ok(())
}
