//! Approximate rooted minimum edge cut on a small weighted digraph.
//!
//! ```text
//! cargo run --release --example rooted_edge_cut
//! ```

use dicut::{brute_min_cut, rooted_min_edge_cut, seeded, CutKind, Epsilon, WeightedDigraph};

fn main() -> dicut::Result<()> {
    // Two dense clusters {0,1,2} and {3,4,5} joined by light edges.
    let g = WeightedDigraph::edge_weighted(
        6,
        [
            (0, 1, 9), (1, 2, 9), (2, 0, 9),
            (3, 4, 9), (4, 5, 9), (5, 3, 9),
            (2, 3, 2), (5, 0, 3), (1, 4, 1),
        ],
    )?;
    let root = 4;
    let eps = Epsilon::new(1, 4)?;

    let cut = rooted_min_edge_cut(&g, root, eps, &mut seeded(7), None)?;
    println!("X = {:?}, Y = {:?}, w(E(X,Y)) = {}", cut.x.as_slice(), cut.y.as_slice(), cut.value);

    let exact = brute_min_cut(&g, CutKind::EdgeRooted, Some(root))?;
    println!("exact optimum = {}", exact.value());
    assert!(eps.within(cut.value, exact.value()));
    Ok(())
}
