//! Approximate rooted minimum vertex cut, checked against enumeration.

use dicut::rooted_vertex::forbidden_set;
use dicut::{brute_min_cut, rooted_min_vertex_cut, seeded, CutKind, Epsilon, WeightedDigraph};

fn main() -> dicut::Result<()> {
    // A directed ladder: the rungs 2 and 5 are cheap separators.
    let weights = vec![4, 4, 1, 6, 6, 2, 3];
    let arcs = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0), (1, 5), (4, 2), (0, 3)];
    let g = WeightedDigraph::vertex_weighted(weights, arcs)?;
    let root = 6;
    println!("root {root}, vertices that cannot be in L: {:?}", forbidden_set(&g, root).as_slice());

    let eps = Epsilon::new(1, 4)?;
    let cut = rooted_min_vertex_cut(&g, root, eps, &mut seeded(3), None)?;
    println!("L = {:?}, S = {:?}, R = {:?}, w(S) = {}", cut.l.as_slice(), cut.s.as_slice(), cut.r.as_slice(), cut.value);

    let exact = brute_min_cut(&g, CutKind::VertexRooted, Some(root))?;
    println!("exact optimum = {}", exact.value());
    Ok(())
}
