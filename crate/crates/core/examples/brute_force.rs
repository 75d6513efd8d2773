//! Reference answers by enumeration, for graphs up to the brute-force limit.

use dicut::brute::{brute_min_vertex_cut_balanced, EDGE_LIMIT, VERTEX_LIMIT};
use dicut::{brute_min_cut, CutKind, WeightedDigraph};

fn main() -> dicut::Result<()> {
    println!("limits: {EDGE_LIMIT} vertices for edge cuts, {VERTEX_LIMIT} for vertex cuts");
    let e = WeightedDigraph::edge_weighted(4, [(0, 1, 2), (1, 2, 2), (2, 3, 2), (3, 0, 1), (1, 3, 5)])?;
    println!("edge global: {:?}", brute_min_cut(&e, CutKind::EdgeGlobal, None)?);
    println!("edge rooted at 2: {:?}", brute_min_cut(&e, CutKind::EdgeRooted, Some(2))?);

    let v = WeightedDigraph::vertex_weighted(vec![1, 1, 1, 1], [(0, 1), (1, 2), (2, 3), (3, 0)])?;
    println!("vertex global: {:?}", brute_min_cut(&v, CutKind::VertexGlobal, None)?);
    println!("balanced: {:?}", brute_min_vertex_cut_balanced(&v)?);
    Ok(())
}
