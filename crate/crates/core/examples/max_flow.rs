//! Exact s-t cuts with the flow engine, including both canonical sides.

use dicut::flow::{min_st_edge_cut_with, vertex_connectivity};
use dicut::{min_st_vertex_cut, CutSide, WeightedDigraph};

fn main() -> dicut::Result<()> {
    // Two parallel minimum cuts: {0} and {0,1,2}.
    let g = WeightedDigraph::edge_weighted(4, [(0, 1, 3), (0, 2, 2), (1, 2, 9), (1, 3, 2), (2, 3, 3)])?;
    for side in [CutSide::SourceMinimal, CutSide::SourceMaximal] {
        let f = min_st_edge_cut_with(&g, 0, 3, side)?;
        println!("{side:?}: X = {:?} value {} (flow {})", f.cut.x.as_slice(), f.cut.value, f.max_flow_value);
    }

    let v = WeightedDigraph::vertex_weighted(vec![1, 5, 2, 1], [(0, 1), (0, 2), (1, 3), (2, 3)])?;
    let f = min_st_vertex_cut(&v, 0, 3)?;
    println!("vertex cut S = {:?} weight {}", f.cut.s.as_slice(), f.cut.value);
    println!("kappa(1, 0) = {:?}", vertex_connectivity(&v, 1, 0)?);
    Ok(())
}
