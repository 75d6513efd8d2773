//! Approximate minimum edge and vertex cuts in weighted digraphs.
//!
//! The rooted solvers build a hierarchy of sparsifiers over a random set of
//! terminals and finish with exact max-flow computations on small graphs.
//! Global cuts reduce to rooted ones: edge cuts by rooting at a fixed vertex
//! in G and in its reverse, vertex cuts by sampling roots with probability
//! proportional to their far-away weight.
//!
//! Every solver takes an explicit [`CutRng`]; equal seeds give equal answers
//! regardless of the rayon thread count.

pub mod bench;
pub mod brute;
pub mod cli;
pub mod epsilon;
pub mod error;
pub mod flow;
pub mod global;
pub mod graph;
pub mod io;
pub mod rescale;
pub mod rng;
pub mod rooted_edge;
pub mod rooted_vertex;
pub mod sampling;

pub use brute::{brute_min_cut, CutKind, DistinguishedCut};
pub use epsilon::Epsilon;
pub use error::{Error, Result};
pub use flow::{min_st_edge_cut, min_st_vertex_cut, CutSide};
pub use global::{global_min_edge_cut, global_min_vertex_cut, ApproxOracle, ExactOracle, RootedVertexOracle};
pub use graph::{CutValue, EdgeCut, Mode, VertexCut, VertexSet, Weight, WeightedDigraph};
pub use rng::{seeded, CutRng};
pub use rooted_edge::{rooted_min_edge_cut, Injection, RootedOptions};
pub use rooted_vertex::rooted_min_vertex_cut;
