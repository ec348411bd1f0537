//! Graph primitives shared by the verifiers and optimizers.
//!
//! Everything here works on exact integers.

mod flow;
mod shortest;

pub use flow::{
    max_size_max_weight_matching, BipartiteProblem, BipartiteSolution, Infeasibility,
    WeightedEdge,
};
pub use shortest::{shortest_paths_or_negative_cycle, Arc, DirectedGraph, PathTree, Sssp};
