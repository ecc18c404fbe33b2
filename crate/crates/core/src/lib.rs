//! Graph-coloring reductions: the direct gadget reduction from
//! k-colorability to 3-colorability, the detour through CNF used as a
//! baseline, and an exact backtracking solver used as ground truth.

pub mod dimacs;
pub mod error;
pub mod gadget;
pub mod graph;
pub mod random;
pub mod reduction;
pub mod sat_route;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{complete_graph, cycle_graph, is_proper_coloring, Coloring, Graph, GraphBuilder};
