//! Minimum constraint removal with line-segment obstacles.
//!
//! The crate is `no_std` and only needs `alloc`. It covers the exact geometry
//! kernel, segment arrangements inside a rectangle, the discrete cover-graph
//! form of the problem, the solvers, and the Subset Sum reduction gadgets.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arrangement;
pub mod cover_graph;
pub mod geom;
pub mod reductions;
pub mod solvers;
