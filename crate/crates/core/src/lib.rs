//! Workbench for degree-sequence conditions that force almost perfect
//! H-tilings.
//!
//! The crate is organised the way the objects depend on each other:
//!
//! - [`graph`], [`io`] and [`tiling`]: dense bit-row graphs, the
//!   multipartite / bottle / blow-up constructors, text formats, and tiling
//!   validation.
//! - [`thresholds`]: exact chromatic data of a pattern (χ, σ, ω, χ_cr), the
//!   interpolated Komlós threshold `g_H(x)`, and the degree-sequence bound
//!   lines together with a checker for concrete graphs.
//! - [`solver`]: copy enumeration, an exact branch-and-bound maximum tiling
//!   search, and an independent exhaustive oracle.
//! - [`constructions`]: the extremal families, apex augmentation, perfect
//!   tilings of blown-up bottle graphs and the `H*` / `H₁` bottle graphs.
//! - [`gadgets`]: expanding and swapping sets, the greedy `K_r` procedure,
//!   brute-force ε-regularity, and blow-up degree inheritance.
//! - [`harness`]: seeded experiments, table reproduction and plot data.

pub mod bitset;
pub mod constructions;
pub mod error;
pub mod gadgets;
pub mod graph;
pub mod harness;
pub mod io;
pub mod rational;
pub mod solver;
pub mod thresholds;
pub mod tiling;

pub use bitset::VertexSet;
pub use error::{Error, Result};
pub use graph::{
    blow_up, bottle_graph, complete_multipartite, BlowUp, BottleShape, Graph, PartitionedGraph, VertexOrdering,
    MAX_VERTICES,
};
pub use rational::Rational;
pub use tiling::{is_valid_tiling, Embedding, Pattern, Tiling, TilingViolation};
