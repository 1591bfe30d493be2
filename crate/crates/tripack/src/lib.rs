//! A laboratory for packing and covering directed triangles.
//!
//! The crate provides, over exact rational arithmetic throughout:
//!
//! - [`digraph`]: directed weighted multigraphs, triangle enumeration and
//!   the on-disk text format;
//! - [`lpcore`]: optimal fractional triangle packings and covers with
//!   duality and complementary-slackness certification;
//! - [`exact`]: branch-and-bound solvers for the integral packing and
//!   cover numbers, plus tiny-instance brute-force oracles;
//! - [`rounding`]: heavy-arc peeling and the threshold rounding that turns
//!   an optimal fractional cover into an integral cover of weight at most
//!   9/5 of the fractional optimum;
//! - [`generators`]: extremal and random instance families together with
//!   the ordering and bipartition cover heuristics;
//! - [`report`]: the structured result documents emitted by the CLI.

pub mod digraph;
pub mod exact;
pub mod generators;
pub mod lpcore;
pub mod rat;
pub mod report;
pub mod rng;
pub mod rounding;

pub use digraph::{
    parse_digraph, serialize_digraph, Arc, ArcId, ArcLabel, CoverSet, Digraph, GraphError,
    GraphMode, Triangle, VertexId,
};
pub use rat::Rat;
