//! Density deletion: remove a minimum-cost set of vertices (or ground-set
//! elements) so that the densest remaining subgraph, or the densest subset of
//! a supermodular function, has density at most a target `rho`.
//!
//! The crate contains
//!
//! * exact densest-subgraph machinery built on an integer max-flow engine
//!   ([`densest`], [`maxflow`]),
//! * an evaluation-oracle layer for supermodular functions ([`oracle`]) and
//!   their dense decomposition ([`decomposition`]),
//! * three deletion algorithms: threshold rounding of the orientation LP
//!   ([`lp`]), random proportional deletion ([`random_deletion`]) and the
//!   greedy submodular-cover route ([`cover`]),
//! * the pseudoforest matroid layer ([`matroid`]) and the Set Cover gadget
//!   generator ([`gadgets`]),
//! * exhaustive reference oracles used for cross-checking ([`brute`]).
//!
//! All densities, costs and LP arithmetic are exact rationals.

pub mod brute;
pub mod cover;
pub mod decomposition;
pub mod densest;
pub mod error;
pub mod gadgets;
pub mod graph;
pub mod lp;
pub mod matroid;
pub mod maxflow;
pub mod oracle;
pub mod random_deletion;
pub mod rational;
pub mod set;
pub mod simplex;

pub use error::{Error, Result};
pub use graph::{Edge, Hypergraph, MultiGraph, VertexId};
pub use rational::{format_rational, parse_rational, Cost, Rational};
pub use set::{EdgeSet, IdSet, VertexSet};

/// Size cap for exhaustive enumeration, overridable through `DD_SIZE_CAP`.
pub fn size_cap(default: usize) -> usize {
    std::env::var("DD_SIZE_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}
