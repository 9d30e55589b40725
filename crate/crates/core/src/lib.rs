//! Refinement-constrained graph partitioning.
//!
//! Given a graph, an initial vertex set `U` and a budget `k`, the solvers in
//! this crate pick exactly `k` vertices `C` whose membership is flipped, so
//! that the refined set `U △ C` maximizes a partition measure: subgraph
//! density, induced weight or cut value.
//!
//! * [`graph`], [`set`], [`objective`]: graph storage, set algebra and the
//!   objective functions.
//! * [`sdp`]: the semidefinite relaxation, a low-rank solver and hyperplane
//!   rounding.
//! * [`densest`]: densest-subgraph refinement (greedy, peeling, black-box
//!   reduction, SDP).
//! * [`maxcut`]: max-cut refinement and the classic max-cut baselines.

pub mod densest;
pub mod error;
pub mod graph;
pub mod instance;
pub mod maxcut;
pub mod objective;
pub mod result;
pub mod rng;
pub mod sdp;
pub mod set;
pub mod state;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, GraphBuilder};
pub use instance::{RefinementInstance, RefinementSolver};
pub use objective::{
    cut_contribution, cut_value, density, induced_weight, weighted_degree_in, Objective,
};
pub use result::{Algorithm, CutResult, DensestResult, Flag};
pub use sdp::PartitionMeasure;
pub use set::{sym_diff, Assignment, VertexSet};
