//! Semidefinite relaxation of refinement-constrained partitioning, a
//! low-rank solver for it, and hyperplane rounding.

mod measure;
mod problem;
mod rounding;
mod solver;

pub use measure::{PartitionMeasure, ALPHA, BETA};
pub use problem::{build_gpkc_sdp, GpkcSdp};
pub use rounding::{
    default_repetitions, hyperplane_round, round_stream, rounding_driver, RoundingOutcome,
};
pub use solver::{
    default_rank, gw_maxcut, solve_sdp, solve_sdp_with, SolverOptions, VectorSolution,
};
