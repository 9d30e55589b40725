//! Experiment harness for `optirefine`: synthetic datasets, file formats,
//! metrics, exhaustive oracles, approximation-ratio curves and seeded
//! batch experiments written as CSV.

pub mod error;
pub mod experiment;
pub mod io;
pub mod metrics;
pub mod oracle;
pub mod ratio;
pub mod sbm;

pub use error::{BenchError, Result};
