//! Reliability-aware placement of service function chains on heterogeneous
//! fog servers.
//!
//! * [`model`]: infrastructure, workload and solution types, dataset I/O and
//!   the random instance generator.
//! * [`reliability`]: per-strategy reliability and cost kernels with Markov
//!   and Monte-Carlo oracles.
//! * [`evaluator`]: constraint checks, normalization and fitness.
//! * [`solvers`]: the two genetic algorithms, a random baseline and an
//!   exhaustive solver for tiny instances.

pub mod error;
pub mod evaluator;
pub mod model;
pub mod reliability;
pub mod solvers;

pub use error::{ModelError, SolveError};
