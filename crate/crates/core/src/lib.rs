//! Submodular cover and submodular maximization under partition-based
//! constraints.
//!
//! The ground set `0..n` is split into disjoint groups. On top of that the
//! crate provides:
//!
//! - query-counted set-function oracles and the concrete objectives
//!   ([`objectives`]): set cover, weighted cover, graph cut, vertex coverage
//!   and log-determinant;
//! - feasibility predicates for per-group count budgets, per-group knapsack
//!   budgets and the fairness matroid ([`constraints`]);
//! - bicriteria maximizers built on block greedy, the partition-matroid
//!   block-greedy family and the baselines ([`maximize`]);
//! - the converters that turn maximizers into cover solvers ([`cover`]);
//! - exhaustive oracles for small instances ([`exact`]);
//! - instance generators ([`instances`]).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, CSV output and
//! the command line live in the `partcover` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod constraints;
pub mod cover;
pub mod error;
pub mod exact;
pub mod ground;
pub mod instances;
pub mod maximize;
pub mod metrics;
pub mod objectives;
pub mod oracle;
pub mod rng;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use ground::{ElementSet, PartitionedGroundSet};
pub use metrics::{compute_metrics, RunMetrics};
pub use oracle::{marginal_gain, QueryCountedOracle, SetFunction};
pub use rng::{fork_rng, SeededRng};

/// Absolute slack used when comparing real-valued budgets against sums.
pub const FEAS_TOL: f64 = 1e-9;
