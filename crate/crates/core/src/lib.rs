//! Random K-out graphs under uniform random node deletion.
//!
//! Each of `n` nodes picks `k` distinct other nodes uniformly at random and
//! the orientation of the picks is dropped. This crate samples such graphs
//! (and Erdős–Rényi baselines with matched mean degree), deletes a uniformly
//! random set of nodes, measures connectivity and the giant component of the
//! survivors, evaluates closed-form thresholds and cut bounds, and runs
//! reproducible Monte Carlo sweeps. Tiny instances can be solved exactly by
//! enumeration.
//!
//! The numeric routines in [`thresholds`] are generic over [`Scalar`]
//! (`f32`/`f64`); exact results use the [`Exact`] rational type.

pub mod analysis;
pub mod deletion;
pub mod error;
pub mod graph;
pub mod montecarlo;
pub mod oracle;
pub mod scalar;
pub mod seed;
pub mod thresholds;

pub use analysis::{components, is_connected, ComponentSummary};
pub use deletion::{delete_explicit, delete_uniform, DeletionAmount, DeletionSpec, ResidualGraph};
pub use error::{Error, Result};
pub use graph::{
    adjacency_from_selections, sample_er, sample_kout, AnyGraph, BaselineGraph, Graph, GraphFile,
    KOutGraph, NodeId, SelectionProfile,
};
pub use montecarlo::{
    compare_er, run_sweep, run_trial, ExperimentConfig, GraphParam, Model, RunOptions, SweepResult,
    SweepRow, TrialResult,
};
pub use oracle::{exact_probability, Predicate};
pub use scalar::Scalar;
pub use seed::Seed;
pub use thresholds::{BoundReport, DeletionLevel, Goal, Regime, ThresholdOutcome, ThresholdQuery};

/// Default real type used by the CLI and the Monte Carlo layer.
pub type Real = f64;

/// Exact probabilities produced by enumeration and closed-form binomial ratios.
pub type Exact = num_rational::Ratio<num_bigint::BigUint>;

pub type BoundReport64 = BoundReport<f64>;
pub type ThresholdQuery64 = ThresholdQuery<f64>;
pub type ThresholdOutcome64 = ThresholdOutcome<f64>;
