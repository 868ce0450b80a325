//! Pairwise sequential adaptive randomization for experiments whose
//! outcomes are correlated through a network.
//!
//! Subjects arrive in pairs and each pair receives opposite treatments.
//! When a pair arrives only the connections among subjects seen so far
//! are known; the design picks the assignment that keeps the imbalance
//! `|A (1 - 2T)|` smaller with a biasing probability `b`, and a fair coin
//! otherwise.
//!
//! * [`graph`]: random graph models, edge-list ingestion, sampling and the
//!   progressive-revelation view.
//! * [`design`]: the incremental assignment engine.
//! * [`outcome`]: outcome simulation and the difference-in-means estimator.
//! * [`montecarlo`]: replication harness, closed forms and bounds.
//! * [`oracle`]: exhaustive references for small graphs.
//! * [`cli`]: the `netrand` command line and its CSV formats.

pub mod cli;
pub mod design;
pub mod error;
pub mod graph;
pub mod montecarlo;
pub mod oracle;
pub mod outcome;

pub use design::{run_design, run_design_on, DesignConfig, DesignRun, Policy, SignVector};
pub use error::{Error, Result};
pub use graph::{Adjacency, BinaryGraph, EdgeListGraph, Graph, WeightedGraph};
