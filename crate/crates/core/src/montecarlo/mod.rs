//! Replication harness: draws graphs, runs both designs, optionally
//! simulates outcomes and aggregates moments.

mod bounds;
mod experiment;
mod reduction;
mod seeds;
mod stats;

pub use bounds::{theorem1_exact, theorem2_bound, theorem3_bound};
pub use experiment::{
    run_experiment, summarize, ExperimentSpec, GraphModel, ModelParams, MomentSummary, PolicySet, ReplicateRecord,
};
pub use reduction::{reduction_from_records, reduction_report, ReductionReport};
pub use seeds::{derive_seed, stream_seed, Stream};
pub use stats::{quantile_sorted, SampleStats, Z95};
