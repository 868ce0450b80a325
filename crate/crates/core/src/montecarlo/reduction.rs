use rayon::prelude::*;

use super::seeds::{derive_seed, stream_seed, Stream};
use super::stats::SampleStats;
use super::ReplicateRecord;
use crate::design::{run_design, DesignConfig, Policy};
use crate::error::{param, Result};
use crate::graph::Graph;

/// Adaptive against random design on the same network.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionReport {
    pub n: usize,
    pub reps: usize,
    pub adaptive_mean: f64,
    pub adaptive_se: f64,
    pub random_mean: f64,
    pub random_se: f64,
    /// `1 - adaptive / random`; 0 when the random mean is 0.
    pub reduction: f64,
    /// The random mean was 0 and `reduction` was set to 0.
    pub zero_random: bool,
    /// Mean density of the sampled networks, when recorded.
    pub mean_density: Option<f64>,
}

impl ReductionReport {
    fn new(n: usize, adaptive: &[f64], random: &[f64], mean_density: Option<f64>) -> Self {
        let a = SampleStats::from_values(adaptive).expect("at least one replicate");
        let r = SampleStats::from_values(random).expect("at least one replicate");
        let zero_random = r.mean == 0.0;
        ReductionReport {
            n,
            reps: adaptive.len(),
            adaptive_mean: a.mean,
            adaptive_se: a.std_error,
            random_mean: r.mean,
            random_se: r.std_error,
            reduction: if zero_random { 0.0 } else { 1.0 - a.mean / r.mean },
            zero_random,
            mean_density,
        }
    }

    /// The adaptive mean lies below the random mean by more than `k`
    /// standard errors of the difference.
    pub fn adaptive_lower_by(&self, k: f64) -> bool {
        let se = (self.adaptive_se.powi(2) + self.random_se.powi(2)).sqrt();
        self.random_mean - self.adaptive_mean > k * se
    }
}

/// Runs both policies `reps` times on a fixed graph with independent seeds
/// and compares the mean final imbalance `I_n`.
pub fn reduction_report(g: &Graph, bias: f64, reps: usize, seed: u64) -> Result<ReductionReport> {
    if reps == 0 {
        return Err(param("at least one replicate is required"));
    }
    let adaptive = DesignConfig::adaptive(bias, 0)?;
    let pairs = (0..reps)
        .into_par_iter()
        .map(|r| {
            let rep_seed = derive_seed(seed, &[r as u64]);
            let a = run_design(g, &adaptive.with_seed(stream_seed(rep_seed, Stream::AdaptiveDesign)))?;
            let b = run_design(g, &DesignConfig::random(stream_seed(rep_seed, Stream::RandomDesign)))?;
            Ok((a.imbalance(), b.imbalance()))
        })
        .collect::<Result<Vec<_>>>()?;
    let (a, b): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    Ok(ReductionReport::new(g.n(), &a, &b, None))
}

/// Reduction for size `n` from experiment records holding both policies.
pub fn reduction_from_records(records: &[ReplicateRecord], n: usize) -> Option<ReductionReport> {
    let pick = |policy: Policy| -> Vec<f64> {
        records
            .iter()
            .filter(|r| r.n == n && r.policy == policy)
            .map(|r| r.imbalance)
            .collect()
    };
    let adaptive = pick(Policy::Adaptive);
    let random = pick(Policy::Random);
    if adaptive.is_empty() || random.is_empty() {
        return None;
    }
    let densities: Vec<f64> = records
        .iter()
        .filter(|r| r.n == n && r.policy == Policy::Random)
        .filter_map(|r| r.params.p)
        .collect();
    let mean_density = (!densities.is_empty()).then(|| densities.iter().sum::<f64>() / densities.len() as f64);
    Some(ReductionReport::new(n, &adaptive, &random, mean_density))
}
