use std::collections::HashMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::seeds::{derive_seed, stream_seed, Stream};
use super::stats::SampleStats;
use crate::design::{run_design, DesignConfig, Policy};
use crate::error::{param, Result};
use crate::graph::{gen_er, gen_goe, gen_sbm, EdgeListGraph, ErParams, GoeParams, Graph, SbmParams};
use crate::outcome::{simulate_on_graph, OutcomeParams};

/// Source of one graph per replicate.
#[derive(Debug, Clone)]
pub enum GraphModel {
    Er {
        p: f64,
    },
    /// Erdős–Rényi with `p_n = ln(n) / (c n)`.
    SparseEr {
        c: f64,
    },
    Sbm {
        p_in: f64,
        p_out: f64,
    },
    Goe {
        sigma2: f64,
    },
    /// GOE with `sigma_n^2 = p_n (1 - p_n)`, `p_n = ln(n) / (c n)`.
    SparseGoe {
        c: f64,
    },
    /// Node-induced uniform samples of a loaded network, one per replicate.
    Real {
        graph: Arc<EdgeListGraph>,
    },
}

/// Parameter columns of one generated graph.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ModelParams {
    pub p: Option<f64>,
    pub p_in: Option<f64>,
    pub p_out: Option<f64>,
    pub sigma2: Option<f64>,
}

impl GraphModel {
    pub fn label(&self) -> &'static str {
        match self {
            GraphModel::Er { .. } => "er",
            GraphModel::SparseEr { .. } => "er-sparse",
            GraphModel::Sbm { .. } => "sbm",
            GraphModel::Goe { .. } => "goe",
            GraphModel::SparseGoe { .. } => "goe-sparse",
            GraphModel::Real { .. } => "real",
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        match self {
            GraphModel::Er { p } => ErParams::new(n, *p).map(drop),
            GraphModel::SparseEr { c } => ErParams::sparse(n, *c).map(drop),
            GraphModel::Sbm { p_in, p_out } => SbmParams::new(n, *p_in, *p_out).map(drop),
            GraphModel::Goe { sigma2 } => GoeParams::new(n, *sigma2).map(drop),
            GraphModel::SparseGoe { c } => ErParams::sparse(n, *c).map(drop),
            GraphModel::Real { graph } if n > graph.n() => Err(param(format!(
                "sample size {n} exceeds the {} nodes of the network",
                graph.n()
            ))),
            GraphModel::Real { .. } if n < 2 => Err(param("sample size must be at least 2")),
            GraphModel::Real { .. } => Ok(()),
        }
    }

    /// Draws a graph with `n` nodes. Real samples report their measured
    /// density in the `p` column.
    pub fn generate(&self, n: usize, seed: u64) -> Result<(Graph, ModelParams)> {
        Ok(match self {
            GraphModel::Er { p } => (
                gen_er(ErParams::new(n, *p)?, seed)?,
                ModelParams {
                    p: Some(*p),
                    ..Default::default()
                },
            ),
            GraphModel::SparseEr { c } => {
                let params = ErParams::sparse(n, *c)?;
                (
                    gen_er(params, seed)?,
                    ModelParams {
                        p: Some(params.p),
                        ..Default::default()
                    },
                )
            }
            GraphModel::Sbm { p_in, p_out } => (
                gen_sbm(SbmParams::new(n, *p_in, *p_out)?, seed)?,
                ModelParams {
                    p_in: Some(*p_in),
                    p_out: Some(*p_out),
                    ..Default::default()
                },
            ),
            GraphModel::Goe { sigma2 } => (
                gen_goe(GoeParams::new(n, *sigma2)?, seed)?,
                ModelParams {
                    sigma2: Some(*sigma2),
                    ..Default::default()
                },
            ),
            GraphModel::SparseGoe { c } => {
                let p = ErParams::sparse(n, *c)?.p;
                let sigma2 = p * (1.0 - p);
                (
                    gen_goe(GoeParams::new(n, sigma2)?, seed)?,
                    ModelParams {
                        sigma2: Some(sigma2),
                        ..Default::default()
                    },
                )
            }
            GraphModel::Real { graph } => {
                let (sample, _) = graph.induced_subgraph_sample(n, seed)?;
                let density = sample.density()?;
                (
                    sample,
                    ModelParams {
                        p: Some(density),
                        ..Default::default()
                    },
                )
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolicySet {
    Adaptive,
    Random,
    Both,
}

impl PolicySet {
    pub fn policies(self) -> &'static [Policy] {
        match self {
            PolicySet::Adaptive => &[Policy::Adaptive],
            PolicySet::Random => &[Policy::Random],
            PolicySet::Both => &[Policy::Random, Policy::Adaptive],
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub model: GraphModel,
    pub sizes: Vec<usize>,
    pub policies: PolicySet,
    /// Biasing probability of the adaptive policy.
    pub bias: f64,
    pub outcome: Option<OutcomeParams>,
    pub reps: usize,
    pub seed: u64,
    /// Permit odd sizes.
    pub allow_odd: bool,
}

impl ExperimentSpec {
    pub fn new(model: GraphModel, sizes: Vec<usize>, policies: PolicySet, bias: f64, reps: usize, seed: u64) -> Self {
        ExperimentSpec {
            model,
            sizes,
            policies,
            bias,
            outcome: None,
            reps,
            seed,
            allow_odd: false,
        }
    }

    pub fn with_outcome(mut self, outcome: OutcomeParams) -> Self {
        self.outcome = Some(outcome);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(param("at least one replicate is required"));
        }
        if self.sizes.is_empty() {
            return Err(param("no graph sizes given"));
        }
        for &n in &self.sizes {
            if n % 2 == 1 && !self.allow_odd {
                return Err(param(format!("size {n} is odd")));
            }
            self.model.validate(n)?;
        }
        if self.policies != PolicySet::Random {
            DesignConfig::adaptive(self.bias, 0)?;
        }
        if let Some(o) = &self.outcome {
            o.validate()?;
        }
        Ok(())
    }
}

/// One design run within one replicate.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicateRecord {
    pub model: String,
    pub n: usize,
    pub policy: Policy,
    /// Effective biasing probability (1/2 for the random policy).
    pub bias: f64,
    pub params: ModelParams,
    pub replicate: usize,
    /// `I_n` with the `I_{2m+1} = I_{2m}` convention.
    pub imbalance: f64,
    pub squared: f64,
    pub fourth: f64,
    pub two_i_over_n: f64,
    pub estimate: Option<f64>,
    /// Seed of the replicate; every stream of the replicate derives from it.
    pub seed: u64,
}

fn run_replicate(spec: &ExperimentSpec, cell: usize, n: usize, replicate: usize) -> Result<Vec<ReplicateRecord>> {
    let seed = derive_seed(spec.seed, &[cell as u64, replicate as u64]);
    let (graph, params) = spec.model.generate(n, stream_seed(seed, Stream::Graph))?;
    let mut out = Vec::with_capacity(2);
    for &policy in spec.policies.policies() {
        let (design_stream, outcome_stream) = match policy {
            Policy::Random => (Stream::RandomDesign, Stream::RandomOutcome),
            Policy::Adaptive => (Stream::AdaptiveDesign, Stream::AdaptiveOutcome),
        };
        let cfg = match policy {
            Policy::Random => DesignConfig::random(stream_seed(seed, design_stream)),
            Policy::Adaptive => DesignConfig::adaptive(spec.bias, stream_seed(seed, design_stream))?,
        };
        let run = run_design(&graph, &cfg)?;
        let estimate = match &spec.outcome {
            Some(o) => {
                let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(seed, outcome_stream));
                Some(simulate_on_graph(&graph, &run.signs, o, &mut rng)?.estimate)
            }
            None => None,
        };
        let squared = run.reported_squared;
        let imbalance = squared.sqrt();
        out.push(ReplicateRecord {
            model: spec.model.label().to_owned(),
            n,
            policy,
            bias: cfg.effective_bias(),
            params,
            replicate,
            imbalance,
            squared,
            fourth: squared * squared,
            two_i_over_n: 2.0 * imbalance / n as f64,
            estimate,
            seed,
        });
    }
    Ok(out)
}

/// Runs every (size, replicate) cell in parallel. Output is ordered by
/// size, replicate, then policy, and is a pure function of the spec.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<ReplicateRecord>> {
    spec.validate()?;
    let jobs: Vec<(usize, usize, usize)> = spec
        .sizes
        .iter()
        .enumerate()
        .flat_map(|(cell, &n)| (0..spec.reps).map(move |r| (cell, n, r)))
        .collect();
    let batches = jobs
        .par_iter()
        .map(|&(cell, n, r)| run_replicate(spec, cell, n, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(batches.into_iter().flatten().collect())
}

/// Aggregate over the replicates of one (model, size, policy) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSummary {
    pub model: String,
    pub n: usize,
    pub policy: Policy,
    pub reps: usize,
    pub squared: SampleStats,
    pub fourth: SampleStats,
    pub imbalance: SampleStats,
    pub two_i_over_n: SampleStats,
    pub estimate: Option<SampleStats>,
}

impl MomentSummary {
    /// Mean and standard error of `I^2 / n^2`.
    pub fn normalized_squared(&self) -> (f64, f64) {
        let scale = (self.n as f64).powi(2);
        (self.squared.mean / scale, self.squared.std_error / scale)
    }

    /// Mean and standard error of `I^4 / n^4`.
    pub fn normalized_fourth(&self) -> (f64, f64) {
        let scale = (self.n as f64).powi(4);
        (self.fourth.mean / scale, self.fourth.std_error / scale)
    }
}

/// Groups records by (model, size, policy) in order of first appearance.
pub fn summarize(records: &[ReplicateRecord]) -> Vec<MomentSummary> {
    let mut order: Vec<(String, usize, Policy)> = Vec::new();
    let mut groups: HashMap<(String, usize, Policy), Vec<&ReplicateRecord>> = HashMap::new();
    for r in records {
        let key = (r.model.clone(), r.n, r.policy);
        groups
            .entry(key.clone())
            .or_insert_with(|| {
                order.push(key);
                Vec::new()
            })
            .push(r);
    }
    order
        .into_iter()
        .map(|key| {
            let rows = &groups[&key];
            let column = |f: fn(&ReplicateRecord) -> f64| -> SampleStats {
                let values: Vec<f64> = rows.iter().map(|r| f(r)).collect();
                SampleStats::from_values(&values).expect("non-empty group")
            };
            let estimates: Vec<f64> = rows.iter().filter_map(|r| r.estimate).collect();
            MomentSummary {
                model: key.0,
                n: key.1,
                policy: key.2,
                reps: rows.len(),
                squared: column(|r| r.squared),
                fourth: column(|r| r.fourth),
                imbalance: column(|r| r.imbalance),
                two_i_over_n: column(|r| r.two_i_over_n),
                estimate: SampleStats::from_values(&estimates),
            }
        })
        .collect()
}
