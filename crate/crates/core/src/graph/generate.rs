//! Random graph models. Every generator is a pure function of its
//! parameters and seed.

use rand::distr::{Bernoulli, Distribution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{BinaryGraph, Graph, WeightedGraph};
use crate::error::{param, Result};

fn check_probability(name: &str, p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(param(format!("{name} must lie in (0, 1), got {p}")))
    }
}

fn check_size(n: usize) -> Result<()> {
    if n >= 2 {
        Ok(())
    } else {
        Err(param(format!("graph needs at least 2 nodes, got {n}")))
    }
}

/// Erdős–Rényi model: every off-diagonal pair is connected independently
/// with probability `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErParams {
    pub n: usize,
    pub p: f64,
}

impl ErParams {
    pub fn new(n: usize, p: f64) -> Result<Self> {
        let params = ErParams { n, p };
        params.validate()?;
        Ok(params)
    }

    /// Sparse regime `p_n = ln(n) / (c n)`.
    pub fn sparse(n: usize, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(param(format!("sparse density constant must be positive, got {c}")));
        }
        Self::new(n, (n as f64).ln() / (c * n as f64))
    }

    pub fn validate(&self) -> Result<()> {
        check_size(self.n)?;
        check_probability("p", self.p)
    }
}

/// Two-group stochastic block model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SbmParams {
    pub n: usize,
    pub p_in: f64,
    pub p_out: f64,
}

impl SbmParams {
    pub fn new(n: usize, p_in: f64, p_out: f64) -> Result<Self> {
        let params = SbmParams { n, p_in, p_out };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        check_size(self.n)?;
        check_probability("p_in", self.p_in)?;
        check_probability("p_out", self.p_out)?;
        if self.p_out > self.p_in {
            return Err(param(format!(
                "p_out ({}) must not exceed p_in ({})",
                self.p_out, self.p_in
            )));
        }
        Ok(())
    }

    /// Expected density when groups are assigned by fair coin.
    pub fn mean_density(&self) -> f64 {
        (self.p_in + self.p_out) / 2.0
    }
}

/// Gaussian orthogonal ensemble with unit diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoeParams {
    pub n: usize,
    pub sigma2: f64,
}

impl GoeParams {
    pub fn new(n: usize, sigma2: f64) -> Result<Self> {
        let params = GoeParams { n, sigma2 };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        check_size(self.n)?;
        if self.sigma2 > 0.0 && self.sigma2.is_finite() {
            Ok(())
        } else {
            Err(param(format!(
                "sigma^2 must be finite and positive, got {}",
                self.sigma2
            )))
        }
    }
}

pub fn gen_er(params: ErParams, seed: u64) -> Result<Graph> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coin = Bernoulli::new(params.p).map_err(|e| param(e.to_string()))?;
    let mut g = BinaryGraph::identity(params.n);
    for i in 0..params.n {
        for j in i + 1..params.n {
            if coin.sample(&mut rng) {
                g.add_edge(i, j);
            }
        }
    }
    Ok(Graph::Binary(g))
}

/// Stochastic block model with group labels drawn by fair coin per node.
pub fn gen_sbm(params: SbmParams, seed: u64) -> Result<Graph> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<u8> = (0..params.n).map(|_| rng.random_range(0..2u8)).collect();
    Ok(Graph::Binary(sbm_edges(&labels, params.p_in, params.p_out, &mut rng)?))
}

/// Stochastic block model with caller-supplied group labels. Rates may be
/// the degenerate values 0 and 1.
pub fn gen_sbm_with_labels(labels: &[u8], p_in: f64, p_out: f64, seed: u64) -> Result<Graph> {
    check_size(labels.len())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(Graph::Binary(sbm_edges(labels, p_in, p_out, &mut rng)?))
}

fn sbm_edges(labels: &[u8], p_in: f64, p_out: f64, rng: &mut ChaCha8Rng) -> Result<BinaryGraph> {
    let within = Bernoulli::new(p_in).map_err(|e| param(format!("p_in: {e}")))?;
    let between = Bernoulli::new(p_out).map_err(|e| param(format!("p_out: {e}")))?;
    let n = labels.len();
    let mut g = BinaryGraph::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            let coin = if labels[i] == labels[j] { &within } else { &between };
            if coin.sample(rng) {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

pub fn gen_goe(params: GoeParams, seed: u64) -> Result<Graph> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = params.sigma2.sqrt();
    let mut g = WeightedGraph::identity(params.n);
    for i in 0..params.n {
        for j in i + 1..params.n {
            let z: f64 = rng.sample(StandardNormal);
            g.set_weight(i, j, sigma * z);
        }
    }
    Ok(Graph::Weighted(g))
}
