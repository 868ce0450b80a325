//! Network-correlated outcomes and the difference-in-means estimator.
//!
//! Subject `i` responds with
//! `X_i = mu0 (1 - T_i) + mu1 T_i + A_i. Z + eps_i`, where
//! `Z ~ N(0, sigma_z^2 I)` and `eps_i ~ N(0, sigma_eps^2)`. The estimator
//! `W = (2 / n) tau . X` is unbiased for `mu0 - mu1`. For odd `n`, `W` uses
//! the first `n - 1` (paired) subjects only.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::design::{full_imbalance, SignVector};
use crate::error::{contract, param, Result};
use crate::graph::{Adjacency, Graph, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeParams {
    pub mu0: f64,
    pub mu1: f64,
    pub sigma_z: f64,
    pub sigma_eps: f64,
}

impl OutcomeParams {
    pub fn new(mu0: f64, mu1: f64, sigma_z: f64, sigma_eps: f64) -> Result<Self> {
        let p = OutcomeParams {
            mu0,
            mu1,
            sigma_z,
            sigma_eps,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mu0.is_finite() && self.mu1.is_finite()) {
            return Err(param("effect sizes must be finite"));
        }
        if !(self.sigma_z >= 0.0 && self.sigma_z.is_finite()) || !(self.sigma_eps >= 0.0 && self.sigma_eps.is_finite())
        {
            return Err(param("standard deviations must be finite and non-negative"));
        }
        Ok(())
    }

    pub fn effect(&self) -> f64 {
        self.mu0 - self.mu1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub outcomes: Vec<f64>,
    pub estimate: f64,
}

/// Number of subjects entering `W`.
pub fn paired_len(n: usize) -> usize {
    n - n % 2
}

/// `W = (2 / n') sum_{i < n'} tau_i X_i` with `n'` the paired prefix length.
pub fn estimator(signs: &SignVector, outcomes: &[f64]) -> f64 {
    let m = paired_len(signs.len());
    let sum: f64 = signs.as_slice()[..m]
        .iter()
        .zip(outcomes)
        .map(|(&s, &x)| if s < 0 { -x } else { x })
        .sum();
    2.0 * sum / m as f64
}

fn check_signs(n: usize, signs: &SignVector) -> Result<()> {
    if signs.len() != n {
        return Err(contract(format!("{} signs for {n} subjects", signs.len())));
    }
    if n < 2 {
        return Err(contract("estimator needs at least one pair"));
    }
    Ok(())
}

/// Outcome vector for given covariates and noise.
pub fn outcomes_from<G: Adjacency + ?Sized>(
    g: &G,
    signs: &SignVector,
    params: &OutcomeParams,
    covariates: &[f64],
    noise: &[f64],
) -> Vec<f64> {
    signs
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let effect = if s > 0 { params.mu0 } else { params.mu1 };
            effect + g.row_dot(i, covariates) + noise[i]
        })
        .collect()
}

pub fn simulate_outcomes<G, R>(g: &G, signs: &SignVector, params: &OutcomeParams, rng: &mut R) -> Result<TrialOutcome>
where
    G: Adjacency + ?Sized,
    R: RngCore + ?Sized,
{
    params.validate()?;
    check_signs(g.n(), signs)?;
    let n = g.n();
    let covariates: Vec<f64> = (0..n)
        .map(|_| params.sigma_z * rng.sample::<f64, _>(StandardNormal))
        .collect();
    let noise: Vec<f64> = (0..n)
        .map(|_| params.sigma_eps * rng.sample::<f64, _>(StandardNormal))
        .collect();
    let outcomes = outcomes_from(g, signs, params, &covariates, &noise);
    let estimate = estimator(signs, &outcomes);
    Ok(TrialOutcome { outcomes, estimate })
}

/// `simulate_outcomes` for either graph kind.
pub fn simulate_on_graph<R: RngCore + ?Sized>(
    g: &Graph,
    signs: &SignVector,
    params: &OutcomeParams,
    rng: &mut R,
) -> Result<TrialOutcome> {
    match g {
        Graph::Binary(b) => simulate_outcomes(b, signs, params, rng),
        Graph::Weighted(w) => simulate_outcomes(w, signs, params, rng),
    }
}

/// `var[W] = 4 |A tau|^2 sigma_z^2 / n^2 + 4 sigma_eps^2 / n` for even `n`.
pub fn analytic_variance<G: Adjacency + ?Sized>(g: &G, signs: &SignVector, params: &OutcomeParams) -> Result<f64> {
    params.validate()?;
    check_signs(g.n(), signs)?;
    let n = g.n();
    if !n.is_multiple_of(2) {
        return Err(contract("analytic variance needs an even number of subjects"));
    }
    let norm_sq = full_imbalance(g, signs)?.to_f64();
    Ok(variance_from_norm(n, norm_sq, params))
}

pub(crate) fn variance_from_norm(n: usize, norm_sq: f64, params: &OutcomeParams) -> f64 {
    let n = n as f64;
    4.0 * norm_sq * params.sigma_z * params.sigma_z / (n * n) + 4.0 * params.sigma_eps * params.sigma_eps / n
}

/// Sample mean and standard error of `W` over `reps` simulations with the
/// graph and assignment held fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorCheck {
    pub mean: f64,
    pub std_error: f64,
    pub variance: f64,
    pub reps: usize,
}

pub fn unbiasedness_check<G: Adjacency + ?Sized>(
    g: &G,
    signs: &SignVector,
    params: &OutcomeParams,
    reps: usize,
    seed: u64,
) -> Result<EstimatorCheck> {
    if reps < 2 {
        return Err(param("unbiasedness check needs at least 2 replicates"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draws = Vec::with_capacity(reps);
    for _ in 0..reps {
        draws.push(simulate_outcomes(g, signs, params, &mut rng)?.estimate);
    }
    let mean = draws.iter().sum::<f64>() / reps as f64;
    let variance = draws.iter().map(|w| (w - mean).powi(2)).sum::<f64>() / (reps - 1) as f64;
    Ok(EstimatorCheck {
        mean,
        std_error: (variance / reps as f64).sqrt(),
        variance,
        reps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::BinaryGraph;

    fn balanced(n: usize) -> SignVector {
        SignVector::new((0..n).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect()).unwrap()
    }

    #[test]
    fn noiseless_outcomes_are_exact() {
        let g = BinaryGraph::complete(6);
        let signs = SignVector::new(vec![1, -1, -1, 1, 1, -1]).unwrap();
        let params = OutcomeParams::new(2.5, -1.0, 0.0, 0.0).unwrap();
        let t = simulate_outcomes(&g, &signs, &params, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        for (x, s) in t.outcomes.iter().zip(signs.as_slice()) {
            assert_eq!(*x, if *s > 0 { 2.5 } else { -1.0 });
        }
        assert_eq!(t.estimate, 3.5);
    }

    #[test]
    fn identity_graph_outcome_is_covariate_plus_noise() {
        let g = BinaryGraph::identity(4);
        let signs = balanced(4);
        let params = OutcomeParams::new(0.0, 0.0, 1.0, 1.0).unwrap();
        let z = [0.1, -0.2, 0.3, 0.4];
        let e = [1.0, 2.0, 3.0, 4.0];
        let x = outcomes_from(&g, &signs, &params, &z, &e);
        for i in 0..4 {
            assert_eq!(x[i], z[i] + e[i]);
        }
    }

    #[test]
    fn variance_without_covariates() {
        let g = BinaryGraph::identity(10);
        let params = OutcomeParams::new(0.0, 0.0, 0.0, 2.0).unwrap();
        let v = analytic_variance(&g, &balanced(10), &params).unwrap();
        assert!((v - 4.0 * 4.0 / 10.0).abs() < 1e-15);
    }

    #[test]
    fn complete_graph_variance_has_no_covariate_term() {
        let g = BinaryGraph::complete(10);
        let params = OutcomeParams::new(0.0, 0.0, 3.0, 1.0).unwrap();
        let v = analytic_variance(&g, &balanced(10), &params).unwrap();
        assert_eq!(v, 0.4);
    }

    #[test]
    fn odd_n_uses_the_paired_prefix() {
        let g = BinaryGraph::identity(5);
        let signs = SignVector::new(vec![1, -1, 1, -1, 1]).unwrap();
        let params = OutcomeParams::new(1.0, 0.0, 0.0, 0.0).unwrap();
        let t = simulate_outcomes(&g, &signs, &params, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert_eq!(t.estimate, 1.0);
        assert!(analytic_variance(&g, &signs, &params).is_err());
    }

    #[test]
    fn incomplete_signs_are_rejected() {
        let g = BinaryGraph::identity(4);
        let params = OutcomeParams::new(0.0, 0.0, 1.0, 1.0).unwrap();
        let short = balanced(2);
        assert!(simulate_outcomes(&g, &short, &params, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
    }

    #[test]
    fn noiseless_check_has_zero_error() {
        let g = BinaryGraph::complete(8);
        let params = OutcomeParams::new(1.0, 0.25, 0.0, 0.0).unwrap();
        let c = unbiasedness_check(&g, &balanced(8), &params, 10, 3).unwrap();
        assert_eq!(c.mean, 0.75);
        assert_eq!(c.std_error, 0.0);
        assert!(unbiasedness_check(&g, &balanced(8), &params, 1, 3).is_err());
    }

    #[test]
    fn negative_deviations_are_rejected() {
        assert!(OutcomeParams::new(0.0, 0.0, -1.0, 0.0).is_err());
        assert!(OutcomeParams::new(f64::NAN, 0.0, 1.0, 0.0).is_err());
    }
}
