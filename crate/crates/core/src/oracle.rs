//! Exhaustive references for small instances.
//!
//! Everything here recomputes imbalances from the dense matrix and never
//! goes through the incremental engine, so it can be used to check it.

use crate::design::{DesignConfig, SignVector};
use crate::error::{contract, Error, Result};
use crate::graph::{Adjacency, BinaryGraph, Scalar};

/// Largest `n` accepted by [`brute_force_min`].
pub const MIN_SEARCH_LIMIT: usize = 20;
/// Largest `n` accepted by [`exact_policy_expectation`].
pub const POLICY_TREE_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult<V> {
    /// Smallest `|A tau|^2` over pairwise-balanced `tau`.
    pub min_squared: V,
    /// Number of balanced sign vectors reaching the minimum.
    pub argmin_count: usize,
}

fn check_even_size(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    if n < 2 || !n.is_multiple_of(2) {
        return Err(contract(format!("exhaustive search needs an even n >= 2, got {n}")));
    }
    Ok(())
}

/// Balanced sign vector whose pair `k` is (-1, +1) when bit `k` of `mask` is set.
fn balanced_signs(pairs: usize, mask: u64) -> Vec<i8> {
    (0..pairs)
        .flat_map(|k| if mask >> k & 1 == 1 { [-1, 1] } else { [1, -1] })
        .collect()
}

fn dense_norm_sq<G: Adjacency + ?Sized>(g: &G, signs: &[i8]) -> G::Value {
    let len = signs.len();
    let mut total = G::Value::ZERO;
    for i in 0..len {
        let mut row = G::Value::ZERO;
        for (j, &s) in signs.iter().enumerate() {
            row += g.entry(i, j).signed(s);
        }
        total += row.square();
    }
    total
}

/// Enumerates all `2^(n/2)` pairwise-balanced assignments.
pub fn brute_force_min<G: Adjacency + ?Sized>(g: &G) -> Result<OracleResult<G::Value>> {
    let n = g.n();
    check_even_size(n, MIN_SEARCH_LIMIT)?;
    let pairs = n / 2;
    let mut best: Option<G::Value> = None;
    let mut count = 0;
    for mask in 0..1u64 << pairs {
        let value = dense_norm_sq(g, &balanced_signs(pairs, mask));
        match best {
            Some(b) if value > b => {}
            Some(b) if value == b => count += 1,
            _ => {
                best = Some(value);
                count = 1;
            }
        }
    }
    Ok(OracleResult {
        min_squared: best.expect("at least one assignment"),
        argmin_count: count,
    })
}

/// Uniform average of `|A tau|^2` over all balanced assignments.
pub fn balanced_average<G: Adjacency + ?Sized>(g: &G) -> Result<f64> {
    let n = g.n();
    check_even_size(n, MIN_SEARCH_LIMIT)?;
    let pairs = n / 2;
    let total: f64 = (0..1u64 << pairs)
        .map(|mask| dense_norm_sq(g, &balanced_signs(pairs, mask)).to_f64())
        .sum();
    Ok(total / (1u64 << pairs) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolicyExpectation {
    /// Exact `E[I_n^2]` under the policy.
    pub expected_squared: f64,
    /// A tie between candidates occurred on some path of positive probability.
    pub tie_encountered: bool,
}

/// Exact law of the procedure: walks the full decision tree, weighting the
/// smaller candidate by `b`, the larger by `1 - b` and ties by 1/2.
pub fn exact_policy_expectation<G: Adjacency + ?Sized>(g: &G, cfg: &DesignConfig) -> Result<PolicyExpectation> {
    cfg.validate()?;
    let n = g.n();
    check_even_size(n, POLICY_TREE_LIMIT)?;
    let bias = cfg.effective_bias();
    let mut tie = false;
    let mut signs = Vec::with_capacity(n);
    let mut total = 0.0;
    for first in [[1i8, -1], [-1, 1]] {
        signs.clear();
        signs.extend_from_slice(&first);
        total += 0.5 * descend(g, &mut signs, bias, &mut tie);
    }
    Ok(PolicyExpectation {
        expected_squared: total,
        tie_encountered: tie,
    })
}

fn descend<G: Adjacency + ?Sized>(g: &G, signs: &mut Vec<i8>, bias: f64, tie: &mut bool) -> f64 {
    if signs.len() == g.n() {
        return dense_norm_sq(g, signs).to_f64();
    }
    let mut score = |pair: [i8; 2]| {
        signs.extend_from_slice(&pair);
        let v = dense_norm_sq(g, signs);
        signs.truncate(signs.len() - 2);
        v
    };
    let zero_one = score([1, -1]);
    let one_zero = score([-1, 1]);
    let p_zero_one = if zero_one < one_zero {
        bias
    } else if zero_one > one_zero {
        1.0 - bias
    } else {
        *tie = true;
        0.5
    };
    let mut expected = 0.0;
    for (pair, p) in [([1i8, -1], p_zero_one), ([-1, 1], 1.0 - p_zero_one)] {
        if p == 0.0 {
            continue;
        }
        signs.extend_from_slice(&pair);
        expected += p * descend(g, signs, bias, tie);
        signs.truncate(signs.len() - 2);
    }
    expected
}

/// The three forms of the offline objective for one assignment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UbqpCheck<V> {
    /// `|A tau|^2`
    pub norm_squared: V,
    /// `tau' H tau` with `H = A^2`
    pub quadratic: V,
    /// `tau' (H + lambda 1 1') tau`
    pub penalized: V,
}

/// `H = A^2`, dense.
pub fn gram_matrix<G: Adjacency + ?Sized>(g: &G) -> Vec<Vec<G::Value>> {
    let n = g.n();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut h = G::Value::ZERO;
                    for k in 0..n {
                        h += g.entry(i, k) * g.entry(k, j);
                    }
                    h
                })
                .collect()
        })
        .collect()
}

/// Evaluates the objective as a norm, as a quadratic form in `H = A^2`
/// and in penalty form, and verifies that they agree where they must.
pub fn ubqp_crosscheck<G: Adjacency + ?Sized>(
    g: &G,
    signs: &SignVector,
    lambda: G::Value,
) -> Result<UbqpCheck<G::Value>> {
    let n = g.n();
    if signs.len() != n {
        return Err(contract(format!("{} signs for {n} subjects", signs.len())));
    }
    let tau = signs.as_slice();
    let h = gram_matrix(g);
    let norm_squared = dense_norm_sq(g, tau);
    let mut quadratic = G::Value::ZERO;
    for (i, row) in h.iter().enumerate() {
        for (j, &hij) in row.iter().enumerate() {
            quadratic += hij.signed(tau[i] * tau[j]);
        }
    }
    let mut total = G::Value::ZERO;
    for &s in tau {
        total += G::Value::ONE.signed(s);
    }
    let penalized = quadratic + lambda * total * total;

    if !norm_squared.close(quadratic) {
        return Err(contract(format!(
            "|A tau|^2 = {norm_squared:?} but tau' H tau = {quadratic:?}"
        )));
    }
    if total == G::Value::ZERO && !penalized.close(quadratic) {
        return Err(contract("penalty term does not vanish on a balanced assignment"));
    }
    Ok(UbqpCheck {
        norm_squared,
        quadratic,
        penalized,
    })
}

/// Checks `H_ij` against common-neighbor counts from the bit rows.
pub fn check_common_neighbors(g: &BinaryGraph) -> Result<()> {
    let h = gram_matrix(g);
    for (i, row) in h.iter().enumerate() {
        for (j, &hij) in row.iter().enumerate() {
            if hij != g.common_neighbors(i, j) as i64 {
                return Err(contract(format!(
                    "H[{i}][{j}] = {hij} is not the common-neighbor count"
                )));
            }
        }
    }
    Ok(())
}
