//! Closed forms for the random design and the adaptive fourth-moment bounds.

use std::f64::consts::{FRAC_2_PI, SQRT_2};

/// Exact `E[|A tau|^2]` under the random design on an Erdős–Rényi graph
/// with unit diagonal: `n^2 p (1 - p) + n (1 - 2p)(1 - p)`.
pub fn theorem1_exact(n: usize, p: f64) -> f64 {
    let n = n as f64;
    n * n * p * (1.0 - p) + n * (1.0 - 2.0 * p) * (1.0 - p)
}

/// Upper bound on `limsup E[I_n^4] / n^4` for the adaptive design on an
/// Erdős–Rényi graph.
pub fn theorem2_bound(p: f64, b: f64) -> f64 {
    let q = p * (1.0 - p);
    let lean = 2.0 * b - 1.0;
    q * q - lean * (2.0 - SQRT_2 * lean).powf(1.5) * q.powf(2.5) / 8.0
}

/// Bound on `limsup E[I_n^4] / (n^4 sigma^4)` for the adaptive design on a
/// Gaussian orthogonal ensemble. Independent of `sigma`.
pub fn theorem3_bound(b: f64) -> f64 {
    let lean = 2.0 * b - 1.0;
    let c = FRAC_2_PI.sqrt();
    1.0 - 0.25 * lean * c * (4.0 - c * lean).powf(1.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_value_at_200() {
        assert_eq!(theorem1_exact(200, 0.2), 6496.0);
        assert_eq!(theorem1_exact(50, 0.5), 625.0);
    }

    #[test]
    fn two_subjects_match_enumeration() {
        // A12 ~ Bernoulli(p); the first pair gives 2 (1 - A12)^2.
        for p in [0.1, 0.3, 0.7] {
            let enumerated = p * 0.0 + (1.0 - p) * 2.0;
            assert!((theorem1_exact(2, p) - enumerated).abs() < 1e-12);
        }
    }

    #[test]
    fn ratio_tends_to_variance() {
        let p = 0.3;
        let gaps: Vec<f64> = [10, 100, 1000, 10000]
            .iter()
            .map(|&n| (theorem1_exact(n, p) / (n * n) as f64 - p * (1.0 - p)).abs())
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]));
        assert!(gaps[3] < 1e-4);
    }

    #[test]
    fn fair_coin_bounds_reduce_to_the_random_design() {
        let q: f64 = 0.2 * (1.0 - 0.2);
        assert_eq!(theorem2_bound(0.2, 0.5), q * q);
        assert_eq!(theorem3_bound(0.5), 1.0);
    }
}
