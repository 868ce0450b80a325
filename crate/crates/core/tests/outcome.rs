use netrand::design::DesignConfig;
use netrand::graph::{gen_er, ErParams};
use netrand::outcome::{
    analytic_variance, estimator, outcomes_from, simulate_outcomes, unbiasedness_check, OutcomeParams,
};
use netrand::{run_design_on, BinaryGraph, SignVector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn er(n: usize, p: f64, seed: u64) -> BinaryGraph {
    gen_er(ErParams::new(n, p).unwrap(), seed)
        .unwrap()
        .as_binary()
        .unwrap()
        .clone()
}

fn assignment(g: &BinaryGraph, seed: u64) -> SignVector {
    run_design_on(g, &DesignConfig::adaptive(0.9, seed).unwrap())
        .unwrap()
        .signs
}

#[test]
fn noiseless_outcomes_recover_the_effect_exactly() {
    let g = er(40, 0.3, 1);
    let signs = assignment(&g, 1);
    let params = OutcomeParams::new(2.5, -0.5, 0.0, 0.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let t = simulate_outcomes(&g, &signs, &params, &mut rng).unwrap();
    for (x, &s) in t.outcomes.iter().zip(signs.as_slice()) {
        assert_eq!(*x, if s > 0 { 2.5 } else { -0.5 });
    }
    assert_eq!(t.estimate, 3.0);
    let check = unbiasedness_check(&g, &signs, &params, 10, 0).unwrap();
    assert_eq!(check.mean, 3.0);
    assert_eq!(check.std_error, 0.0);
}

#[test]
fn identity_graph_outcome_variance() {
    let g = BinaryGraph::identity(2000);
    let signs = SignVector::new((0..2000).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect()).unwrap();
    let params = OutcomeParams::new(0.0, 0.0, 1.5, 0.5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = simulate_outcomes(&g, &signs, &params, &mut rng).unwrap().outcomes;
    let m = x.len() as f64;
    let mean = x.iter().sum::<f64>() / m;
    let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0);
    let target = 1.5f64.powi(2) + 0.5f64.powi(2);
    assert!(
        (var - target).abs() <= 3.0 * target * (2.0 / m).sqrt(),
        "variance {var}"
    );
}

#[test]
fn analytic_variance_special_cases() {
    let g = er(30, 0.4, 2);
    let signs = assignment(&g, 2);
    let no_covariate = OutcomeParams::new(0.0, 0.0, 0.0, 2.0).unwrap();
    assert_eq!(analytic_variance(&g, &signs, &no_covariate).unwrap(), 4.0 * 4.0 / 30.0);
    let complete = BinaryGraph::complete(30);
    let params = OutcomeParams::new(0.0, 0.0, 3.0, 2.0).unwrap();
    let balanced = assignment(&complete, 0);
    assert_eq!(
        analytic_variance(&complete, &balanced, &params).unwrap(),
        4.0 * 4.0 / 30.0
    );
}

#[test]
fn variance_matches_simulation() {
    let g = er(60, 0.2, 4);
    let signs = assignment(&g, 4);
    let params = OutcomeParams::new(0.0, 0.0, 1.0, 1.0).unwrap();
    let check = unbiasedness_check(&g, &signs, &params, 100_000, 5).unwrap();
    let analytic = analytic_variance(&g, &signs, &params).unwrap();
    assert!(
        (check.variance - analytic).abs() <= 0.03 * analytic,
        "{} vs {analytic}",
        check.variance
    );
    assert!(check.mean.abs() <= 3.0 * check.std_error);
}

#[test]
fn estimator_is_unbiased_for_a_unit_effect() {
    let g = er(50, 0.3, 6);
    let signs = assignment(&g, 6);
    let params = OutcomeParams::new(1.0, 0.0, 1.0, 1.0).unwrap();
    let check = unbiasedness_check(&g, &signs, &params, 20_000, 7).unwrap();
    assert!((check.mean - 1.0).abs() <= 3.0 * check.std_error, "mean {}", check.mean);
}

#[test]
fn odd_cohorts_drop_the_unpaired_subject() {
    let signs = SignVector::new(vec![1, -1, -1, 1, 1]).unwrap();
    let x = [1.0, 2.0, 3.0, 4.0, 100.0];
    assert_eq!(estimator(&signs, &x), 2.0 * (1.0 - 2.0 - 3.0 + 4.0) / 4.0);
}

#[test]
fn mismatched_assignment_is_a_contract_error() {
    let g = er(10, 0.3, 8);
    let signs = SignVector::new(vec![1, -1]).unwrap();
    let params = OutcomeParams::new(0.0, 0.0, 1.0, 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    assert!(simulate_outcomes(&g, &signs, &params, &mut rng).is_err());
    assert!(OutcomeParams::new(0.0, 0.0, -1.0, 1.0).is_err());
}

proptest! {
    #[test]
    fn relabelling_negates_the_estimate(
        n in 1usize..=30, seed in any::<u64>(), mu0 in -5.0f64..5.0, mu1 in -5.0f64..5.0
    ) {
        let n = 2 * n;
        let g = er(n, 0.3, seed);
        let signs = assignment(&g, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z: Vec<f64> = (0..n).map(|_| rand::Rng::random::<f64>(&mut rng) - 0.5).collect();
        let e: Vec<f64> = (0..n).map(|_| rand::Rng::random::<f64>(&mut rng) - 0.5).collect();
        let forward = OutcomeParams::new(mu0, mu1, 1.0, 1.0).unwrap();
        let swapped = OutcomeParams::new(mu1, mu0, 1.0, 1.0).unwrap();
        let w = estimator(&signs, &outcomes_from(&g, &signs, &forward, &z, &e));
        let negated = signs.negated();
        let w_neg = estimator(&negated, &outcomes_from(&g, &negated, &swapped, &z, &e));
        prop_assert!((w + w_neg).abs() <= 1e-12 * (1.0 + w.abs()));
    }
}
