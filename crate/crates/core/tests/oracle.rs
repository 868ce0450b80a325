use netrand::cli::{oracle_report, ModelArg, OracleArgs};
use netrand::design::{imbalance_recompute, DesignConfig};
use netrand::graph::{gen_er, gen_goe, ErParams, GoeParams};
use netrand::oracle::{
    balanced_average, brute_force_min, check_common_neighbors, exact_policy_expectation, gram_matrix, ubqp_crosscheck,
};
use netrand::{run_design_on, BinaryGraph, Error, SignVector, WeightedGraph};
use proptest::prelude::*;

fn er(n: usize, p: f64, seed: u64) -> BinaryGraph {
    gen_er(ErParams::new(n, p).unwrap(), seed)
        .unwrap()
        .as_binary()
        .unwrap()
        .clone()
}

#[test]
fn complete_and_identity_minima() {
    let complete = brute_force_min(&BinaryGraph::complete(6)).unwrap();
    assert_eq!(complete.min_squared, 0);
    assert_eq!(complete.argmin_count, 8);
    let identity = brute_force_min(&BinaryGraph::identity(6)).unwrap();
    assert_eq!(identity.min_squared, 6);
    assert_eq!(identity.argmin_count, 8);
}

#[test]
fn minimum_matches_independent_enumeration() {
    for seed in 0..5 {
        let g = er(8, 0.5, seed);
        let oracle = brute_force_min(&g).unwrap();
        let mut values = Vec::new();
        for mask in 0u32..256 {
            let signs: Vec<i8> = (0..8).map(|k| if mask >> k & 1 == 1 { 1 } else { -1 }).collect();
            if SignVector::new(signs.clone()).unwrap().is_pairwise_balanced() {
                values.push(imbalance_recompute(&g, &signs, 8).unwrap());
            }
        }
        assert_eq!(values.len(), 16);
        let min = *values.iter().min().unwrap();
        assert_eq!(oracle.min_squared, min);
        assert_eq!(oracle.argmin_count, values.iter().filter(|&&v| v == min).count());
    }
}

#[test]
fn fair_coin_expectation_is_the_uniform_average() {
    for seed in 0..5 {
        let g = er(12, 0.4, seed);
        let exact = exact_policy_expectation(&g, &DesignConfig::random(0)).unwrap();
        let avg = balanced_average(&g).unwrap();
        assert!((exact.expected_squared - avg).abs() < 1e-9 * avg.max(1.0));
    }
}

#[test]
fn complete_graph_expectation_is_zero() {
    let g = BinaryGraph::complete(10);
    for b in [0.6, 0.9, 1.0] {
        let e = exact_policy_expectation(&g, &DesignConfig::adaptive(b, 0).unwrap()).unwrap();
        assert_eq!(e.expected_squared, 0.0);
    }
}

#[test]
fn size_limits() {
    assert!(matches!(
        brute_force_min(&BinaryGraph::identity(22)),
        Err(Error::TooLarge { n: 22, limit: 20 })
    ));
    assert!(brute_force_min(&BinaryGraph::identity(20)).is_ok());
    let cfg = DesignConfig::adaptive(0.9, 0).unwrap();
    assert!(matches!(
        exact_policy_expectation(&BinaryGraph::identity(18), &cfg),
        Err(Error::TooLarge { n: 18, limit: 16 })
    ));
    assert!(brute_force_min(&BinaryGraph::identity(7)).is_err());
}

#[test]
fn engine_mean_agrees_with_exact_tree() {
    let args = OracleArgs {
        model: ModelArg::Er,
        n: 10,
        p: 0.3,
        seed: 17,
        b: 0.9,
        runs: 100_000,
    };
    let r = oracle_report(&args).unwrap();
    assert!(r.lower_bound_holds);
    assert_eq!(r.engine_matches_exact, Some(true), "{r:?}");
}

#[test]
fn oracle_with_fair_coin_uses_random_design() {
    let args = OracleArgs {
        model: ModelArg::Er,
        n: 8,
        p: 0.5,
        seed: 3,
        b: 0.5,
        runs: 20_000,
    };
    let r = oracle_report(&args).unwrap();
    assert!((r.exact.unwrap() - r.balanced_average).abs() < 1e-9);
    assert_eq!(r.engine_matches_exact, Some(true));
}

#[test]
fn exact_expectation_without_ties_is_nonincreasing_in_b() {
    // Gaussian weights make ties a null event
    for seed in 0..10 {
        let graph = gen_goe(GoeParams::new(10, 0.2).unwrap(), seed).unwrap();
        let g = graph.as_weighted().unwrap();
        let values: Vec<f64> = [0.55, 0.7, 0.85, 1.0]
            .iter()
            .map(|&b| {
                let e = exact_policy_expectation(g, &DesignConfig::adaptive(b, 0).unwrap()).unwrap();
                assert!(!e.tie_encountered);
                e.expected_squared
            })
            .collect();
        for w in values.windows(2) {
            assert!(w[1] <= w[0] + 1e-9, "seed {seed}: {values:?}");
        }
    }
}

#[test]
fn ubqp_forms_agree_on_balanced_assignments() {
    let g = er(12, 0.4, 21);
    check_common_neighbors(&g).unwrap();
    let h = gram_matrix(&g);
    for (i, row) in h.iter().enumerate() {
        assert_eq!(row[i], g.degree(i) as i64);
    }
    let run = run_design_on(&g, &DesignConfig::adaptive(0.9, 1).unwrap()).unwrap();
    for lambda in [0, 1, 5] {
        let c = ubqp_crosscheck(&g, &run.signs, lambda).unwrap();
        assert_eq!(c.norm_squared, c.quadratic);
        assert_eq!(c.penalized, c.quadratic);
    }
}

#[test]
fn penalty_counts_the_squared_excess() {
    let g = er(6, 0.5, 2);
    let tau = SignVector::new(vec![1, 1, 1, -1, 1, -1]).unwrap();
    let c = ubqp_crosscheck(&g, &tau, 1).unwrap();
    assert_eq!(c.penalized - c.quadratic, 4);
}

#[test]
fn ubqp_on_weighted_graphs() {
    let g = WeightedGraph::from_rows(&[
        vec![1.0, 0.5, -0.25, 0.0],
        vec![0.5, 1.0, 0.75, -1.0],
        vec![-0.25, 0.75, 1.0, 0.3],
        vec![0.0, -1.0, 0.3, 1.0],
    ])
    .unwrap();
    let tau = SignVector::new(vec![1, -1, -1, 1]).unwrap();
    let c = ubqp_crosscheck(&g, &tau, 2.0).unwrap();
    assert!((c.norm_squared - c.quadratic).abs() < 1e-12);
    assert!((c.penalized - c.quadratic).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn global_minimum_bounds_every_run(pairs in 1usize..=7, seed in any::<u64>(), b in 0.51f64..=1.0) {
        let g = er(2 * pairs, 0.5, seed);
        let min = brute_force_min(&g).unwrap().min_squared;
        let exact = exact_policy_expectation(&g, &DesignConfig::adaptive(b, 0).unwrap()).unwrap();
        prop_assert!(min as f64 <= exact.expected_squared + 1e-9);
        for r in 0..20 {
            let run = run_design_on(&g, &DesignConfig::adaptive(b, seed ^ r).unwrap()).unwrap();
            prop_assert!(run.reported_squared >= min);
        }
    }
}
