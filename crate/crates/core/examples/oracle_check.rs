//! Exhaustive references on a small graph: the best balanced assignment,
//! the exact expected imbalance of the design, and a Monte Carlo estimate.
//!
//!     cargo run --release --example oracle_check -- [n] [p] [b]

use netrand::design::DesignConfig;
use netrand::graph::{gen_er, ErParams};
use netrand::oracle::{balanced_average, brute_force_min, exact_policy_expectation};
use netrand::run_design_on;

fn main() -> netrand::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(12, |s| s.parse().expect("n"));
    let p: f64 = args.get(1).map_or(0.4, |s| s.parse().expect("p"));
    let b: f64 = args.get(2).map_or(0.9, |s| s.parse().expect("b"));

    let graph = gen_er(ErParams::new(n, p)?, 1)?;
    let g = graph.as_binary().unwrap();
    let min = brute_force_min(g)?;
    println!(
        "best balanced I^2: {} ({} minimizers)",
        min.min_squared, min.argmin_count
    );
    println!("uniform average I^2: {:.4}", balanced_average(g)?);
    for bias in [0.6, 0.75, b, 1.0] {
        let cfg = DesignConfig::adaptive(bias, 0)?;
        let exact = exact_policy_expectation(g, &cfg)?;
        let runs = 20_000;
        let mc: f64 = (0..runs)
            .map(|s| run_design_on(g, &cfg.with_seed(s)).map(|r| r.reported_squared as f64))
            .sum::<netrand::Result<f64>>()?
            / runs as f64;
        println!(
            "b = {bias:<5} exact E[I^2] {:.4}  monte carlo {mc:.4}  ties {}",
            exact.expected_squared, exact.tie_encountered
        );
    }
    Ok(())
}
