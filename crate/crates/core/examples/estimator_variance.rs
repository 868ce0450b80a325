//! Variance of the difference-in-means estimator under network-correlated
//! outcomes, for random and adaptive assignments on the same graph.
//!
//!     cargo run --release --example estimator_variance

use netrand::design::DesignConfig;
use netrand::graph::{gen_er, ErParams};
use netrand::outcome::{analytic_variance, unbiasedness_check, OutcomeParams};
use netrand::run_design_on;

fn main() -> netrand::Result<()> {
    let graph = gen_er(ErParams::new(400, 0.2)?, 3)?;
    let g = graph.as_binary().unwrap();
    let params = OutcomeParams::new(1.0, 0.0, 1.0, 1.0)?;
    for (label, cfg) in [
        ("random", DesignConfig::random(4)),
        ("adaptive", DesignConfig::adaptive(0.95, 4)?),
    ] {
        let run = run_design_on(g, &cfg)?;
        let check = unbiasedness_check(g, &run.signs, &params, 20_000, 5)?;
        println!(
            "{label:<9} I = {:>7.2}  mean W {:.4} ± {:.4}  var W {:.5} (analytic {:.5})",
            run.imbalance(),
            check.mean,
            check.std_error,
            check.variance,
            analytic_variance(g, &run.signs, &params)?
        );
    }
    Ok(())
}
