//! Weighted Gaussian networks against binary networks with the same
//! entrywise variance `sigma^2 = p (1 - p)`.
//!
//!     cargo run --release --example goe_vs_er -- [n] [reps]

use netrand::montecarlo::{run_experiment, summarize, ExperimentSpec, GraphModel, PolicySet};

fn main() -> netrand::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer argument"))
        .collect();
    let n = args.first().copied().unwrap_or(1000);
    let reps = args.get(1).copied().unwrap_or(20);

    for p in [0.2, 0.02, 0.002] {
        let models = [GraphModel::Er { p }, GraphModel::Goe { sigma2: p * (1.0 - p) }];
        let means: Vec<f64> = models
            .into_iter()
            .map(|model| {
                let spec = ExperimentSpec::new(model, vec![n], PolicySet::Adaptive, 0.95, reps, 11);
                run_experiment(&spec).map(|r| summarize(&r)[0].two_i_over_n.mean)
            })
            .collect::<netrand::Result<_>>()?;
        println!("p = {p:<6} adaptive 2I/n: er {:.4}  goe {:.4}", means[0], means[1]);
    }
    Ok(())
}
