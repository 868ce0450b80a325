//! Sparse regime `p_n = ln(n) / (c n)` for Erdős–Rényi graphs and the
//! matching Gaussian ensemble with `sigma^2 = p_n (1 - p_n)`.
//!
//! Reports the interquartile range of `2 I / n` over replicates.
//!
//!     cargo run --release --example sparse_sweep -- [c] [reps]

use netrand::montecarlo::{run_experiment, summarize, ExperimentSpec, GraphModel, PolicySet};

fn main() -> netrand::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    let c = args.first().copied().unwrap_or(5.0);
    let reps = args.get(1).copied().unwrap_or(30.0) as usize;
    let sizes = vec![200, 400, 800, 1600];

    for model in [GraphModel::SparseEr { c }, GraphModel::SparseGoe { c }] {
        let spec = ExperimentSpec::new(model, sizes.clone(), PolicySet::Both, 0.95, reps, 7);
        for s in summarize(&run_experiment(&spec)?) {
            let t = &s.two_i_over_n;
            println!(
                "{:<11} n={:<5} {:<9} mean {:.4}  IQR [{:.4}, {:.4}]",
                s.model,
                s.n,
                s.policy.as_str(),
                t.mean,
                t.q1,
                t.q3
            );
        }
    }
    Ok(())
}
