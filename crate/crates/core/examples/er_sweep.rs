//! Adaptive against random design on dense Erdős–Rényi graphs.
//!
//! Prints the mean of `2 I / n` with its 95% interval for each size.
//!
//!     cargo run --release --example er_sweep -- [p] [b] [reps]

use netrand::montecarlo::{run_experiment, summarize, ExperimentSpec, GraphModel, PolicySet};

fn main() -> netrand::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    let p = args.first().copied().unwrap_or(0.2);
    let b = args.get(1).copied().unwrap_or(0.95);
    let reps = args.get(2).copied().unwrap_or(50.0) as usize;

    let spec = ExperimentSpec::new(
        GraphModel::Er { p },
        vec![100, 200, 400, 800],
        PolicySet::Both,
        b,
        reps,
        42,
    );
    println!("{:>6} {:>9} {:>10} {:>21}", "n", "policy", "2I/n", "95% interval");
    for s in summarize(&run_experiment(&spec)?) {
        let t = &s.two_i_over_n;
        println!(
            "{:>6} {:>9} {:>10.4} [{:.4}, {:.4}]",
            s.n, s.policy, t.mean, t.ci_lower, t.ci_upper
        );
    }
    Ok(())
}
