//! Two-block stochastic block models of increasing contrast between the
//! within-block and between-block rates.
//!
//!     cargo run --release --example sbm_sweep -- [n] [reps]

use netrand::montecarlo::{run_experiment, summarize, ExperimentSpec, GraphModel, PolicySet};
use netrand::Policy;

fn main() -> netrand::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer argument"))
        .collect();
    let n = args.first().copied().unwrap_or(600);
    let reps = args.get(1).copied().unwrap_or(30);

    println!(
        "{:>6} {:>6} {:>10} {:>10} {:>10}",
        "p_in", "p_out", "random", "adaptive", "reduction"
    );
    for (p_in, p_out) in [(0.2, 0.2), (0.3, 0.1), (0.35, 0.05), (0.4, 0.01)] {
        let spec = ExperimentSpec::new(GraphModel::Sbm { p_in, p_out }, vec![n], PolicySet::Both, 0.95, reps, 3);
        let s = summarize(&run_experiment(&spec)?);
        let mean = |p: Policy| s.iter().find(|c| c.policy == p).unwrap().two_i_over_n.mean;
        let (r, a) = (mean(Policy::Random), mean(Policy::Adaptive));
        println!(
            "{p_in:>6} {p_out:>6} {r:>10.4} {a:>10.4} {:>9.1}%",
            100.0 * (1.0 - a / r)
        );
    }
    Ok(())
}
