//! Empirical second and fourth moments next to their closed forms.
//!
//!     cargo run --release --example moment_bounds -- [n] [reps]

use netrand::montecarlo::{
    run_experiment, summarize, theorem1_exact, theorem2_bound, theorem3_bound, ExperimentSpec, GraphModel, PolicySet,
};
use netrand::Policy;

fn main() -> netrand::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer argument"))
        .collect();
    let n = args.first().copied().unwrap_or(1000);
    let reps = args.get(1).copied().unwrap_or(100);
    let (p, b) = (0.2, 0.95);

    let er = summarize(&run_experiment(&ExperimentSpec::new(
        GraphModel::Er { p },
        vec![n],
        PolicySet::Both,
        b,
        reps,
        1,
    ))?);
    let random = er.iter().find(|s| s.policy == Policy::Random).unwrap();
    let adaptive = er.iter().find(|s| s.policy == Policy::Adaptive).unwrap();
    println!(
        "random   E[I^2]   {:.1} ± {:.1}  exact {}",
        random.squared.mean,
        random.squared.std_error,
        theorem1_exact(n, p)
    );
    let (m4, se4) = adaptive.normalized_fourth();
    println!(
        "adaptive E[I^4]/n^4 {m4:.6} ± {se4:.1e}  bound {:.6}  random limit {:.6}",
        theorem2_bound(p, b),
        (p * (1.0 - p)).powi(2)
    );

    let sigma2 = p * (1.0 - p);
    let goe = summarize(&run_experiment(&ExperimentSpec::new(
        GraphModel::Goe { sigma2 },
        vec![n],
        PolicySet::Adaptive,
        b,
        reps,
        2,
    ))?);
    let (g4, gse) = goe[0].normalized_fourth();
    println!(
        "adaptive E[I^4]/(n^4 sigma^4) {:.4} ± {:.1e}  closed form {:.4}",
        g4 / (sigma2 * sigma2),
        gse / (sigma2 * sigma2),
        theorem3_bound(b)
    );
    Ok(())
}
