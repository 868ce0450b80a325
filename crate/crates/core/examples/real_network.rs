//! Adaptive against random design on node samples of an edge list.
//!
//! Without a path a synthetic network is used.
//!
//!     cargo run --release --example real_network -- [edges.txt] [sample] [reps]

use std::sync::Arc;

use netrand::graph::{gen_sbm, write_edge_list, SbmParams};
use netrand::montecarlo::{reduction_from_records, run_experiment, ExperimentSpec, GraphModel, PolicySet};
use netrand::EdgeListGraph;

fn main() -> netrand::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let graph = match args.first() {
        Some(path) => EdgeListGraph::read_file(path)?,
        None => {
            let g = gen_sbm(SbmParams::new(4000, 0.004, 0.0005)?, 5)?;
            let mut buf = Vec::new();
            write_edge_list(g.as_binary().unwrap(), &mut buf)?;
            netrand::graph::from_edge_list(buf.as_slice())?
        }
    };
    let sample: usize = args.get(1).map_or(2000, |s| s.parse().expect("sample size"));
    let reps: usize = args.get(2).map_or(10, |s| s.parse().expect("replicates"));
    println!(
        "{} nodes, {} edges, density {:.3e}",
        graph.n(),
        graph.edge_count(),
        graph.density()?
    );

    let mut spec = ExperimentSpec::new(
        GraphModel::Real { graph: Arc::new(graph) },
        vec![sample],
        PolicySet::Both,
        0.85,
        reps,
        1,
    );
    spec.allow_odd = true;
    let records = run_experiment(&spec)?;
    let r = reduction_from_records(&records, sample).expect("both policies ran");
    println!(
        "sample {sample}: adaptive I {:.2} ± {:.2}, random I {:.2} ± {:.2}, reduction {:.1}%",
        r.adaptive_mean,
        r.adaptive_se,
        r.random_mean,
        r.random_se,
        100.0 * r.reduction
    );
    Ok(())
}
