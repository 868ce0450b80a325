//! Assigns treatments to a small cohort whose members arrive in a fixed
//! order, printing the running imbalance after every pair.
//!
//!     cargo run --example assign_cohort

use netrand::{run_design_on, BinaryGraph, DesignConfig};

fn main() -> netrand::Result<()> {
    // two friendship triangles joined by a bridge, plus two loners
    let g = BinaryGraph::from_edges(8, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])?;
    let run = run_design_on(&g, &DesignConfig::adaptive(0.9, 2024)?)?;
    let trajectory = run.trajectory();
    for (i, t) in run.signs.treatments().iter().enumerate() {
        let running = if i % 2 == 1 {
            format!("I = {:.3}", trajectory[i / 2])
        } else {
            String::new()
        };
        println!("subject {i}: treatment {t} {running}");
    }
    Ok(())
}
