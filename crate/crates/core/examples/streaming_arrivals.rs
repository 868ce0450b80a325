//! Drives the engine one pair at a time, as subjects arrive. Only the
//! block of the network among subjects seen so far is revealed.
//!
//!     cargo run --example streaming_arrivals

use netrand::design::{assign_first_pair, candidate_imbalances, step, DesignConfig, PairIncrement};
use netrand::graph::{gen_er, ErParams, RevealedView};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> netrand::Result<()> {
    let graph = gen_er(ErParams::new(12, 0.4)?, 9)?;
    let g = graph.as_binary().unwrap();
    let cfg = DesignConfig::adaptive(0.9, 0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);

    let mut view = RevealedView::new(g);
    view.reveal(2);
    let mut state = assign_first_pair(&view, &mut rng)?;
    println!("pair 0: signs {:?}, I^2 = {}", state.signs(), state.squared());
    while state.signs().len() < g.n() {
        view.reveal(state.signs().len() + 2);
        let inc = PairIncrement::observe(&view, state.signs())?;
        let c = candidate_imbalances(&state, &inc)?;
        state = step(state, &inc, &cfg, &mut rng)?;
        let m = state.pairs() - 1;
        let chosen = &state.signs()[2 * m..];
        println!(
            "pair {m}: candidates (0,1) -> {}, (1,0) -> {}; chose {:?}, I^2 = {}",
            c.zero_one,
            c.one_zero,
            chosen,
            state.squared()
        );
    }
    Ok(())
}
