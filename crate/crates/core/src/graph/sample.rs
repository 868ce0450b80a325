use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{param, Result};

/// `k` distinct nodes out of `n`, in uniformly random order.
pub(crate) fn sample_nodes(n: usize, k: usize, seed: u64) -> Result<Vec<usize>> {
    if k < 2 {
        return Err(param(format!("sample size must be at least 2, got {k}")));
    }
    if k > n {
        return Err(param(format!("sample size {k} exceeds node count {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes = index::sample(&mut rng, n, k).into_vec();
    nodes.shuffle(&mut rng);
    Ok(nodes)
}
