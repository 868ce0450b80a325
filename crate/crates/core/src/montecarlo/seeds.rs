//! Counter-based seed derivation.
//!
//! A child seed is a SplitMix64 hash chain over the parent seed and a path
//! of counters, e.g. `(cell, replicate)`. It does not depend on the order
//! in which replicates are executed.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(base: u64, path: &[u64]) -> u64 {
    path.iter().fold(mix(base.wrapping_add(GOLDEN)), |acc, &k| {
        mix(acc ^ mix(k.wrapping_add(GOLDEN).wrapping_mul(GOLDEN)))
    })
}

/// Random streams used within one replicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Graph = 0,
    RandomDesign = 1,
    AdaptiveDesign = 2,
    RandomOutcome = 3,
    AdaptiveOutcome = 4,
}

pub fn stream_seed(replicate_seed: u64, stream: Stream) -> u64 {
    derive_seed(replicate_seed, &[stream as u64])
}
