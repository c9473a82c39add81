//! Deterministic seed derivation.
//!
//! Every random stream in the crate is a ChaCha8 generator keyed by a 64-bit
//! seed. Child seeds are derived from a parent and a list of tags with a
//! SplitMix64-style mixer, so replications, cells and the two Gaussian
//! components never share state and can be generated in any order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Child seed of `parent` for the given tag path.
pub fn derive_seed(parent: u64, tags: &[u64]) -> u64 {
    tags.iter()
        .fold(mix(parent.wrapping_add(GOLDEN)), |acc, &t| {
            mix(acc ^ mix(t.wrapping_add(GOLDEN).wrapping_mul(GOLDEN)))
        })
}

/// Substream tag for the first/second component of a Gaussian pair.
pub const PAIR_FIRST: u64 = 1;
pub const PAIR_SECOND: u64 = 2;

/// Seed of replication `rep` in cell `(d, n)`.
pub fn replication_seed(master: u64, d: f64, n: usize, rep: u64) -> u64 {
    derive_seed(master, &[d.to_bits(), n as u64, rep])
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
