//! Deterministic seed derivation.
//!
//! Every random stream in the crate is a ChaCha8 generator keyed by a 64-bit
//! seed. Per-replica seeds are derived from a master seed and the replica
//! index, so results never depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for stream `index` under `master`.
pub fn derive(master: u64, index: u64) -> u64 {
    mix(mix(master) ^ index.wrapping_mul(0xd6e8_feb8_6659_fd93))
}

/// Seed for a named sub-stream, e.g. one bound family within a run.
pub fn derive_named(master: u64, name: &str) -> u64 {
    name.bytes()
        .fold(mix(master), |acc, b| mix(acc ^ u64::from(b)))
}

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn replica_rng(master: u64, index: u64) -> Rng {
    rng(derive(master, index))
}
