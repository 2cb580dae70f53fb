//! Deterministic seeding.
//!
//! Batch run `r` draws its seed from a SplitMix64 stream over the base
//! seed, and each run seed expands into a 256-bit ChaCha8 key the same
//! way. Everything downstream of a `u64` seed is therefore bit-stable
//! across machines and worker schedules.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator recorded in report metadata.
pub const GENERATOR_NAME: &str = "chacha8";

/// Seed-mixing function recorded in report metadata.
pub const SEED_MIX_NAME: &str = "splitmix64";

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function (Vigna's finalizer).
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for batch run `run`: the `(run + 1)`-th output of a SplitMix64
/// stream seeded with `base_seed`.
pub fn run_seed(base_seed: u64, run: u64) -> u64 {
    mix(base_seed.wrapping_add(run.wrapping_add(1).wrapping_mul(GOLDEN)))
}

/// Deterministic generator for one run. The ChaCha8 key is the next four
/// SplitMix64 outputs after `seed`.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    for (i, chunk) in key.chunks_exact_mut(8).enumerate() {
        let word = mix(seed.wrapping_add((i as u64 + 1).wrapping_mul(GOLDEN)));
        chunk.copy_from_slice(&word.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}
