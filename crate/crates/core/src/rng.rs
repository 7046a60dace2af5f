//! Seeded randomness.
//!
//! Every random object in the crate is drawn from SplitMix64 (64-bit state,
//! golden-ratio increment, variant-13 finalizer) seeded with
//! `SeedableRng::seed_from_u64`. Uniform reals take the top 53 bits of one
//! output, so a draw in `[0, 1)` costs exactly one generator step.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

pub type Rng = SplitMix64;

pub fn seeded(seed: u64) -> Rng {
    SplitMix64::seed_from_u64(seed)
}

#[inline]
pub fn uniform01(rng: &mut Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform integer in `0..bound` by rejection, `bound > 0`.
pub fn below(rng: &mut Rng, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    let zone = u64::MAX - u64::MAX % bound;
    loop {
        let x = rng.next_u64();
        if x < zone {
            return x % bound;
        }
    }
}

/// SplitMix64 finalizer.
#[inline]
pub fn finalize(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Folds words into one seed; each word is absorbed with a golden-ratio
/// offset and a finalizer round, so reordering the words changes the result.
pub fn mix(words: &[u64]) -> u64 {
    words.iter().fold(0x9e37_79b9_7f4a_7c15, |acc, &w| {
        finalize(acc.wrapping_add(0x9e37_79b9_7f4a_7c15) ^ w)
    })
}
