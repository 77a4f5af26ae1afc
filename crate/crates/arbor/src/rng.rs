//! Deterministic random streams.
//!
//! Every randomized operation in this crate takes an explicit [`RngState`].
//! Independent streams for parallel work are derived by hashing a master
//! seed together with the coordinates of the work item ([`derive_seed`]),
//! so results never depend on execution order or thread schedule.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer; full-period bijection on u64.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a stream seed from a master seed and a sequence of tag words.
///
/// The derivation is a small sponge over SplitMix64: stable across
/// platforms and insensitive to the order in which work items run.
pub fn derive_seed(master: u64, parts: &[u64]) -> u64 {
    let mut acc = splitmix64(master ^ 0xA076_1D64_78BD_642F);
    for &p in parts {
        acc = splitmix64(acc ^ splitmix64(p ^ 0xE703_7ED1_A0B4_28DB));
    }
    acc
}

/// Deterministic pseudo-random stream with an explicit 64-bit seed.
///
/// Same seed, same sequence, on every platform (ChaCha8 keystream).
#[derive(Debug, Clone)]
pub struct RngState {
    inner: ChaCha8Rng,
}

impl RngState {
    pub fn from_seed(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform draw from `0..n`. Panics if `n == 0`.
    pub fn index(&mut self, n: usize) -> usize {
        self.inner.random_range(0..n)
    }

    /// Uniform draw from `[0, 1)`.
    pub fn unit_f64(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// Fair coin.
    pub fn coin(&mut self) -> bool {
        self.inner.random::<bool>()
    }

    /// Fisher–Yates shuffle in place.
    pub fn shuffle<T>(&mut self, slice: &mut [T]) {
        for i in (1..slice.len()).rev() {
            let j = self.index(i + 1);
            slice.swap(i, j);
        }
    }
}
