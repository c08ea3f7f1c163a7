//! Seeds and deterministic seed derivation.
//!
//! Every random stream in the crate is a ChaCha8 generator keyed by a 64-bit
//! seed. Derived seeds are produced by folding words into a SplitMix64-style
//! avalanche mixer:
//!
//! ```text
//! h = MIX_INIT
//! for w in words { h = mix64(h ^ w); h = h.wrapping_add(GOLDEN) }
//! result = mix64(h)
//! ```
//!
//! where `mix64` is the SplitMix64 finalizer (xor-shift 30/27/31 with the
//! multipliers `0xbf58476d1ce4e5b9` and `0x94d049bb133111eb`).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;
const MIX_INIT: u64 = 0x6b6f_7574_2d67_7261; // "kout-gra"

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl Seed {
    pub const fn new(master: u64) -> Self {
        Seed(master)
    }

    pub fn master(self) -> u64 {
        self.0
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Child seed for an independent stream identified by `words`.
    pub fn derive(self, words: &[u64]) -> Seed {
        let mut h = mix64(MIX_INIT ^ self.0);
        for &w in words {
            h = mix64(h ^ w).wrapping_add(GOLDEN);
        }
        Seed(mix64(h))
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
