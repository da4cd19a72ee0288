//! Deterministic randomness.
//!
//! Every game owns a [`GameRng`]: ChaCha8 keyed by a 64-bit seed through
//! `SeedableRng::seed_from_u64`, which is specified to be portable across
//! platforms and pointer widths. All sampling goes through 32-bit bounded
//! draws so the stream of decisions never depends on `usize`.
//!
//! Child seeds for batches, duels and sweeps are derived from a master seed
//! with [`split_seed`], a SplitMix64 finalizer over `(master, stream, index)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded tile-drawing generator.
#[derive(Debug, Clone)]
pub struct GameRng(ChaCha8Rng);

impl GameRng {
    pub fn from_seed(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform integer in `0..bound`. `bound` must be nonzero.
    pub fn below(&mut self, bound: u32) -> u32 {
        self.0.gen_range(0..bound)
    }

    /// Uniform real in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        self.0.gen()
    }
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed of child `index` on `stream` from `master`.
///
/// Streams keep different uses of one master seed apart (games of a batch,
/// matches of a series, the two players of a match, cells of a sweep).
/// Each child depends only on its own coordinates, so work items can be run
/// in any order or in parallel without changing any result.
pub fn split_seed(master: u64, stream: u64, index: u64) -> u64 {
    let a = splitmix64(master);
    let b = splitmix64(a ^ stream.wrapping_mul(GOLDEN_GAMMA));
    splitmix64(b ^ index)
}

/// Streams used by the harness.
pub mod streams {
    pub const BATCH_GAME: u64 = 1;
    pub const SERIES_MATCH: u64 = 2;
    pub const MATCH_PLAYER: u64 = 3;
}
