//! Seeded randomness. Every randomized routine takes an explicit generator;
//! parallel work derives one independent stream per task from a master seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type CutRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> CutRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The `index`-th stream under `master`. Streams never overlap, so results do
/// not depend on how tasks are scheduled across threads.
pub fn stream(master: u64, index: u64) -> CutRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    rng
}
