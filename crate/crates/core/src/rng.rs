//! Seeded random number generation.
//!
//! All sampling uses ChaCha8 (the `rand_chacha` stream cipher generator). It
//! is counter based, so a call seed plus a stream index gives independent,
//! reproducible sub-streams for parallel or per-trial work.

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Generator = ChaCha8Rng;

/// Generator for `seed`, stream 0.
pub fn generator(seed: u64) -> Generator {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for `seed` on an independent stream (e.g. one per trial).
pub fn stream(seed: u64, index: u64) -> Generator {
    let mut g = ChaCha8Rng::seed_from_u64(seed);
    g.set_stream(index);
    g
}

/// Uniform draw from the open interval `(0, 1)`.
pub fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(Open01)
}
