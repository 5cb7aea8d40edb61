//! Seeded standard-normal streams.
//!
//! Every replicate gets its own generator built from a `u64` seed, so
//! ensembles are reproducible regardless of how replicates are scheduled.
//! Streams are stable within one build of this crate; they are not meant to
//! reproduce any other implementation's random numbers.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Iterator over independent standard-normal draws.
#[derive(Debug, Clone)]
pub struct NormalStream {
    rng: ChaCha8Rng,
}

impl NormalStream {
    /// Starts a stream from `seed`.
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Next standard-normal draw.
    pub fn next_normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }
}

impl Iterator for NormalStream {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        Some(self.next_normal())
    }
}

/// Returns `count` standard-normal draws for `seed`.
pub fn normal_deviates(seed: u64, count: usize) -> Vec<f64> {
    NormalStream::new(seed).take(count).collect()
}
