//! The single random source threaded through a synthesis run.
//!
//! Operators draw through [`RandomSource`] so tests can script the exact
//! values a mutation or crossover sees.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub trait RandomSource {
    /// Uniform integer in `[0, n)`; `n` must be positive.
    fn below(&mut self, n: u64) -> u64;
    /// Uniform real in `[0, 1)`.
    fn unit(&mut self) -> f64;
    fn bit(&mut self) -> bool;

    /// Bernoulli trial with success probability `p`.
    fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }
}

/// ChaCha8 stream seeded from a 64-bit integer.
#[derive(Debug, Clone)]
pub struct SeededRng(ChaCha8Rng);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }
}

impl RandomSource for SeededRng {
    fn below(&mut self, n: u64) -> u64 {
        self.0.gen_range(0..n)
    }

    fn unit(&mut self) -> f64 {
        self.0.gen::<f64>()
    }

    fn bit(&mut self) -> bool {
        self.0.next_u32() & 1 == 1
    }
}

/// Seed for the `index`-th repetition of a batch started from `base`
/// (splitmix64 finalizer, so neighbouring indices decorrelate).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
pub(crate) mod testing {
    use super::RandomSource;
    use std::collections::VecDeque;

    /// Replays a fixed script of draws; panics when it runs dry.
    #[derive(Debug, Default)]
    pub struct Scripted {
        ints: VecDeque<u64>,
        units: VecDeque<f64>,
    }

    impl Scripted {
        pub fn new(ints: &[u64], units: &[f64]) -> Self {
            Self {
                ints: ints.iter().copied().collect(),
                units: units.iter().copied().collect(),
            }
        }
    }

    impl RandomSource for Scripted {
        fn below(&mut self, n: u64) -> u64 {
            let v = self.ints.pop_front().expect("script exhausted");
            assert!(v < n, "scripted {v} not below {n}");
            v
        }

        fn unit(&mut self) -> f64 {
            self.units.pop_front().expect("script exhausted")
        }

        fn bit(&mut self) -> bool {
            self.below(2) == 1
        }
    }
}
