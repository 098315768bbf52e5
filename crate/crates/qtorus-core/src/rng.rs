//! Deterministic random source used by every stochastic search in the crate.
//!
//! All estimators take a `u64` seed; a fixed seed must reproduce every
//! iterate bit for bit. Independent sub-searches split off dedicated streams
//! so that adding one search does not perturb another.

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Clone, Debug)]
pub struct DetRng(ChaCha8Rng);

impl DetRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream.into());
        DetRng(rng)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    /// Uniform in `[-1, 1)`.
    pub fn signed_unit(&mut self) -> f64 {
        2.0 * self.unit() - 1.0
    }

    /// Uniform in the complex square `[-1,1) x [-1,1)`.
    pub fn complex(&mut self) -> Complex64 {
        Complex64::new(self.signed_unit(), self.signed_unit())
    }

    /// Uniform integer in `[lo, hi]`.
    pub fn int_in(&mut self, lo: i32, hi: i32) -> i32 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i32
    }
}
