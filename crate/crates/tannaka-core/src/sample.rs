//! Seeded random test data.

use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{CMatrix, C64};

/// Deterministic source of complex Gaussian samples.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }

    /// Standard complex Gaussian (`E|z|² = 1`).
    pub fn complex(&mut self) -> C64 {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        C64::new(self.normal() * s, self.normal() * s)
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> CMatrix {
        CMatrix::from_fn(rows, cols, |_, _| self.complex())
    }

    pub fn vector(&mut self, n: usize) -> Vec<C64> {
        (0..n).map(|_| self.complex()).collect()
    }

    /// Uniform integer in `0..n`.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        (self.rng.next_u64() % n as u64) as usize
    }

    /// Uniform angle in `[0, 2π)`.
    pub fn angle(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * core::f64::consts::TAU
    }
}
