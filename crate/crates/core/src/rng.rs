//! Deterministic pseudo-random source shared by every sampled check.
//!
//! The generator is the 64-bit linear congruential generator
//!
//! ```text
//! state ← state · 6364136223846793005 + 1442695040888963407   (mod 2^64)
//! ```
//!
//! seeded with `state = seed`. Each draw advances the state once and uses the
//! high 32 bits. An integer in `[lo, hi]` is `lo + (draw mod (hi − lo + 1))`.
//! Reports are reproducible across implementations that follow this recipe.

use num_bigint::BigInt;

use crate::exactalg::{RatMatrix, Rational};

const MULTIPLIER: u64 = 6364136223846793005;
const INCREMENT: u64 = 1442695040888963407;

#[derive(Clone, Debug)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        Lcg64 { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self.state.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
        (self.state >> 32) as u32
    }

    /// Uniform integer in the inclusive range `[lo, hi]`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u32() as u64 % span) as i64
    }

    /// `p/q` with `p ∈ [−num_bound, num_bound]`, `q ∈ [1, den_bound]`.
    pub fn rational(&mut self, num_bound: i64, den_bound: i64) -> Rational {
        let p = self.range(-num_bound, num_bound);
        let q = self.range(1, den_bound);
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    /// Random skew matrix: strict upper triangle drawn with [`Lcg64::rational`]
    /// (numerators in `[−10, 10]`, denominators `≤ 10`), lower triangle negated.
    pub fn skew_matrix(&mut self, size: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(size, size);
        for i in 0..size {
            for j in i + 1..size {
                let v = self.rational(10, 10);
                m[(j, i)] = -v.clone();
                m[(i, j)] = v;
            }
        }
        m
    }
}
