//! Seeded random streams for fixtures and sampled cochains.
//!
//! The stream is ChaCha20 (RFC 8439 block function, 20 rounds) keyed with
//! the 64-bit seed in little-endian order followed by 24 zero bytes, nonce
//! and counter starting at zero. Each draw consumes one 64-bit output word
//! (two consecutive 32-bit keystream words, low word first). Derived draws:
//!
//! - `unit()`: the top 53 bits of a word scaled by `2^-53`, in `[0, 1)`.
//! - `bernoulli(p)`: `unit() < p`.
//! - `below(n)`: `word % n` (the bias is irrelevant at fixture sizes).
//!
//! Any reimplementation of this recipe reproduces the same fixtures.

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::cochain::Cochain;
use crate::complex::SimplicialComplex;

pub struct SeededStream(ChaCha20Rng);

impl SeededStream {
    pub fn new(seed: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        SeededStream(ChaCha20Rng::from_seed(key))
    }

    pub fn word(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn unit(&mut self) -> f64 {
        (self.word() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.word() % n
    }

    /// A `k`-cochain including each face independently with probability `density`.
    pub fn cochain(&mut self, x: &SimplicialComplex, k: usize, density: f64) -> Cochain {
        let n = x.count(k);
        let ones: Vec<usize> = (0..n).filter(|_| self.bernoulli(density)).collect();
        Cochain::from_indices(x, k, ones).expect("indices are in range")
    }

    /// A `k`-cochain whose density is itself drawn uniformly from `[0, 1)`.
    pub fn mixed_density_cochain(&mut self, x: &SimplicialComplex, k: usize) -> Cochain {
        let density = self.unit();
        self.cochain(x, k, density)
    }

    /// A `k`-cochain with exactly `size` faces (capped at `|X(k)|`).
    pub fn cochain_of_size(&mut self, x: &SimplicialComplex, k: usize, size: usize) -> Cochain {
        let n = x.count(k);
        let mut pool: Vec<usize> = (0..n).collect();
        let size = size.min(n);
        for i in 0..size {
            let j = i + self.below((n - i) as u64) as usize;
            pool.swap(i, j);
        }
        Cochain::from_indices(x, k, pool[..size].iter().copied()).expect("indices are in range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stream_is_reproducible() {
        let a: Vec<u64> = {
            let mut s = SeededStream::new(7);
            (0..4).map(|_| s.word()).collect()
        };
        let mut s = SeededStream::new(7);
        assert_eq!(a, (0..4).map(|_| s.word()).collect::<Vec<_>>());
        let mut t = SeededStream::new(8);
        assert_ne!(a[0], t.word());
        let u = SeededStream::new(1).unit();
        assert!((0.0..1.0).contains(&u));
    }
}
