//! Seeded, splittable random streams.
//!
//! Stream format, version 1: ChaCha20 (20 rounds) keyed by the 64-bit seed in
//! little-endian order followed by 24 zero bytes, with the ChaCha stream
//! (nonce) set to the stream id. Output words are consumed as little-endian
//! u64 values. Derived quantities:
//!
//! - uniform in `[0,1)`: `(x >> 11) * 2^-53`
//! - index in `0..n`: `((x as u128 * n as u128) >> 64)`
//! - standard gaussian: Box–Muller, `sqrt(-2 ln(1-u1)) * cos(2π u2)`, one
//!   value per pair of uniforms.

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

pub const STREAM_VERSION: u32 = 1;

pub struct StreamRng {
    inner: ChaCha20Rng,
}

impl StreamRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        let mut inner = ChaCha20Rng::from_seed(key);
        inner.set_stream(stream);
        StreamRng { inner }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn index(&mut self, n: usize) -> usize {
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    pub fn gaussian(&mut self) -> f64 {
        let u1 = self.uniform();
        let u2 = self.uniform();
        (-2.0 * (1.0 - u1).ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
}
