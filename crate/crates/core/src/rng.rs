//! Seed derivation and seeded sampling of complex vectors.
//!
//! Every random choice in a reduction is drawn from a ChaCha stream keyed by
//! `(seed, stage tag, attempt)`, so a run is reproducible from its top-level
//! seed and a retried stage never reuses the stream of a failed attempt.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numerics::scalar::Complex;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// FNV-1a, used only to fold a stage tag into a seed.
fn tag_hash(tag: &str) -> u64 {
    tag.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

pub fn derive_seed(seed: u64, tag: &str, attempt: u64) -> u64 {
    splitmix64(splitmix64(seed ^ tag_hash(tag)) ^ attempt)
}

pub struct Sampler {
    rng: ChaCha8Rng,
    prec: u32,
}

impl Sampler {
    pub fn new(seed: u64, prec: u32) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            prec,
        }
    }

    /// Uniform in the square `[-1, 1] x [-1, 1]`.
    pub fn complex(&mut self) -> Complex {
        let re: f64 = self.rng.gen_range(-1.0..1.0);
        let im: f64 = self.rng.gen_range(-1.0..1.0);
        Complex::with_val(self.prec, (re, im))
    }

    pub fn vector(&mut self, len: usize) -> Vec<Complex> {
        (0..len).map(|_| self.complex()).collect()
    }

    pub fn vectors(&mut self, count: usize, len: usize) -> Vec<Vec<Complex>> {
        (0..count).map(|_| self.vector(len)).collect()
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }
}
