//! Uniform sampling of parameter boxes keyed by `(seed, sample index)`.
//!
//! Each sample consumes a fixed number of ChaCha8 words, so the generator
//! can be positioned at any sample index directly. Any partition of the
//! index range into batches therefore sees the same points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::family::ParamBox;

/// 32-bit words consumed per uniform coordinate (one `u64`).
const WORDS_PER_COORD: u128 = 2;

#[derive(Debug, Clone)]
pub struct BoxSampler {
    seed: u64,
    lower: Vec<f64>,
    width: Vec<f64>,
}

impl BoxSampler {
    pub fn new(seed: u64, domain: &ParamBox) -> Self {
        Self {
            seed,
            lower: domain.lower.clone(),
            width: domain
                .lower
                .iter()
                .zip(&domain.upper)
                .map(|(lo, hi)| hi - lo)
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    /// Calls `visit` on samples `start..start + count` in index order.
    pub fn for_each_in(&self, start: u64, count: u64, mut visit: impl FnMut(&[f64])) {
        let d = self.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_word_pos(start as u128 * d as u128 * WORDS_PER_COORD);
        let mut x = vec![0.0; d];
        for _ in 0..count {
            for (i, xi) in x.iter_mut().enumerate() {
                let u: f64 = rng.gen();
                *xi = self.lower[i] + self.width[i] * u;
            }
            visit(&x);
        }
    }

    pub fn sample(&self, index: u64) -> Vec<f64> {
        let mut out = Vec::new();
        self.for_each_in(index, 1, |x| out.extend_from_slice(x));
        out
    }
}
