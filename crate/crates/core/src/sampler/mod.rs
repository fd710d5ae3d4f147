//! Uniform spanning forests by Wilson's algorithm and Monte Carlo watermelon estimates.
//!
//! Random numbers: worker `w` of a run with seed `s` draws from
//! `ChaCha8Rng::seed_from_u64(s ^ splitmix64(w))`, where `splitmix64` is the
//! standard finalizer (`z += 0x9e3779b97f4a7c15`, then the two xor-shift-multiply
//! rounds with `0xbf58476d1ce4e5b9` and `0x94d049bb133111eb`). Each walk step takes
//! the next two bits of the current `next_u64()` word, low bits first, as the
//! direction right, left, up, down; a direction leaving the lattice is redrawn.
//! Samples `w·n/W .. (w+1)·n/W` go to worker `w` of `W`.

mod estimate;
mod wilson;

pub use estimate::{mc_estimate, mc_estimate_with, verify_early_exit, EstimateOptions, McEstimate};
pub use wilson::{watermelon_indicator, wilson_sample, ForestSample, Sampler};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub fn worker_rng(self, worker: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0 ^ splitmix64(worker))
    }
}

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum SamplerError {
    #[error("pairing alarm: endpoints attached to roots in order {0:?}, not the nested pairing")]
    PairingAlarm(Vec<usize>),
    #[error("random walk exceeded the step budget of {0}")]
    StepBudget(u64),
    #[error("early-exit indicator disagreed with the full forest on sample {0}")]
    EarlyExitMismatch(u64),
    #[error("invalid sampler input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Lattice(#[from] crate::lattice::LatticeError),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        assert_eq!(splitmix64(0), 0xe220_a839_7b1d_cdaf);
        assert_ne!(splitmix64(1), splitmix64(2));
    }
}
