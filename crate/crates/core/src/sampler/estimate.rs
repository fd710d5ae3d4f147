//! Monte Carlo estimates of watermelon probabilities.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::wilson::{watermelon_indicator, Sampler};
use super::{RngSeed, SamplerError};
use crate::lattice::RectDomain;

pub const MIN_SAMPLES: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EstimateOptions {
    /// Number of independent streams; `None` uses the rayon pool size.
    pub workers: Option<usize>,
    /// Stop after the walks from `J`.
    pub early_exit: bool,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        EstimateOptions {
            workers: None,
            early_exit: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub p_hat: f64,
    pub stderr: f64,
    pub n: u64,
    pub hits: u64,
    pub seed: u64,
    pub workers: usize,
}

pub fn mc_estimate(domain: &RectDomain, k: usize, r: usize, n: u64, seed: RngSeed) -> Result<McEstimate, SamplerError> {
    mc_estimate_with(domain, k, r, n, seed, EstimateOptions::default())
}

/// The result depends only on the inputs and the worker count.
pub fn mc_estimate_with(
    domain: &RectDomain,
    k: usize,
    r: usize,
    n: u64,
    seed: RngSeed,
    opts: EstimateOptions,
) -> Result<McEstimate, SamplerError> {
    if n < MIN_SAMPLES {
        return Err(SamplerError::Invalid(format!("n = {n} is below the minimum of {MIN_SAMPLES} samples")));
    }
    let (i, j) = domain.strings(k, r)?;
    let workers = opts.workers.unwrap_or_else(rayon::current_num_threads).max(1);
    let hits = (0..workers as u64)
        .into_par_iter()
        .map(|w| {
            let (lo, hi) = (w * n / workers as u64, (w + 1) * n / workers as u64);
            let mut sampler = Sampler::new(domain);
            let mut rng = seed.worker_rng(w);
            let mut hits = 0u64;
            for _ in lo..hi {
                let hit = if opts.early_exit {
                    sampler.watermelon_event(&i, &j, &mut rng)?
                } else {
                    let f = sampler.sample_forest(&i, &j, &mut rng)?;
                    watermelon_indicator(&f, &i, &j)?
                };
                hits += hit as u64;
            }
            Ok(hits)
        })
        .collect::<Result<Vec<u64>, SamplerError>>()?
        .into_iter()
        .sum::<u64>();
    let p_hat = hits as f64 / n as f64;
    Ok(McEstimate {
        p_hat,
        stderr: (p_hat * (1.0 - p_hat) / n as f64).sqrt(),
        n,
        hits,
        seed: seed.0,
        workers,
    })
}

/// Runs the early-exit and full-forest paths on the same random stream for `n`
/// samples and fails on the first disagreement.
pub fn verify_early_exit(domain: &RectDomain, k: usize, r: usize, n: u64, seed: RngSeed) -> Result<u64, SamplerError> {
    let (i, j) = domain.strings(k, r)?;
    let mut early = Sampler::new(domain);
    let mut full = Sampler::new(domain);
    let mut hits = 0;
    for t in 0..n {
        let rng = seed.worker_rng(t);
        let a = early.watermelon_event(&i, &j, &mut rng.clone())?;
        let f = full.sample_forest(&i, &j, &mut rng.clone())?;
        if a != watermelon_indicator(&f, &i, &j)? {
            return Err(SamplerError::EarlyExitMismatch(t));
        }
        hits += a as u64;
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::watermelon_prob_finite;
    use crate::melon::BoundaryCondition;

    #[test]
    fn trivial_pairing() {
        let d = RectDomain::half_box(31, BoundaryCondition::Closed).unwrap();
        let e = mc_estimate(&d, 2, 0, 1000, RngSeed(1)).unwrap();
        assert_eq!((e.p_hat, e.stderr, e.n), (1.0, 0.0, 1000));
        assert!(mc_estimate(&d, 2, 0, 999, RngSeed(1)).is_err());
    }

    #[test]
    fn early_exit_agrees_with_full_forest() {
        for bc in [BoundaryCondition::Open, BoundaryCondition::Closed] {
            let d = RectDomain::half_box(21, bc).unwrap();
            let hits = verify_early_exit(&d, 2, 3, 10_000, RngSeed(77)).unwrap();
            assert!(hits > 0);
        }
    }

    #[test]
    fn deterministic_given_seed_and_workers() {
        let d = RectDomain::half_box(41, BoundaryCondition::Open).unwrap();
        let opts = EstimateOptions {
            workers: Some(3),
            early_exit: true,
        };
        let a = mc_estimate_with(&d, 1, 4, 5000, RngSeed(8), opts).unwrap();
        let b = mc_estimate_with(&d, 1, 4, 5000, RngSeed(8), opts).unwrap();
        assert_eq!(a, b);
        let full = mc_estimate_with(&d, 1, 4, 5000, RngSeed(8), EstimateOptions { early_exit: false, ..opts }).unwrap();
        assert!((a.p_hat - full.p_hat).abs() < 4.0 * (a.stderr.powi(2) + full.stderr.powi(2)).sqrt());
    }

    #[test]
    fn estimates_match_finite_solver() {
        for (bc, k, r) in [(BoundaryCondition::Open, 1, 4), (BoundaryCondition::Closed, 2, 4), (BoundaryCondition::Open, 2, 2)] {
            let d = RectDomain::half_box(41, bc).unwrap();
            let exact = watermelon_prob_finite(&d, k, r).unwrap();
            let mut ok = 0;
            for seed in 0..20 {
                let e = mc_estimate(&d, k, r, 20_000, RngSeed(seed)).unwrap();
                ok += ((e.p_hat - exact).abs() < 3.0 * e.stderr) as i32;
            }
            assert!(ok >= 18, "{bc} k={k} r={r}: {ok}/20 within 3 stderr");
        }
    }

    #[test]
    fn stderr_scales_as_inverse_sqrt_n() {
        let d = RectDomain::half_box(41, BoundaryCondition::Open).unwrap();
        let a = mc_estimate(&d, 1, 4, 10_000, RngSeed(2)).unwrap();
        let b = mc_estimate(&d, 1, 4, 20_000, RngSeed(3)).unwrap();
        let c = mc_estimate(&d, 1, 4, 40_000, RngSeed(4)).unwrap();
        let ratio2 = a.stderr / b.stderr;
        let ratio4 = a.stderr / c.stderr;
        assert!((ratio2 / 2f64.sqrt() - 1.0).abs() < 0.2, "{ratio2}");
        assert!((ratio4 / 2.0 - 1.0).abs() < 0.2, "{ratio4}");
    }
}
