//! Seeded, shard-invariant Monte Carlo engine.
//!
//! # Stream layout
//!
//! A run of `n` trials with master seed `seed` is cut into consecutive
//! blocks of [`BLOCK_SIZE`] trials (the last block may be shorter). Block `b`
//! draws from its own generator
//!
//! ```text
//! block_seed(seed, b) = splitmix64(seed + 0x9E3779B97F4A7C15 * (b + 1))   (wrapping u64)
//! generator           = ChaCha8Rng::seed_from_u64(block_seed(seed, b))
//! ```
//!
//! where `splitmix64` is the finalizer of Steele, Lea and Flood's SplitMix64
//! and `seed_from_u64` is the PCG32 expansion of `rand_core`. Shard `i` of
//! `k` owns the contiguous block range `[i * B / k, (i + 1) * B / k)` with
//! `B` the block count, so the trials, and therefore every [`Estimate`], do
//! not depend on the number of shards or on the physical parallelism.
//! Per-shard results are integer counts merged in shard order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// The generator behind every sampler in the crate.
pub type SimRng = ChaCha8Rng;

/// Number of trials drawn from one block generator.
pub const BLOCK_SIZE: u64 = 1 << 16;

pub const DEFAULT_CONFIDENCE: f64 = 0.95;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function.
pub fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the generator used for block `block` of a run seeded with `seed`.
pub fn block_seed(seed: u64, block: u64) -> u64 {
    splitmix64(seed.wrapping_add(GOLDEN_GAMMA.wrapping_mul(block.wrapping_add(1))))
}

/// A generator seeded directly from `seed`, for single-stream use.
pub fn seeded_rng(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}

/// A Bernoulli trial: draw a sample, report whether the event happened.
pub trait Experiment: Sync {
    fn trial(&self, rng: &mut SimRng) -> bool;
}

/// An [`Experiment`] assembled from a sampler and an event predicate.
pub struct Bernoulli<S, E> {
    sampler: S,
    event: E,
}

impl<S, E> Bernoulli<S, E> {
    pub fn new(sampler: S, event: E) -> Self {
        Self { sampler, event }
    }
}

impl<T, S, E> Experiment for Bernoulli<S, E>
where
    S: Fn(&mut SimRng) -> T + Sync,
    E: Fn(&T) -> bool + Sync,
{
    fn trial(&self, rng: &mut SimRng) -> bool {
        let sample = (self.sampler)(rng);
        (self.event)(&sample)
    }
}

/// Monte Carlo estimate of a probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub p_hat: f64,
    pub n: u64,
    pub successes: u64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub confidence: f64,
    pub seed: u64,
}

impl Estimate {
    pub fn from_counts(successes: u64, n: u64, confidence: f64, seed: u64) -> Result<Self> {
        let (ci_low, ci_high) = wilson_interval(successes, n, confidence)?;
        Ok(Self {
            p_hat: successes as f64 / n as f64,
            n,
            successes,
            ci_low,
            ci_high,
            confidence,
            seed,
        })
    }

    /// Binomial standard deviation of the frequency under a true probability `p`.
    pub fn sigma_under(&self, p: f64) -> f64 {
        (p * (1.0 - p) / self.n as f64).sqrt()
    }

    /// `|p_hat - p| <= k * sigma(p)`.
    pub fn within_sigmas(&self, p: f64, k: f64) -> bool {
        (self.p_hat - p).abs() <= k * self.sigma_under(p)
    }
}

fn check_run(n: u64, shards: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Config("the number of samples must be at least 1".into()));
    }
    if shards == 0 {
        return Err(Error::Config("the number of shards must be at least 1".into()));
    }
    if !n.is_multiple_of(shards as u64) {
        return Err(Error::Config(format!(
            "{n} samples cannot be split evenly across {shards} shards"
        )));
    }
    Ok(())
}

/// Runs `block(rng, count)` over every block of an `n`-trial stream and folds
/// the block results with `merge`, in block order within a shard and in shard
/// order across shards.
///
/// `merge` must be associative for the result to be shard-invariant.
pub fn map_blocks<A, F, M>(n: u64, seed: u64, shards: usize, block: F, merge: M) -> Result<A>
where
    A: Send + Default,
    F: Fn(&mut SimRng, u64) -> A + Sync,
    M: Fn(A, A) -> A + Sync,
{
    check_run(n, shards)?;
    let blocks = n.div_ceil(BLOCK_SIZE);
    let k = shards as u64;
    let partials: Vec<A> = (0..k)
        .into_par_iter()
        .map(|i| {
            let (start, end) = (i * blocks / k, (i + 1) * blocks / k);
            (start..end).fold(A::default(), |acc, b| {
                let count = BLOCK_SIZE.min(n - b * BLOCK_SIZE);
                let mut rng = seeded_rng(block_seed(seed, b));
                merge(acc, block(&mut rng, count))
            })
        })
        .collect();
    Ok(partials.into_iter().fold(A::default(), &merge))
}

/// Runs `n` trials of `experiment` and returns the success frequency with its
/// Wilson interval at [`DEFAULT_CONFIDENCE`].
pub fn run<X: Experiment + ?Sized>(experiment: &X, n: u64, seed: u64, shards: usize) -> Result<Estimate> {
    run_with_confidence(experiment, n, seed, shards, DEFAULT_CONFIDENCE)
}

pub fn run_with_confidence<X: Experiment + ?Sized>(
    experiment: &X,
    n: u64,
    seed: u64,
    shards: usize,
    confidence: f64,
) -> Result<Estimate> {
    let successes = map_blocks(
        n,
        seed,
        shards,
        |rng, count| (0..count).filter(|_| experiment.trial(rng)).count() as u64,
        |a, b| a + b,
    )?;
    Estimate::from_counts(successes, n, confidence, seed)
}

/// Wilson score interval for `successes` out of `n` at the given two-sided
/// confidence level, clipped to `[0, 1]`.
pub fn wilson_interval(successes: u64, n: u64, confidence: f64) -> Result<(f64, f64)> {
    if n == 0 || successes > n {
        return Err(Error::Domain(format!(
            "Wilson interval needs 0 <= successes <= n and n >= 1, got {successes}/{n}"
        )));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::Domain(format!(
            "confidence must lie in (0, 1), got {confidence}"
        )));
    }
    let z = Normal::standard().inverse_cdf(1.0 - (1.0 - confidence) / 2.0);
    let nf = n as f64;
    let p = successes as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let center = (p + z2 / (2.0 * nf)) / denom;
    let half = z / denom * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt();
    let low = if successes == 0 {
        0.0
    } else {
        (center - half).clamp(0.0, p)
    };
    let high = if successes == n {
        1.0
    } else {
        (center + half).clamp(p, 1.0)
    };
    Ok((low, high))
}
