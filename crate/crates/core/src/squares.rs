//! A number picked at random from `[0, 100]`, and its square.
//!
//! Asking whether `X > 50` and whether `X^2 > 2500` is asking the same thing,
//! yet treating `X^2` as uniform on `[0, 10000]` gives `3/4` instead of `1/2`.
//! The law of `X^2` when `X` is uniform has density `1/(200 sqrt(y))` and
//! restores `1/2`. On a finite set of integers the question is one of
//! counting, and squaring, being a bijection, changes nothing.

use std::fmt;
use std::str::FromStr;

use num_integer::Roots;
use rand::Rng;

use crate::error::{domain, Error, Result};
use crate::montecarlo::{self, Bernoulli, Estimate, SimRng};
use crate::rationals::Rational;

pub const UPPER: f64 = 100.0;
pub const UPPER_SQUARED: f64 = UPPER * UPPER;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalModel {
    /// `X` uniform on `[0, 100]`, question `X > t`.
    UniformX,
    /// `X^2` taken as uniform on `[0, 10000]`, question `X^2 > t`.
    NaiveUniformSquare,
    /// The actual law of `X^2` for uniform `X`, question `X^2 > t`.
    PushforwardSquare,
}

impl IntervalModel {
    pub const ALL: [IntervalModel; 3] = [
        IntervalModel::UniformX,
        IntervalModel::NaiveUniformSquare,
        IntervalModel::PushforwardSquare,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IntervalModel::UniformX => "uniform-x",
            IntervalModel::NaiveUniformSquare => "naive-uniform-square",
            IntervalModel::PushforwardSquare => "pushforward-square",
        }
    }

    /// Upper end of the interval the threshold lives in.
    pub fn upper(self) -> f64 {
        match self {
            IntervalModel::UniformX => UPPER,
            _ => UPPER_SQUARED,
        }
    }
}

impl fmt::Display for IntervalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for IntervalModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IntervalModel::ALL
            .into_iter()
            .find(|m| m.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::Config(format!("unknown interval model `{s}`")))
    }
}

/// `P(value > threshold)` under `model`.
pub fn exceed_probability(model: IntervalModel, threshold: f64) -> Result<f64> {
    let top = model.upper();
    if !(0.0..=top).contains(&threshold) {
        return Err(domain(format!(
            "{model}: threshold {threshold} outside [0, {top}]"
        )));
    }
    Ok(match model {
        IntervalModel::UniformX => (UPPER - threshold) / UPPER,
        IntervalModel::NaiveUniformSquare => (UPPER_SQUARED - threshold) / UPPER_SQUARED,
        IntervalModel::PushforwardSquare => 1.0 - threshold.sqrt() / UPPER,
    })
}

/// Density of `X^2` for `X` uniform on `[0, 100]`.
pub fn pushforward_square_density(y: f64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(domain(format!("square density needs y > 0, got {y}")));
    }
    Ok(if y <= UPPER_SQUARED {
        1.0 / (200.0 * y.sqrt())
    } else {
        0.0
    })
}

/// Fraction of `k` in `1..=n_max` with `k > threshold`, or `k^2 > threshold`
/// when `squared` is set.
pub fn finite_counting_probability(n_max: u64, threshold: u64, squared: bool) -> Result<Rational> {
    if n_max == 0 {
        return Err(domain("finite counting needs n_max >= 1"));
    }
    Rational::canonicalize(finite_count(n_max, threshold, squared), n_max)
}

/// Numerator of [`finite_counting_probability`] before reduction.
pub fn finite_count(n_max: u64, threshold: u64, squared: bool) -> u64 {
    // k^2 > t  <=>  k > isqrt(t)
    let cut = if squared { threshold.sqrt() } else { threshold };
    n_max - cut.min(n_max)
}

/// Monte Carlo estimate of `P(X^2 > threshold)` with `X` uniform on `[0, 100]`.
pub fn monte_carlo_square_exceed(threshold: f64, n: u64, seed: u64, shards: usize) -> Result<Estimate> {
    let experiment = Bernoulli::new(
        |rng: &mut SimRng| UPPER * rng.random::<f64>(),
        move |x: &f64| x * x > threshold,
    );
    montecarlo::run(&experiment, n, seed, shards)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;
    use approx::assert_abs_diff_eq;

    #[test]
    fn continuous_answers() {
        assert_eq!(exceed_probability(IntervalModel::UniformX, 50.0).unwrap(), 0.5);
        assert_eq!(
            exceed_probability(IntervalModel::NaiveUniformSquare, 2500.0).unwrap(),
            0.75
        );
        assert_eq!(
            exceed_probability(IntervalModel::PushforwardSquare, 2500.0).unwrap(),
            0.5
        );
        assert!(exceed_probability(IntervalModel::UniformX, 200.0).is_err());
        assert!(exceed_probability(IntervalModel::PushforwardSquare, -1.0).is_err());
    }

    #[test]
    fn density_values() {
        assert_abs_diff_eq!(pushforward_square_density(2500.0).unwrap(), 1e-4, epsilon = 1e-18);
        assert_abs_diff_eq!(
            pushforward_square_density(10000.0).unwrap(),
            5e-5,
            epsilon = 1e-18
        );
        assert_eq!(pushforward_square_density(20000.0).unwrap(), 0.0);
        assert!(pushforward_square_density(0.0).is_err());
    }

    #[test]
    fn density_integrates_to_cdf() {
        for i in 1..=50 {
            let t = 200.0 * i as f64;
            let q = integrate(|y| pushforward_square_density(y).unwrap_or(0.0), 0.0, t, 1e-12);
            assert_abs_diff_eq!(q.value, t.sqrt() / 100.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn finite_counts() {
        let half = Rational::canonicalize(1, 2).unwrap();
        assert_eq!(finite_counting_probability(100, 50, false).unwrap(), half);
        assert_eq!(finite_counting_probability(100, 2500, true).unwrap(), half);
        assert_eq!(
            finite_counting_probability(10, 100, true).unwrap(),
            Rational::ZERO
        );
        assert_eq!(finite_counting_probability(10, 0, false).unwrap(), Rational::ONE);
        assert!(finite_counting_probability(0, 1, false).is_err());
    }

    #[test]
    fn counting_matches_brute_force() {
        for n_max in 1..=60u64 {
            for t in 0..=4000u64 {
                let plain = (1..=n_max).filter(|k| *k > t).count() as u64;
                let sq = (1..=n_max).filter(|k| k * k > t).count() as u64;
                assert_eq!(
                    finite_counting_probability(n_max, t, false).unwrap(),
                    Rational::canonicalize(plain, n_max).unwrap()
                );
                assert_eq!(
                    finite_counting_probability(n_max, t, true).unwrap(),
                    Rational::canonicalize(sq, n_max).unwrap()
                );
            }
        }
    }

    #[test]
    fn squaring_is_a_bijection_on_counts() {
        // same denominator on both sides, so equal counts mean equal fractions
        for n_max in 1..=10_000u64 {
            for t in 0..=n_max + 1 {
                assert_eq!(
                    finite_count(n_max, t, false),
                    finite_count(n_max, t * t, true),
                    "{n_max} {t}"
                );
            }
        }
    }

    #[test]
    fn monte_carlo_square() {
        let e = monte_carlo_square_exceed(2500.0, 1_000_000, 42, 2).unwrap();
        assert!(e.within_sigmas(0.5, 3.0), "{}", e.p_hat);
    }
}
