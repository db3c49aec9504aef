//! Random rationals in `[0, 1]` built from a random denominator.
//!
//! A denominator `M >= 1` is drawn from a [`DenominatorLaw`] with masses
//! `p_m`, then a numerator `N` uniformly from `{0, ..., M}`, and `Q = N/M` is
//! reduced to lowest terms. For a canonical `q = n/m` this gives
//!
//! ```text
//! P(Q = n/m)      = sum_{l >= 1} p_{lm} / (lm + 1)
//! F_Q(x)          = sum_m p_m (floor(m x) + 1) / (m + 1)          0 <= x < 1
//! P(a < Q <= b)   = sum_m p_m (floor(m b) - floor(m a)) / (m + 1)
//! ```
//!
//! Every series is cut where the mass left out of the law drops below the
//! requested tolerance; each term is at most `p_m`, so that mass bounds the
//! truncation error.
//!
//! When `mu = E[1/M]` is small the law is close to uniform on intervals:
//!
//! ```text
//! b - a + (a - b - 1) mu  <=  P(a < Q <= b)  <=  b - a + (a - b + 1) mu
//! x - x mu  <  F_Q(x)  <  x + (1 - x) mu
//! ```
//!
//! and `mu <= s H_k + R_k` with `s = sup_m p_m`, `H_k` the harmonic number
//! and `R_k = sum_{m > k} p_m / m`. Along a family with `s_k ln k -> 0` this
//! bound vanishes, see [`convergence_table`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rand::distr::{weighted::WeightedIndex, Distribution};
use rand::Rng;
use rayon::prelude::*;
use statrs::function::gamma::ln_gamma;

use crate::error::{domain, Error, Result};
use crate::montecarlo::{self, Estimate, SimRng};

pub const DEFAULT_TOL: f64 = 1e-10;

/// Custom tables must sum to one within this.
pub const CUSTOM_MASS_TOL: f64 = 1e-12;

/// A rational in `[0, 1]` in lowest terms; `0 = 0/1` and `1 = 1/1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    n: u64,
    m: u64,
}

impl Rational {
    pub const ZERO: Rational = Rational { n: 0, m: 1 };
    pub const ONE: Rational = Rational { n: 1, m: 1 };

    /// Accepts only pairs already in lowest terms.
    pub fn new(n: u64, m: u64) -> Result<Self> {
        let q = Self::canonicalize(n, m)?;
        if q.m != m {
            return Err(domain(format!("{n}/{m} is not in lowest terms")));
        }
        Ok(q)
    }

    /// Reduces `n/m` to lowest terms.
    pub fn canonicalize(n: u64, m: u64) -> Result<Self> {
        if m == 0 || n > m {
            return Err(domain(format!("{n}/{m} is not a rational in [0, 1]")));
        }
        let g = n.gcd(&m);
        Ok(Rational { n: n / g, m: m / g })
    }

    pub fn numer(&self) -> u64 {
        self.n
    }

    pub fn denom(&self) -> u64 {
        self.m
    }

    pub fn to_f64(&self) -> f64 {
        self.n as f64 / self.m as f64
    }

    /// `q^2`, again in lowest terms since `gcd(n, m) = 1` implies `gcd(n^2, m^2) = 1`.
    pub fn squared(&self) -> Option<Rational> {
        Some(Rational {
            n: self.n.checked_mul(self.n)?,
            m: self.m.checked_mul(self.m)?,
        })
    }

    /// Every canonical rational with denominator at most `max_denom`, ordered
    /// by denominator then numerator.
    pub fn enumerate(max_denom: u64) -> impl Iterator<Item = Rational> {
        (1..=max_denom).flat_map(|m| {
            (0..=m)
                .filter(move |n| n.gcd(&m) == 1)
                .map(move |n| Rational { n, m })
        })
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.n as u128 * other.m as u128;
        let rhs = other.n as u128 * self.m as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.n, self.m)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `n/m` in lowest terms; `0` and `1` are accepted for `0/1` and `1/1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || domain(format!("cannot parse `{s}` as a rational n/m"));
        let digits = |t: &str| -> Result<u64> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        match s.split_once('/') {
            Some((n, m)) => Rational::new(digits(n)?, digits(m)?),
            None => Rational::new(digits(s)?, 1),
        }
    }
}

/// Law of the denominator `M` on `{1, 2, ...}`.
#[derive(Debug, Clone, PartialEq)]
pub enum DenominatorLaw {
    /// `p_m = w (1 - w)^(m - 1)`.
    Geometric {
        w: f64,
    },
    /// `M - 1` is Poisson: `p_m = e^-lambda lambda^(m-1) / (m-1)!`.
    Poisson {
        lambda: f64,
    },
    Degenerate {
        m0: u64,
    },
    /// `pmf[i]` is the mass of `m = i + 1`.
    Custom {
        pmf: Vec<f64>,
    },
}

impl DenominatorLaw {
    pub fn geometric(w: f64) -> Result<Self> {
        if !(w > 0.0 && w <= 1.0) {
            return Err(Error::InvalidLaw(format!(
                "geometric parameter {w} outside (0, 1]"
            )));
        }
        Ok(Self::Geometric { w })
    }

    pub fn poisson(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidLaw(format!(
                "Poisson parameter {lambda} must be positive"
            )));
        }
        Ok(Self::Poisson { lambda })
    }

    pub fn degenerate(m0: u64) -> Result<Self> {
        if m0 == 0 {
            return Err(Error::InvalidLaw(
                "degenerate denominator must be at least 1".into(),
            ));
        }
        Ok(Self::Degenerate { m0 })
    }

    pub fn custom(pmf: Vec<f64>) -> Result<Self> {
        if pmf.is_empty() || pmf.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(Error::InvalidLaw(
                "custom masses must be finite and non-negative".into(),
            ));
        }
        let total: f64 = pmf.iter().sum();
        if (total - 1.0).abs() > CUSTOM_MASS_TOL {
            return Err(Error::InvalidLaw(format!("custom masses sum to {total}, not 1")));
        }
        Ok(Self::Custom { pmf })
    }

    /// `P(M = m)`.
    pub fn pmf(&self, m: u64) -> f64 {
        if m == 0 {
            return 0.0;
        }
        match self {
            Self::Geometric { w } => w * ((m - 1) as f64 * (-w).ln_1p()).exp(),
            Self::Poisson { lambda } => poisson_pmf(*lambda, m - 1),
            Self::Degenerate { m0 } => (m == *m0) as u8 as f64,
            Self::Custom { pmf } => pmf.get((m - 1) as usize).copied().unwrap_or(0.0),
        }
    }

    /// The masses of all `m` except a set of total mass at most `tol`.
    pub fn truncate(&self, tol: f64) -> Result<TruncatedLaw> {
        check_tol(tol)?;
        Ok(match self {
            Self::Geometric { w } => {
                // P(M > L) = (1 - w)^L
                let len = if *w >= 1.0 {
                    1
                } else {
                    (tol.ln() / (-w).ln_1p()).ceil().max(1.0) as u64
                };
                let pmf = (1..=len).map(|m| self.pmf(m)).collect();
                TruncatedLaw {
                    first: 1,
                    pmf,
                    excluded: if *w >= 1.0 {
                        0.0
                    } else {
                        (len as f64 * (-w).ln_1p()).exp()
                    },
                }
            }
            Self::Poisson { lambda } => poisson_window(*lambda, tol),
            Self::Degenerate { m0 } => TruncatedLaw {
                first: *m0,
                pmf: vec![1.0],
                excluded: 0.0,
            },
            Self::Custom { pmf } => TruncatedLaw {
                first: 1,
                pmf: pmf.clone(),
                excluded: 0.0,
            },
        })
    }
}

impl fmt::Display for DenominatorLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Geometric { w } => write!(f, "geometric:{w}"),
            Self::Poisson { lambda } => write!(f, "poisson:{lambda}"),
            Self::Degenerate { m0 } => write!(f, "degenerate:{m0}"),
            Self::Custom { pmf } => {
                let parts: Vec<String> = pmf.iter().map(f64::to_string).collect();
                write!(f, "custom:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for DenominatorLaw {
    type Err = Error;

    /// `geometric:W`, `poisson:LAMBDA`, `degenerate:M` or `custom:P1,P2,...`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("law `{s}` must look like kind:parameter")))?;
        let num = |t: &str| -> Result<f64> {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("bad number `{t}` in law `{s}`")))
        };
        match kind.trim().to_ascii_lowercase().as_str() {
            "geometric" => Self::geometric(num(arg)?),
            "poisson" => Self::poisson(num(arg)?),
            "degenerate" => Self::degenerate(
                arg.trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("bad denominator `{arg}`")))?,
            ),
            "custom" => Self::custom(arg.split(',').map(num).collect::<Result<_>>()?),
            other => Err(Error::Config(format!("unknown law `{other}`"))),
        }
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(domain(format!("tolerance must lie in (0, 1), got {tol}")));
    }
    Ok(())
}

fn poisson_pmf(lambda: f64, j: u64) -> f64 {
    let j = j as f64;
    (-lambda + j * lambda.ln() - ln_gamma(j + 1.0)).exp()
}

// Masses of M - 1 = j around the mode, extended outwards until the geometric
// bounds on both tails fall below tol / 2.
fn poisson_window(lambda: f64, tol: f64) -> TruncatedLaw {
    let mode = lambda.floor() as u64;
    let at_mode = poisson_pmf(lambda, mode);

    let mut upper = Vec::new();
    let (mut j, mut p) = (mode, at_mode);
    let upper_tail = loop {
        let ratio = lambda / (j + 1) as f64;
        // masses beyond j are at most p r + p r^2 + ...
        let bound = p * ratio / (1.0 - ratio);
        if ratio < 1.0 && bound <= 0.5 * tol {
            break bound;
        }
        j += 1;
        p *= ratio;
        upper.push(p);
    };

    let mut lower = Vec::new();
    let (mut j, mut p) = (mode, at_mode);
    let lower_tail = loop {
        if j == 0 {
            break 0.0;
        }
        let ratio = j as f64 / lambda;
        let bound = p * ratio / (1.0 - ratio);
        if ratio < 1.0 && bound <= 0.5 * tol {
            break bound;
        }
        p *= ratio;
        j -= 1;
        lower.push(p);
    };

    let first_j = mode - lower.len() as u64;
    let mut pmf: Vec<f64> = lower.into_iter().rev().collect();
    pmf.push(at_mode);
    pmf.extend(upper);
    TruncatedLaw {
        first: first_j + 1,
        pmf,
        excluded: upper_tail + lower_tail,
    }
}

/// Masses `p_m` for `m` in `first .. first + pmf.len()`, with the mass of the
/// remaining denominators bounded by `excluded`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedLaw {
    pub first: u64,
    pub pmf: Vec<f64>,
    pub excluded: f64,
}

impl TruncatedLaw {
    pub fn last(&self) -> u64 {
        self.first + self.pmf.len() as u64 - 1
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.pmf
            .iter()
            .enumerate()
            .map(move |(i, &p)| (self.first + i as u64, p))
    }

    pub fn atom(&self, q: Rational) -> f64 {
        let m = q.denom();
        let start = self.first.div_ceil(m).max(1);
        let end = self.last() / m;
        (start..=end)
            .map(|l| l * m)
            .map(|lm| self.pmf[(lm - self.first) as usize] / (lm + 1) as f64)
            .sum::<f64>()
            .min(1.0)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        if x >= 1.0 {
            return 1.0;
        }
        self.iter()
            .map(|(m, p)| p * ((m as f64 * x).floor() + 1.0) / (m + 1) as f64)
            .sum::<f64>()
            .min(1.0)
    }

    pub fn interval(&self, a: f64, b: f64) -> Result<f64> {
        check_interval(a, b)?;
        Ok(self
            .iter()
            .map(|(m, p)| {
                let mf = m as f64;
                p * ((mf * b).floor() - (mf * a).floor()) / (m + 1) as f64
            })
            .sum::<f64>()
            .clamp(0.0, 1.0))
    }

    pub fn mean_reciprocal(&self) -> f64 {
        self.iter().map(|(m, p)| p / m as f64).sum()
    }

    /// `sum_{m > k} p_m / m`.
    pub fn reciprocal_tail(&self, k: u64) -> f64 {
        self.iter()
            .filter(|&(m, _)| m > k)
            .map(|(m, p)| p / m as f64)
            .sum()
    }

    /// `sup_x |F_Q(x) - x|` over the points `x_i`.
    pub fn cdf_sup_error(&self, grid: &[f64]) -> f64 {
        let mut cdf = vec![0.0; grid.len()];
        for (m, p) in self.iter() {
            let mf = m as f64;
            let scale = p / (mf + 1.0);
            for (c, &x) in cdf.iter_mut().zip(grid) {
                *c += scale * ((mf * x).floor() + 1.0);
            }
        }
        cdf.iter()
            .zip(grid)
            .map(|(c, x)| (c - x).abs())
            .fold(0.0, f64::max)
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(0.0 <= a && a < b && b <= 1.0) {
        return Err(domain(format!(
            "interval needs 0 <= a < b <= 1, got a = {a}, b = {b}"
        )));
    }
    Ok(())
}

/// `P(Q = q)` with truncation error at most `tol`.
pub fn atom_probability(q: Rational, law: &DenominatorLaw, tol: f64) -> Result<f64> {
    Ok(law.truncate(tol)?.atom(q))
}

/// `P(Q <= x)`.
pub fn cdf(x: f64, law: &DenominatorLaw, tol: f64) -> Result<f64> {
    Ok(law.truncate(tol)?.cdf(x))
}

/// `P(a < Q <= b)` for `0 <= a < b <= 1`.
pub fn interval_probability(a: f64, b: f64, law: &DenominatorLaw, tol: f64) -> Result<f64> {
    check_interval(a, b)?;
    law.truncate(tol)?.interval(a, b)
}

/// `E[1/M]`.
pub fn mean_reciprocal(law: &DenominatorLaw, tol: f64) -> Result<f64> {
    Ok(law.truncate(tol)?.mean_reciprocal())
}

/// `sup_m P(M = m)`.
pub fn sup_pmf(law: &DenominatorLaw) -> f64 {
    match law {
        DenominatorLaw::Geometric { w } => *w,
        DenominatorLaw::Poisson { lambda } => poisson_pmf(*lambda, lambda.floor() as u64),
        DenominatorLaw::Degenerate { .. } => 1.0,
        DenominatorLaw::Custom { pmf } => pmf.iter().copied().fold(0.0, f64::max),
    }
}

/// A prepared sampler for `Q` under one law.
#[derive(Debug, Clone)]
pub struct RationalSampler {
    denominator: DenominatorSampler,
}

#[derive(Debug, Clone)]
enum DenominatorSampler {
    Geometric(rand_distr::Geometric),
    Poisson(rand_distr::Poisson<f64>),
    Fixed(u64),
    Table(WeightedIndex<f64>),
}

impl RationalSampler {
    pub fn new(law: &DenominatorLaw) -> Result<Self> {
        let invalid = |e: &dyn fmt::Display| Error::InvalidLaw(e.to_string());
        let denominator = match law {
            DenominatorLaw::Geometric { w } => {
                DenominatorSampler::Geometric(rand_distr::Geometric::new(*w).map_err(|e| invalid(&e))?)
            }
            DenominatorLaw::Poisson { lambda } => {
                DenominatorSampler::Poisson(rand_distr::Poisson::new(*lambda).map_err(|e| invalid(&e))?)
            }
            DenominatorLaw::Degenerate { m0 } => DenominatorSampler::Fixed(*m0),
            DenominatorLaw::Custom { pmf } => {
                DenominatorSampler::Table(WeightedIndex::new(pmf).map_err(|e| invalid(&e))?)
            }
        };
        Ok(Self { denominator })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Rational {
        let m = match &self.denominator {
            // failures before the first success
            DenominatorSampler::Geometric(g) => 1 + g.sample(rng),
            DenominatorSampler::Poisson(p) => 1 + p.sample(rng) as u64,
            DenominatorSampler::Fixed(m) => *m,
            DenominatorSampler::Table(t) => 1 + t.sample(rng) as u64,
        };
        let n = rng.random_range(0..=m);
        Rational::canonicalize(n, m).expect("0 <= n <= m")
    }
}

/// One draw of `Q`. Build a [`RationalSampler`] once when drawing many.
pub fn sample_rational<R: Rng + ?Sized>(law: &DenominatorLaw, rng: &mut R) -> Result<Rational> {
    Ok(RationalSampler::new(law)?.sample(rng))
}

/// Frequency of the atom `q` among `n` draws.
pub fn sample_frequency(
    law: &DenominatorLaw,
    q: Rational,
    n: u64,
    seed: u64,
    shards: usize,
) -> Result<Estimate> {
    let sampler = RationalSampler::new(law)?;
    let experiment = montecarlo::Bernoulli::new(
        |rng: &mut SimRng| sampler.sample(rng),
        move |s: &Rational| *s == q,
    );
    montecarlo::run(&experiment, n, seed, shards)
}

/// Counts of every value among `n` draws.
pub fn sample_counts(
    law: &DenominatorLaw,
    n: u64,
    seed: u64,
    shards: usize,
) -> Result<BTreeMap<Rational, u64>> {
    let sampler = RationalSampler::new(law)?;
    montecarlo::map_blocks(
        n,
        seed,
        shards,
        |rng, count| {
            let mut seen = BTreeMap::new();
            for _ in 0..count {
                *seen.entry(sampler.sample(rng)).or_insert(0) += 1;
            }
            seen
        },
        |mut a, b| {
            for (q, c) in b {
                *a.entry(q).or_insert(0) += c;
            }
            a
        },
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Geometric,
    Poisson,
}

/// A sequence of denominator laws indexed by `k >= 1`.
#[derive(Debug, Clone, Copy)]
pub struct LawFamily {
    pub kind: FamilyKind,
    /// Maps `k` to the law parameter (`w` or `lambda`).
    pub parameter: fn(u64) -> f64,
}

impl LawFamily {
    /// `w_k = 1/k`.
    pub fn geometric() -> Self {
        Self {
            kind: FamilyKind::Geometric,
            parameter: |k| 1.0 / k as f64,
        }
    }

    /// `lambda_k = k`.
    pub fn poisson() -> Self {
        Self {
            kind: FamilyKind::Poisson,
            parameter: |k| k as f64,
        }
    }

    pub fn law(&self, k: u64) -> Result<DenominatorLaw> {
        let x = (self.parameter)(k);
        match self.kind {
            FamilyKind::Geometric => DenominatorLaw::geometric(x),
            FamilyKind::Poisson => DenominatorLaw::poisson(x),
        }
    }
}

impl FromStr for LawFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "geometric" => Ok(Self::geometric()),
            "poisson" => Ok(Self::poisson()),
            other => Err(Error::Config(format!("unknown law family `{other}`"))),
        }
    }
}

/// One row of [`convergence_table`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceDiagnostics {
    pub k: u64,
    pub parameter: f64,
    pub s_k: f64,
    pub mu_k: f64,
    pub s_k_ln_k: f64,
    pub h_k: f64,
    /// `sum_{m > k} p_m / m`; `mu_k <= s_k H_k + R_k`.
    pub r_k: f64,
    pub interval_probability: f64,
    /// `|P(a < Q <= b) - (b - a)|` on the probe interval.
    pub interval_error: f64,
    /// Whether the probe probability lies inside the `mu_k` sandwich.
    pub sandwich_holds: bool,
    /// `max |F_Q(x) - x|` over `x = i/1000`, `i = 0..1000`.
    pub cdf_sup_error: f64,
}

pub fn harmonic(k: u64) -> f64 {
    (1..=k).rev().map(|j| 1.0 / j as f64).sum()
}

pub const CDF_GRID_POINTS: usize = 1000;

pub fn cdf_grid() -> Vec<f64> {
    (0..CDF_GRID_POINTS)
        .map(|i| i as f64 / CDF_GRID_POINTS as f64)
        .collect()
}

pub fn diagnostics(
    family: &LawFamily,
    k: u64,
    probe: (f64, f64),
    tol: f64,
) -> Result<ConvergenceDiagnostics> {
    let (a, b) = probe;
    check_interval(a, b)?;
    let law = family.law(k)?;
    let table = law.truncate(tol)?;
    let s_k = sup_pmf(&law);
    let mu_k = table.mean_reciprocal();
    let p = table.interval(a, b)?;
    let len = b - a;
    // series are lower sums off by at most tol each
    let slack = 4.0 * tol;
    let sandwich_holds =
        len + (a - b - 1.0) * mu_k - slack <= p && p <= len + (a - b + 1.0) * (mu_k + tol) + slack;
    Ok(ConvergenceDiagnostics {
        k,
        parameter: (family.parameter)(k),
        s_k,
        mu_k,
        s_k_ln_k: s_k * (k as f64).ln(),
        h_k: harmonic(k),
        r_k: table.reciprocal_tail(k),
        interval_probability: p,
        interval_error: (p - len).abs(),
        sandwich_holds,
        cdf_sup_error: table.cdf_sup_error(&cdf_grid()),
    })
}

/// Diagnostics for each `k` in `ks`, computed in parallel and returned in the order of `ks`.
pub fn convergence_table(
    family: &LawFamily,
    ks: &[u64],
    probe: (f64, f64),
    tol: f64,
) -> Result<Vec<ConvergenceDiagnostics>> {
    if ks.is_empty() || ks[0] == 0 || ks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config(
            "ks must be a non-empty, strictly increasing list of positive indices".into(),
        ));
    }
    check_interval(probe.0, probe.1)?;
    check_tol(tol)?;
    ks.par_iter()
        .map(|&k| diagnostics(family, k, probe, tol))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::seeded_rng;
    use approx::assert_abs_diff_eq;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn laws() -> Vec<DenominatorLaw> {
        vec![
            DenominatorLaw::geometric(0.5).unwrap(),
            DenominatorLaw::geometric(0.03).unwrap(),
            DenominatorLaw::poisson(4.0).unwrap(),
            DenominatorLaw::poisson(0.3).unwrap(),
            DenominatorLaw::degenerate(6).unwrap(),
            DenominatorLaw::custom(vec![0.1, 0.2, 0.0, 0.3, 0.4]).unwrap(),
        ]
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(Rational::canonicalize(3, 6).unwrap(), q("1/2"));
        assert_eq!(Rational::canonicalize(0, 7).unwrap(), Rational::ZERO);
        assert_eq!(Rational::canonicalize(7, 7).unwrap(), Rational::ONE);
        assert_eq!(Rational::canonicalize(5, 7).unwrap().to_string(), "5/7");
        assert!(Rational::canonicalize(8, 7).is_err());
        assert!(Rational::canonicalize(0, 0).is_err());
        let r = Rational::canonicalize(12, 18).unwrap();
        assert_eq!(Rational::canonicalize(r.numer(), r.denom()).unwrap(), r);
    }

    #[test]
    fn parsing_is_strict() {
        assert_eq!(q("0"), Rational::ZERO);
        assert_eq!(q(" 1/1 "), Rational::ONE);
        for bad in ["2/4", "3/2", "1/0", "-1/2", "a/b", "1//2", "1/", "+1/2", "0.5"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad}");
        }
    }

    #[test]
    fn ordering_by_value() {
        let mut v: Vec<Rational> = Rational::enumerate(6).collect();
        v.sort();
        assert!(v.windows(2).all(|w| w[0].to_f64() < w[1].to_f64()));
        assert_eq!(v.first(), Some(&Rational::ZERO));
        assert_eq!(v.last(), Some(&Rational::ONE));
    }

    #[test]
    fn atom_examples() {
        let d2 = DenominatorLaw::degenerate(2).unwrap();
        assert_abs_diff_eq!(
            atom_probability(q("1/2"), &d2, 1e-10).unwrap(),
            1.0 / 3.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            atom_probability(Rational::ZERO, &d2, 1e-10).unwrap(),
            1.0 / 3.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            atom_probability(Rational::ONE, &d2, 1e-10).unwrap(),
            1.0 / 3.0,
            epsilon = 1e-15
        );
        assert_eq!(atom_probability(q("1/3"), &d2, 1e-10).unwrap(), 0.0);

        let g = DenominatorLaw::geometric(0.5).unwrap();
        let closed = 2.0 * (0.5f64.atanh() - 0.5);
        let brute: f64 = (1..=60).map(|l| 0.25f64.powi(l) / (2 * l + 1) as f64).sum();
        let atom = atom_probability(q("1/2"), &g, 1e-10).unwrap();
        assert_abs_diff_eq!(atom, closed, epsilon = 1e-9);
        assert_abs_diff_eq!(atom, brute, epsilon = 1e-9);
        assert_abs_diff_eq!(atom, 0.098_612_3, epsilon = 1e-7);
    }

    #[test]
    fn cdf_and_interval_examples() {
        let d2 = DenominatorLaw::degenerate(2).unwrap();
        assert_abs_diff_eq!(cdf(0.6, &d2, 1e-10).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
        assert_eq!(cdf(-0.5, &d2, 1e-10).unwrap(), 0.0);
        assert_eq!(cdf(1.0, &d2, 1e-10).unwrap(), 1.0);
        assert_abs_diff_eq!(
            interval_probability(0.0, 0.5, &d2, 1e-10).unwrap(),
            1.0 / 3.0,
            epsilon = 1e-15
        );
        assert!(interval_probability(0.5, 0.25, &d2, 1e-10).is_err());
        assert!(interval_probability(0.5, 0.5, &d2, 1e-10).is_err());
        for law in laws() {
            let zero = atom_probability(Rational::ZERO, &law, 1e-12).unwrap();
            let full = interval_probability(0.0, 1.0, &law, 1e-12).unwrap();
            assert_abs_diff_eq!(full, 1.0 - zero, epsilon = 1e-11);
        }
        let g = DenominatorLaw::geometric(0.01).unwrap();
        let mu = mean_reciprocal(&g, 1e-8).unwrap();
        let p = interval_probability(0.2, 0.3, &g, 1e-8).unwrap();
        assert!((p - 0.1).abs() <= 2.0 * mu);
    }

    #[test]
    fn mean_reciprocal_oracles() {
        assert_eq!(
            mean_reciprocal(&DenominatorLaw::degenerate(1).unwrap(), 1e-10).unwrap(),
            1.0
        );
        for w in [0.5, 0.01, 0.3] {
            let closed = -w * f64::ln(w) / (1.0 - w);
            let g = DenominatorLaw::geometric(w).unwrap();
            assert_abs_diff_eq!(mean_reciprocal(&g, 1e-12).unwrap(), closed, epsilon = 1e-11);
        }
        let brute: f64 = (1..=100).map(|m| 0.5f64.powi(m) / m as f64).sum();
        assert_abs_diff_eq!(brute, std::f64::consts::LN_2, epsilon = 1e-15);
        assert_abs_diff_eq!(
            mean_reciprocal(&DenominatorLaw::geometric(0.01).unwrap(), 1e-10).unwrap(),
            0.046_517,
            epsilon = 1e-6
        );
        // E[1/(1 + X)] = (1 - e^-lambda) / lambda for Poisson X
        for lambda in [0.3, 4.0, 50.0, 1000.0] {
            let p = DenominatorLaw::poisson(lambda).unwrap();
            let closed = -(-lambda).exp_m1() / lambda;
            assert_abs_diff_eq!(mean_reciprocal(&p, 1e-12).unwrap(), closed, epsilon = 1e-11);
        }
    }

    #[test]
    fn sup_examples() {
        assert_eq!(sup_pmf(&DenominatorLaw::geometric(0.1).unwrap()), 0.1);
        assert_eq!(sup_pmf(&DenominatorLaw::degenerate(7).unwrap()), 1.0);
        let p4 = sup_pmf(&DenominatorLaw::poisson(4.0).unwrap());
        assert_abs_diff_eq!(p4, (-4.0f64).exp() * 256.0 / 24.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p4, 0.1954, epsilon = 1e-4);
        let law = DenominatorLaw::poisson(37.5).unwrap();
        let table = law.truncate(1e-12).unwrap();
        let max = table.pmf.iter().copied().fold(0.0, f64::max);
        assert_abs_diff_eq!(sup_pmf(&law), max, epsilon = 1e-15);
    }

    #[test]
    fn truncation_bounds() {
        for law in laws() {
            for tol in [1e-6, 1e-10, 1e-13] {
                let t = law.truncate(tol).unwrap();
                assert!(t.excluded <= tol);
                let kept: f64 = t.pmf.iter().sum();
                assert!(
                    (1.0 - kept - t.excluded).abs() <= 1e-12 + t.excluded,
                    "{law} {tol}: kept {kept}"
                );
            }
        }
        assert!(DenominatorLaw::geometric(0.5).unwrap().truncate(0.0).is_err());
    }

    #[test]
    fn invalid_laws() {
        assert!(DenominatorLaw::geometric(0.0).is_err());
        assert!(DenominatorLaw::geometric(1.5).is_err());
        assert!(DenominatorLaw::poisson(-1.0).is_err());
        assert!(DenominatorLaw::degenerate(0).is_err());
        assert!(DenominatorLaw::custom(vec![0.5, 0.4]).is_err());
        assert!(DenominatorLaw::custom(vec![1.5, -0.5]).is_err());
        assert!(DenominatorLaw::custom(vec![0.5, 0.5 + 1e-13]).is_ok());
        assert_eq!(
            "poisson:4".parse::<DenominatorLaw>().unwrap(),
            DenominatorLaw::Poisson { lambda: 4.0 }
        );
        assert_eq!("custom:0.5,0.5".parse::<DenominatorLaw>().unwrap().pmf(2), 0.5);
        assert!("binomial:3".parse::<DenominatorLaw>().is_err());
        assert!("geometric".parse::<DenominatorLaw>().is_err());
    }

    #[test]
    fn total_mass_over_table_rows() {
        for law in [
            DenominatorLaw::degenerate(1).unwrap(),
            DenominatorLaw::degenerate(12).unwrap(),
            DenominatorLaw::custom(vec![0.1, 0.2, 0.0, 0.3, 0.4]).unwrap(),
            DenominatorLaw::custom((1..=30).map(|_| 1.0 / 30.0).collect()).unwrap(),
        ] {
            let table = law.truncate(1e-10).unwrap();
            let total: f64 = Rational::enumerate(table.last()).map(|q| table.atom(q)).sum();
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn atoms_are_symmetric() {
        for law in laws() {
            let table = law.truncate(1e-12).unwrap();
            for r in Rational::enumerate(50) {
                let mirror = Rational::new(r.denom() - r.numer(), r.denom()).unwrap();
                assert_eq!(table.atom(r), table.atom(mirror), "{law} {r}");
            }
        }
    }

    #[test]
    fn cdf_and_interval_agree() {
        let mut rng = seeded_rng(17);
        let tol = 1e-10;
        for law in laws() {
            for _ in 0..100 {
                let (x, y) = (rng.random::<f64>(), rng.random::<f64>());
                if x == y {
                    continue;
                }
                let (a, b) = (x.min(y), x.max(y));
                let i = interval_probability(a, b, &law, tol).unwrap();
                let d = cdf(b, &law, tol).unwrap() - cdf(a, &law, tol).unwrap();
                assert!((i - d).abs() <= 2.0 * tol, "{law}: {i} vs {d}");
            }
        }
    }

    #[test]
    fn cdf_is_monotone_with_jumps_at_atoms() {
        let law = DenominatorLaw::geometric(0.2).unwrap();
        let t = law.truncate(1e-12).unwrap();
        let grid: Vec<f64> = (0..=400).map(|i| i as f64 / 400.0).collect();
        assert!(grid.windows(2).all(|w| t.cdf(w[0]) <= t.cdf(w[1])));
        let jump = t.cdf(0.5) - t.cdf(0.5 - 1e-9);
        assert_abs_diff_eq!(jump, t.atom(q("1/2")), epsilon = 1e-9);
    }

    #[test]
    fn squaring_preserves_atoms() {
        for law in [
            DenominatorLaw::degenerate(10).unwrap(),
            DenominatorLaw::geometric(0.5).unwrap(),
        ] {
            let table = law.truncate(1e-14).unwrap();
            let half = q("1/2");
            let quarter = q("1/4");
            let mut squared: BTreeMap<Rational, f64> = BTreeMap::new();
            let mut above_half = 0.0;
            for r in Rational::enumerate(50) {
                let p = table.atom(r);
                *squared.entry(r.squared().unwrap()).or_insert(0.0) += p;
                if r > half {
                    above_half += p;
                }
            }
            // the square map is injective, so no two atoms merge
            assert_eq!(squared.len(), Rational::enumerate(50).count());
            let above_quarter: f64 = squared
                .iter()
                .filter(|(r, _)| **r > quarter)
                .map(|(_, p)| p)
                .sum();
            assert_abs_diff_eq!(above_half, above_quarter, epsilon = 1e-15);
            assert_abs_diff_eq!(above_half, table.interval(0.5, 1.0).unwrap(), epsilon = 1e-12);
        }
    }

    #[test]
    fn sampler_returns_canonical_values() {
        let mut rng = seeded_rng(8);
        for law in laws() {
            let s = RationalSampler::new(&law).unwrap();
            for _ in 0..2000 {
                let r = s.sample(&mut rng);
                assert_eq!(Rational::canonicalize(r.numer(), r.denom()).unwrap(), r);
            }
        }
    }

    #[test]
    fn sampler_matches_atoms() {
        let d2 = DenominatorLaw::degenerate(2).unwrap();
        let counts = sample_counts(&d2, 1_000_000, 42, 4).unwrap();
        assert_eq!(counts.len(), 3);
        for (_, c) in counts {
            let e = Estimate::from_counts(c, 1_000_000, 0.95, 42).unwrap();
            assert!(e.within_sigmas(1.0 / 3.0, 3.0));
        }
        let g = DenominatorLaw::geometric(0.5).unwrap();
        let e = sample_frequency(&g, q("1/2"), 1_000_000, 42, 4).unwrap();
        let p = atom_probability(q("1/2"), &g, DEFAULT_TOL).unwrap();
        assert!(e.within_sigmas(p, 3.0), "{} vs {p}", e.p_hat);
    }

    #[test]
    fn harmonic_numbers() {
        assert_eq!(harmonic(1), 1.0);
        assert_abs_diff_eq!(harmonic(4), 25.0 / 12.0, epsilon = 1e-15);
        assert_abs_diff_eq!(harmonic(10_000), 9.787_606_036_044_348, epsilon = 1e-12);
    }

    #[test]
    fn geometric_family_converges() {
        let rows = convergence_table(
            &LawFamily::geometric(),
            &[10, 100, 1000, 10_000],
            (0.0, 0.5),
            DEFAULT_TOL,
        )
        .unwrap();
        assert_eq!(
            rows.iter().map(|r| r.k).collect::<Vec<_>>(),
            vec![10, 100, 1000, 10_000]
        );
        for w in rows.windows(2) {
            assert!(w[1].s_k_ln_k < w[0].s_k_ln_k);
            assert!(w[1].mu_k < w[0].mu_k);
            assert!(w[1].cdf_sup_error < w[0].cdf_sup_error);
        }
        for r in &rows {
            assert!(r.sandwich_holds);
            assert!(r.interval_error <= 1.5 * r.mu_k);
            assert!(r.cdf_sup_error <= r.mu_k);
            assert!(r.mu_k <= r.s_k * r.h_k + r.r_k + 1e-12);
        }
    }

    #[test]
    fn poisson_family_converges() {
        let rows =
            convergence_table(&LawFamily::poisson(), &[10, 100, 1000], (0.0, 0.5), DEFAULT_TOL).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].s_k_ln_k < w[0].s_k_ln_k);
            assert!(w[1].mu_k < w[0].mu_k);
        }
        for r in &rows {
            assert!(r.sandwich_holds && r.interval_error <= 1.5 * r.mu_k && r.cdf_sup_error <= r.mu_k);
        }
    }

    #[test]
    fn cdf_bounds_with_unit_supremum() {
        for m0 in [1, 2, 5, 13] {
            let law = DenominatorLaw::custom((1..=m0).map(|m| (m == m0) as u8 as f64).collect()).unwrap();
            assert_eq!(sup_pmf(&law), 1.0);
            let t = law.truncate(DEFAULT_TOL).unwrap();
            let mu = t.mean_reciprocal();
            for x in cdf_grid().into_iter().skip(1) {
                let f = t.cdf(x);
                assert!(x - x * mu < f && f < x + (1.0 - x) * mu, "m0 {m0} x {x}");
            }
        }
    }

    #[test]
    fn table_arguments() {
        let g = LawFamily::geometric();
        assert!(convergence_table(&g, &[], (0.0, 0.5), 1e-10).is_err());
        assert!(convergence_table(&g, &[10, 10], (0.0, 0.5), 1e-10).is_err());
        assert!(convergence_table(&g, &[10], (0.5, 0.5), 1e-10).is_err());
    }
}
