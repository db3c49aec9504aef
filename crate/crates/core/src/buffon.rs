//! Buffon's needle with needle length equal to the line spacing (both 1).
//!
//! Two models of "a needle thrown at random" on the lines `y = 0, 1, 2, ...`:
//!
//! * [`NeedleModel::CenterAngle`]: the angle `theta` in `[-pi/2, pi/2]` and the
//!   distance `z` in `[0, 1]` of the centre from the line below are uniform.
//!   The needle crosses iff `z <= cos(theta)/2` or `z >= 1 - cos(theta)/2`,
//!   with probability `2/pi`.
//! * [`NeedleModel::Endpoints`]: the lower endpoint `x` is uniform on `[0, 1]`
//!   and the other endpoint `y` uniform on `[x - 1, x + 1]`. It crosses iff
//!   `y <= 0` or `y >= 1`, with probability `1/2`.
//!
//! Since `p = 2/pi` under the first model, `2/p_hat` estimates pi. The same
//! recipe under the second model estimates 4.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::montecarlo::{self, Bernoulli, Estimate, SimRng};

/// Smallest sample count accepted by [`estimate_pi`].
pub const MIN_PI_SAMPLES: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NeedleModel {
    CenterAngle,
    Endpoints,
}

impl NeedleModel {
    pub const ALL: [NeedleModel; 2] = [NeedleModel::CenterAngle, NeedleModel::Endpoints];

    pub fn name(self) -> &'static str {
        match self {
            NeedleModel::CenterAngle => "center-angle",
            NeedleModel::Endpoints => "endpoints",
        }
    }

    pub fn number(self) -> u8 {
        match self {
            NeedleModel::CenterAngle => 1,
            NeedleModel::Endpoints => 2,
        }
    }
}

impl fmt::Display for NeedleModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for NeedleModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" | "center-angle" | "centerangle" => Ok(NeedleModel::CenterAngle),
            "2" | "endpoints" => Ok(NeedleModel::Endpoints),
            other => Err(Error::Config(format!("unknown needle model `{other}`"))),
        }
    }
}

/// One thrown needle in the coordinates of its model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NeedleSample {
    CenterAngle { theta: f64, z: f64 },
    Endpoints { x: f64, y: f64 },
}

impl NeedleSample {
    pub fn model(&self) -> NeedleModel {
        match self {
            NeedleSample::CenterAngle { .. } => NeedleModel::CenterAngle,
            NeedleSample::Endpoints { .. } => NeedleModel::Endpoints,
        }
    }
}

pub fn sample_needle<R: Rng + ?Sized>(model: NeedleModel, rng: &mut R) -> NeedleSample {
    match model {
        NeedleModel::CenterAngle => {
            let theta = PI * rng.random::<f64>() - FRAC_PI_2;
            let z = rng.random::<f64>();
            NeedleSample::CenterAngle { theta, z }
        }
        NeedleModel::Endpoints => {
            let x = rng.random::<f64>();
            let y = x - 1.0 + 2.0 * rng.random::<f64>();
            NeedleSample::Endpoints { x, y }
        }
    }
}

/// Whether the needle touches a line. Touching at an end counts.
pub fn crosses(sample: &NeedleSample) -> bool {
    match *sample {
        NeedleSample::CenterAngle { theta, z } => {
            let half = 0.5 * theta.cos();
            z <= half || z >= 1.0 - half
        }
        NeedleSample::Endpoints { y, .. } => y <= 0.0 || y >= 1.0,
    }
}

pub fn exact_cross_probability(model: NeedleModel) -> f64 {
    match model {
        NeedleModel::CenterAngle => 2.0 / PI,
        NeedleModel::Endpoints => 0.5,
    }
}

/// Joint density of `(x, y)` under the endpoint model: `1/2` on the band
/// `0 <= x <= 1`, `|x - y| <= 1`.
pub fn endpoint_density(x: f64, y: f64) -> f64 {
    if (0.0..=1.0).contains(&x) && (x - y).abs() <= 1.0 {
        0.5
    } else {
        0.0
    }
}

pub fn cross_experiment(model: NeedleModel) -> impl montecarlo::Experiment {
    Bernoulli::new(move |rng: &mut SimRng| sample_needle(model, rng), crosses)
}

pub fn monte_carlo_cross(model: NeedleModel, n: u64, seed: u64, shards: usize) -> Result<Estimate> {
    montecarlo::run(&cross_experiment(model), n, seed, shards)
}

/// `2 / p_hat` together with the crossing frequency it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiEstimate {
    pub value: f64,
    /// `[2 / p_high, 2 / p_low]` from the Wilson interval of the frequency.
    pub ci_low: f64,
    pub ci_high: f64,
    pub crossing: Estimate,
}

pub fn estimate_pi(model: NeedleModel, n: u64, seed: u64, shards: usize) -> Result<PiEstimate> {
    if n < MIN_PI_SAMPLES {
        return Err(Error::Config(format!(
            "pi estimation needs at least {MIN_PI_SAMPLES} samples, got {n}"
        )));
    }
    let crossing = monte_carlo_cross(model, n, seed, shards)?;
    pi_from_crossing(crossing)
}

pub fn pi_from_crossing(crossing: Estimate) -> Result<PiEstimate> {
    if crossing.successes == 0 {
        return Err(Error::DegenerateEstimate(format!(
            "no crossings in {} throws, 2/p_hat is infinite",
            crossing.n
        )));
    }
    Ok(PiEstimate {
        value: 2.0 / crossing.p_hat,
        ci_low: 2.0 / crossing.ci_high,
        ci_high: if crossing.ci_low > 0.0 {
            2.0 / crossing.ci_low
        } else {
            f64::INFINITY
        },
        crossing,
    })
}
