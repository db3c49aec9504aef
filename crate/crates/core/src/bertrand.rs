//! The three random-chord models and the change of measure between them.
//!
//! Each model declares a different pair of chord coordinates to be uniform:
//!
//! * [`ChordModel::MidpointUniform`]: the midpoint `(x, y)` is uniform on the disc,
//!   density `1/pi`.
//! * [`ChordModel::TangentAngleUniform`]: endpoint angle `alpha` in `[0, 2pi]` and
//!   tangent angle `beta` in `[0, pi]` are uniform, density `1/(2 pi^2)`.
//! * [`ChordModel::PolarUniform`]: the polar coordinates `(r, theta)` of the
//!   chord/diameter intersection are uniform on `[0, 1] x (-pi, pi]`, density `1/(2 pi)`.
//!
//! A measure can be expressed in any of the three coordinate systems. The
//! densities of every measure in every chart, obtained from the Jacobians of
//! the coordinate maps, are
//!
//! | measure \ chart | midpoint `(x, y)` | angles `(alpha, beta)` | polar `(r, theta)` |
//! |---|---|---|---|
//! | midpoint | `1/pi` | `abs(sin b cos b) / (2 pi)` | `r/pi` |
//! | angles | `1 / (pi^2 r sqrt(1 - r^2))` | `1 / (2 pi^2)` | `1 / (pi^2 sqrt(1 - r^2))` |
//! | polar | `1 / (2 pi r)` | `sin b / (4 pi)` | `1 / (2 pi)` |
//!
//! The `(alpha, beta)` chart covers every chord twice (once from each
//! endpoint), which accounts for the factor 1/2 in that column.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{domain, Error, Result};
use crate::geometry::{
    cartesian_to_polar, chord_length_from_midpoint, chord_length_from_polar, chord_length_from_tangent_angle,
    exceeds_triangle_edge, polar_to_cartesian, wrap_angle, PointXY, PolarRT, TangentAngles,
};
use crate::montecarlo::{self, Bernoulli, Estimate, SimRng};
use crate::quadrature::{integrate_2d, Quadrature};

/// Absolute tolerance handed to the quadrature in
/// [`exceed_probability_under_measure`]; comfortably below the guaranteed `1e-9`.
pub const QUADRATURE_TOL: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChordModel {
    MidpointUniform,
    TangentAngleUniform,
    PolarUniform,
}

impl ChordModel {
    pub const ALL: [ChordModel; 3] = [
        ChordModel::MidpointUniform,
        ChordModel::TangentAngleUniform,
        ChordModel::PolarUniform,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChordModel::MidpointUniform => "midpoint",
            ChordModel::TangentAngleUniform => "tangent",
            ChordModel::PolarUniform => "polar",
        }
    }

    /// 1-based model number used on the command line.
    pub fn number(self) -> u8 {
        match self {
            ChordModel::MidpointUniform => 1,
            ChordModel::TangentAngleUniform => 2,
            ChordModel::PolarUniform => 3,
        }
    }
}

impl fmt::Display for ChordModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for ChordModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" | "midpoint" => Ok(ChordModel::MidpointUniform),
            "2" | "tangent" => Ok(ChordModel::TangentAngleUniform),
            "3" | "polar" => Ok(ChordModel::PolarUniform),
            other => Err(Error::Config(format!("unknown chord model `{other}`"))),
        }
    }
}

/// A chord position in one of the three coordinate systems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NativePoint {
    Midpoint(PointXY),
    Angles(TangentAngles),
    Polar(PolarRT),
}

impl NativePoint {
    /// The model whose uniform coordinates this chart uses.
    pub fn chart(&self) -> ChordModel {
        match self {
            NativePoint::Midpoint(_) => ChordModel::MidpointUniform,
            NativePoint::Angles(_) => ChordModel::TangentAngleUniform,
            NativePoint::Polar(_) => ChordModel::PolarUniform,
        }
    }

    pub fn midpoint(&self) -> PointXY {
        match *self {
            NativePoint::Midpoint(p) => p,
            NativePoint::Angles(a) => a.midpoint(),
            NativePoint::Polar(p) => polar_to_cartesian(p),
        }
    }

    pub fn chord_length(&self) -> Result<f64> {
        match *self {
            NativePoint::Midpoint(p) => chord_length_from_midpoint(p),
            NativePoint::Angles(a) => chord_length_from_tangent_angle(a.beta()),
            NativePoint::Polar(p) => chord_length_from_polar(p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordSample {
    pub model: ChordModel,
    pub coords: NativePoint,
    pub length: f64,
}

impl ChordSample {
    pub fn exceeds_edge(&self) -> bool {
        exceeds_triangle_edge(self.length)
    }

    pub fn midpoint(&self) -> PointXY {
        self.coords.midpoint()
    }
}

/// One chord written in all three coordinate systems at once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordCoordinates {
    pub midpoint: PointXY,
    /// `None` for diameters, whose midpoint is the center.
    pub polar: Option<PolarRT>,
    /// Angles seen from the endpoint for which `beta <= pi/2`, unless the
    /// chord was sampled in the angle chart.
    pub angles: TangentAngles,
    pub length: f64,
}

impl ChordCoordinates {
    pub fn from_sample(sample: &ChordSample) -> Self {
        let midpoint = sample.midpoint();
        let polar = match sample.coords {
            NativePoint::Polar(p) if p.r() > 0.0 => Some(p),
            _ => cartesian_to_polar(midpoint).ok(),
        };
        let angles = match sample.coords {
            NativePoint::Angles(a) => a,
            _ => {
                let d = midpoint.norm_sq().sqrt().min(1.0);
                let beta = d.acos();
                let phi = match sample.coords {
                    NativePoint::Polar(p) => p.theta(),
                    _ => polar.map_or(0.0, |p| p.theta()),
                };
                let alpha = (phi - beta).rem_euclid(TAU);
                TangentAngles::new(alpha, beta).expect("angles are in range by construction")
            }
        };
        Self {
            midpoint,
            polar,
            angles,
            length: sample.length,
        }
    }
}

/// Draws one chord under `model`.
///
/// The midpoint model uses rejection from `[-1, 1]^2`: pairs of uniforms are
/// drawn until one lands in the closed unit disc (on average `4/pi` pairs).
pub fn sample_chord<R: Rng + ?Sized>(model: ChordModel, rng: &mut R) -> ChordSample {
    let coords = match model {
        ChordModel::MidpointUniform => loop {
            let x = 2.0 * rng.random::<f64>() - 1.0;
            let y = 2.0 * rng.random::<f64>() - 1.0;
            let p = PointXY::new(x, y);
            if p.in_closed_disc() {
                break NativePoint::Midpoint(p);
            }
        },
        ChordModel::TangentAngleUniform => {
            let alpha = TAU * rng.random::<f64>();
            let beta = PI * rng.random::<f64>();
            NativePoint::Angles(TangentAngles::new(alpha, beta).expect("in range"))
        }
        ChordModel::PolarUniform => {
            let r = rng.random::<f64>();
            // 1 - u in (0, 1] keeps theta in (-pi, pi]
            let theta = PI - TAU * rng.random::<f64>();
            NativePoint::Polar(PolarRT::new(r, theta).expect("in range"))
        }
    };
    let length = coords.chord_length().expect("samples lie in the closed disc");
    ChordSample {
        model,
        coords,
        length,
    }
}

/// Indicator of the closed interval `[a, b]`.
pub fn indicator(a: f64, b: f64, x: f64) -> f64 {
    if a <= x && x <= b {
        1.0
    } else {
        0.0
    }
}

/// Density of `measure` at `point`, expressed in the chart of `point`.
///
/// When the chart is the measure's own this is the uniform density of the
/// model; otherwise it is the pushforward density from the table in the
/// module docs. Zero outside the support; infinite at the integrable
/// singularities (`r = 0` in the midpoint chart, `r = 1` for the angle measure).
pub fn density(measure: ChordModel, point: &NativePoint) -> f64 {
    use ChordModel::*;
    match *point {
        NativePoint::Midpoint(p) => {
            let r2 = p.norm_sq();
            let inside = indicator(0.0, 1.0, r2);
            if inside == 0.0 {
                return 0.0;
            }
            let r = r2.sqrt();
            match measure {
                MidpointUniform => 1.0 / PI,
                TangentAngleUniform => 1.0 / (PI * PI * r * one_minus_norm_sq(p).sqrt()),
                PolarUniform => 1.0 / (TAU * r),
            }
        }
        NativePoint::Angles(a) => {
            let support = indicator(0.0, TAU, a.alpha()) * indicator(0.0, PI, a.beta());
            let b = a.beta();
            support
                * match measure {
                    MidpointUniform => (b.sin() * b.cos()).abs() / TAU,
                    TangentAngleUniform => 1.0 / (2.0 * PI * PI),
                    PolarUniform => b.sin() / (4.0 * PI),
                }
        }
        NativePoint::Polar(p) => {
            let r = p.r();
            let support = indicator(0.0, 1.0, r) * indicator(-PI, PI, p.theta());
            if support == 0.0 {
                return 0.0;
            }
            match measure {
                MidpointUniform => r / PI,
                TangentAngleUniform => 1.0 / (PI * PI * ((1.0 - r) * (1.0 + r)).sqrt()),
                PolarUniform => 1.0 / TAU,
            }
        }
    }
}

// 1 - x^2 - y^2 without cancellation near the circle.
fn one_minus_norm_sq(p: PointXY) -> f64 {
    let (big, small) = if p.x.abs() >= p.y.abs() {
        (p.x.abs(), p.y)
    } else {
        (p.y.abs(), p.x)
    };
    ((1.0 - big) * (1.0 + big) - small * small).max(0.0)
}

/// The three classical answers: 1/4, 1/3 and 1/2.
pub fn exact_exceed_probability(model: ChordModel) -> f64 {
    match model {
        ChordModel::MidpointUniform => 0.25,
        ChordModel::TangentAngleUniform => 1.0 / 3.0,
        ChordModel::PolarUniform => 0.5,
    }
}

/// Closed form of `P(length > threshold)` under `measure`, for any threshold
/// in `[0, 2]`: `1 - t^2/4`, `1 - 2 asin(t/2)/pi` and `sqrt(1 - t^2/4)`.
pub fn exceed_probability_closed_form(measure: ChordModel, threshold: f64) -> Result<f64> {
    check_threshold(threshold)?;
    let rho2 = 1.0 - threshold * threshold / 4.0;
    Ok(match measure {
        ChordModel::MidpointUniform => rho2,
        ChordModel::TangentAngleUniform => 1.0 - 2.0 * (threshold / 2.0).asin() / PI,
        ChordModel::PolarUniform => rho2.sqrt(),
    })
}

/// Closed-form density of the polar coordinates when the midpoint is uniform:
/// `r/pi` on `[0, 1] x [-pi, pi]`.
pub fn pushforward_polar_density(base: ChordModel, point: PolarRT) -> Result<f64> {
    match base {
        ChordModel::MidpointUniform => {
            Ok(point.r() / PI * indicator(0.0, 1.0, point.r()) * indicator(-PI, PI, point.theta()))
        }
        other => Err(Error::NotImplemented(format!(
            "closed-form polar pushforward of the {other} model; use exceed_probability_under_measure"
        ))),
    }
}

fn check_threshold(threshold: f64) -> Result<()> {
    if !(0.0..=2.0).contains(&threshold) {
        return Err(domain(format!(
            "chord length threshold must lie in [0, 2], got {threshold}"
        )));
    }
    Ok(())
}

/// `P(length > threshold)` under `measure`, integrated numerically in the
/// coordinates of `evaluation_system`.
///
/// The event region is written exactly in the evaluation chart (a disc of
/// radius `sqrt(1 - t^2/4)`, a band `asin(t/2) < beta < pi - asin(t/2)` or a
/// rectangle `r < sqrt(1 - t^2/4)`), and the density of `measure` in that chart
/// is integrated over it. The answer depends on the measure only.
pub fn exceed_probability_under_measure(
    threshold: f64,
    measure: ChordModel,
    evaluation_system: ChordModel,
) -> Result<f64> {
    Ok(exceed_quadrature(threshold, measure, evaluation_system)?.value)
}

/// Same as [`exceed_probability_under_measure`] with the quadrature diagnostics.
pub fn exceed_quadrature(
    threshold: f64,
    measure: ChordModel,
    evaluation_system: ChordModel,
) -> Result<Quadrature> {
    exceed_quadrature_with_tol(threshold, measure, evaluation_system, QUADRATURE_TOL)
}

pub fn exceed_quadrature_with_tol(
    threshold: f64,
    measure: ChordModel,
    evaluation_system: ChordModel,
    tol: f64,
) -> Result<Quadrature> {
    check_threshold(threshold)?;
    if !(tol > 0.0) {
        return Err(domain(format!(
            "quadrature tolerance must be positive, got {tol}"
        )));
    }
    let rho = (1.0 - threshold * threshold / 4.0).max(0.0).sqrt();
    let q = match evaluation_system {
        ChordModel::MidpointUniform => {
            // radially symmetric densities: four times the first quadrant
            let f =
                |x: f64, y: f64| finite_or_zero(density(measure, &NativePoint::Midpoint(PointXY::new(x, y))));
            let quadrant = integrate_2d(
                f,
                0.0,
                rho,
                |_| 0.0,
                |x| (rho * rho - x * x).max(0.0).sqrt(),
                tol / 4.0,
            );
            Quadrature {
                value: 4.0 * quadrant.value,
                error_estimate: 4.0 * quadrant.error_estimate,
                ..quadrant
            }
        }
        ChordModel::TangentAngleUniform => {
            let beta0 = (threshold / 2.0).asin();
            let f = |alpha: f64, beta: f64| {
                // alpha is integrated over [0, 2pi] exactly, so it is in range
                TangentAngles::new(alpha.clamp(0.0, TAU), beta.clamp(0.0, PI))
                    .map(|a| density(measure, &NativePoint::Angles(a)))
                    .unwrap_or(0.0)
            };
            // split at pi/2 where |sin b cos b| has a kink
            let halves = [(beta0, PI / 2.0), (PI / 2.0, PI - beta0)];
            halves
                .iter()
                .filter(|(lo, hi)| hi > lo)
                .map(|&(lo, hi)| integrate_2d(f, 0.0, TAU, move |_| lo, move |_| hi, tol / 2.0))
                .fold(
                    Quadrature {
                        value: 0.0,
                        error_estimate: 0.0,
                        panels: 0,
                        converged: true,
                    },
                    |acc, q| Quadrature {
                        value: acc.value + q.value,
                        error_estimate: acc.error_estimate + q.error_estimate,
                        panels: acc.panels + q.panels,
                        converged: acc.converged && q.converged,
                    },
                )
        }
        ChordModel::PolarUniform => {
            let f = |theta: f64, r: f64| {
                PolarRT::new(r, wrap_angle(theta))
                    .map(|p| finite_or_zero(density(measure, &NativePoint::Polar(p))))
                    .unwrap_or(0.0)
            };
            integrate_2d(f, -PI, PI, |_| 0.0, |_| rho, tol)
        }
    };
    Ok(q)
}

// A node that rounds onto an integrable singularity (the center, or the
// circle for the angle measure) sits on a null set; it contributes nothing.
fn finite_or_zero(d: f64) -> f64 {
    if d.is_finite() {
        d
    } else {
        0.0
    }
}

/// Bernoulli experiment "the chord sampled under `model` is longer than the triangle edge".
pub fn exceed_experiment(model: ChordModel) -> impl montecarlo::Experiment {
    Bernoulli::new(
        move |rng: &mut SimRng| sample_chord(model, rng),
        ChordSample::exceeds_edge,
    )
}

/// Monte Carlo estimate of the exceed probability under `model`.
pub fn monte_carlo_exceed(model: ChordModel, n: u64, seed: u64, shards: usize) -> Result<Estimate> {
    montecarlo::run(&exceed_experiment(model), n, seed, shards)
}

/// Monte Carlo estimate of an arbitrary chord event under `model`.
pub fn monte_carlo_event<E>(model: ChordModel, event: E, n: u64, seed: u64, shards: usize) -> Result<Estimate>
where
    E: Fn(&ChordSample) -> bool + Sync,
{
    let experiment = Bernoulli::new(move |rng: &mut SimRng| sample_chord(model, rng), event);
    montecarlo::run(&experiment, n, seed, shards)
}
