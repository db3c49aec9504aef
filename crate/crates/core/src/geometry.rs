//! Chords of the unit circle and the Cartesian/polar change of coordinates.
//!
//! The circle has radius 1 throughout. A chord is longer than the edge of
//! the inscribed equilateral triangle when its length exceeds `sqrt(3)`;
//! a length of exactly `sqrt(3)` counts as "does not exceed".

use std::f64::consts::{PI, TAU};

use crate::error::{domain, Error, Result};

/// Edge length of the equilateral triangle inscribed in the unit circle.
pub const TRIANGLE_EDGE: f64 = 1.732_050_807_568_877_2;

/// Absolute tolerance used when comparing O(1) geometric quantities.
pub const GEOMETRY_TOL: f64 = 1e-12;

/// A point of the plane, usually the midpoint of a chord.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointXY {
    pub x: f64,
    pub y: f64,
}

impl PointXY {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn in_closed_disc(&self) -> bool {
        self.norm_sq() <= 1.0
    }
}

/// Polar coordinates with `r >= 0` and `theta` in `(-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarRT {
    r: f64,
    theta: f64,
}

impl PolarRT {
    /// Builds polar coordinates, rejecting `r < 0` and angles outside `(-pi, pi]`.
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(domain(format!("polar radius must be finite and >= 0, got {r}")));
        }
        if !(theta > -PI && theta <= PI) {
            return Err(domain(format!("polar angle must lie in (-pi, pi], got {theta}")));
        }
        Ok(Self { r, theta })
    }

    /// Like [`PolarRT::new`] but first wraps `theta` into `(-pi, pi]`.
    pub fn wrapped(r: f64, theta: f64) -> Result<Self> {
        Self::new(r, wrap_angle(theta))
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// Endpoint position `alpha` on the circle and angle `beta` between the chord
/// and the tangent at that endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentAngles {
    alpha: f64,
    beta: f64,
}

impl TangentAngles {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(0.0..=TAU).contains(&alpha) {
            return Err(domain(format!(
                "endpoint angle must lie in [0, 2pi], got {alpha}"
            )));
        }
        if !(0.0..=PI).contains(&beta) {
            return Err(domain(format!("tangent angle must lie in [0, pi], got {beta}")));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Midpoint of the chord leaving the endpoint `(cos alpha, sin alpha)` at
    /// angle `beta` from the tangent: `cos(beta) * (cos(alpha + beta), sin(alpha + beta))`.
    pub fn midpoint(&self) -> PointXY {
        let s = self.alpha + self.beta;
        let d = self.beta.cos();
        PointXY::new(d * s.cos(), d * s.sin())
    }
}

/// Maps any finite angle into `(-pi, pi]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(TAU);
    if t > PI {
        t -= TAU;
    }
    // rem_euclid can land exactly on -pi after the shift only through rounding
    if t <= -PI {
        t += TAU;
    }
    t
}

/// Length `2 sqrt(1 - (x^2 + y^2))` of the chord whose midpoint is `p`.
pub fn chord_length_from_midpoint(p: PointXY) -> Result<f64> {
    let d2 = p.norm_sq();
    if !(d2 <= 1.0) {
        return Err(domain(format!(
            "midpoint ({}, {}) lies outside the closed unit disc",
            p.x, p.y
        )));
    }
    Ok(2.0 * (1.0 - d2).sqrt())
}

/// Length `2 sin(beta)` of the chord making angle `beta` with the tangent.
pub fn chord_length_from_tangent_angle(beta: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&beta) {
        return Err(domain(format!("tangent angle must lie in [0, pi], got {beta}")));
    }
    Ok(2.0 * beta.sin())
}

/// Length `2 sqrt(1 - r^2)` of the chord cutting the orthogonal diameter at
/// distance `r` from the center. Does not depend on `theta`.
pub fn chord_length_from_polar(p: PolarRT) -> Result<f64> {
    if p.r > 1.0 {
        return Err(domain(format!("polar radius {} exceeds the unit circle", p.r)));
    }
    Ok(2.0 * (1.0 - p.r * p.r).sqrt())
}

/// Whether a chord of the given length is strictly longer than the triangle edge.
pub fn exceeds_triangle_edge(length: f64) -> bool {
    length > TRIANGLE_EDGE
}

pub fn cartesian_to_polar(p: PointXY) -> Result<PolarRT> {
    if p.x == 0.0 && p.y == 0.0 {
        return Err(domain("the polar angle of the origin is undefined"));
    }
    let r = p.x.hypot(p.y);
    // atan2 returns -pi for (negative x, -0.0); fold it onto +pi.
    let mut theta = p.y.atan2(p.x);
    if theta <= -PI {
        theta = PI;
    }
    Ok(PolarRT { r, theta })
}

pub fn polar_to_cartesian(p: PolarRT) -> PointXY {
    PointXY::new(p.r * p.theta.cos(), p.r * p.theta.sin())
}

/// Jacobian determinant `|d(r, theta) / d(x, y)| = 1 / r`.
pub fn polar_jacobian(p: PolarRT) -> Result<f64> {
    if p.r == 0.0 {
        return Err(Error::Singularity(
            "the polar Jacobian 1/r is singular at r = 0".into(),
        ));
    }
    Ok(1.0 / p.r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn triangle_edge_is_sqrt3() {
        assert_eq!(TRIANGLE_EDGE, 3f64.sqrt());
    }

    #[test]
    fn midpoint_lengths() {
        assert_eq!(chord_length_from_midpoint(PointXY::new(0.0, 0.0)).unwrap(), 2.0);
        assert_abs_diff_eq!(
            chord_length_from_midpoint(PointXY::new(0.5, 0.0)).unwrap(),
            3f64.sqrt(),
            epsilon = GEOMETRY_TOL
        );
        assert_eq!(chord_length_from_midpoint(PointXY::new(1.0, 0.0)).unwrap(), 0.0);
        assert!(matches!(
            chord_length_from_midpoint(PointXY::new(1.0, 0.1)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn tangent_lengths() {
        assert_abs_diff_eq!(chord_length_from_tangent_angle(PI / 2.0).unwrap(), 2.0);
        assert_abs_diff_eq!(
            chord_length_from_tangent_angle(PI / 3.0).unwrap(),
            3f64.sqrt(),
            epsilon = GEOMETRY_TOL
        );
        assert_eq!(chord_length_from_tangent_angle(0.0).unwrap(), 0.0);
        assert!(chord_length_from_tangent_angle(-0.1).is_err());
        assert!(chord_length_from_tangent_angle(3.2).is_err());
    }

    #[test]
    fn polar_lengths() {
        let l = |r, t| chord_length_from_polar(PolarRT::new(r, t).unwrap());
        assert_eq!(l(0.0, 2.5).unwrap(), 2.0);
        assert_abs_diff_eq!(l(0.5, 0.0).unwrap(), 3f64.sqrt(), epsilon = GEOMETRY_TOL);
        assert_eq!(l(1.0, PI).unwrap(), 0.0);
        assert!(l(1.5, 0.0).is_err());
    }

    #[test]
    fn polar_constructor_rejects_out_of_range() {
        assert!(PolarRT::new(-0.1, 0.0).is_err());
        assert!(PolarRT::new(0.5, -PI).is_err());
        assert!(PolarRT::new(0.5, PI).is_ok());
        assert_eq!(PolarRT::wrapped(1.0, -PI).unwrap().theta(), PI);
        assert_abs_diff_eq!(PolarRT::wrapped(1.0, 3.0 * PI / 2.0).unwrap().theta(), -PI / 2.0);
    }

    #[test]
    fn cartesian_polar_examples() {
        let p = cartesian_to_polar(PointXY::new(1.0, 0.0)).unwrap();
        assert_eq!((p.r(), p.theta()), (1.0, 0.0));
        let p = cartesian_to_polar(PointXY::new(0.0, 1.0)).unwrap();
        assert_eq!((p.r(), p.theta()), (1.0, PI / 2.0));
        let p = cartesian_to_polar(PointXY::new(-1.0, 0.0)).unwrap();
        assert_eq!((p.r(), p.theta()), (1.0, PI));
        let p = cartesian_to_polar(PointXY::new(-1.0, -0.0)).unwrap();
        assert_eq!(p.theta(), PI);
        assert!(cartesian_to_polar(PointXY::new(0.0, 0.0)).is_err());

        let q = polar_to_cartesian(PolarRT::new(1.0, 0.0).unwrap());
        assert_eq!((q.x, q.y), (1.0, 0.0));
        let q = polar_to_cartesian(PolarRT::new(2.0, PI / 2.0).unwrap());
        assert_abs_diff_eq!(q.x, 0.0, epsilon = GEOMETRY_TOL);
        assert_abs_diff_eq!(q.y, 2.0, epsilon = GEOMETRY_TOL);
        let q = polar_to_cartesian(PolarRT::new(0.0, 1.3).unwrap());
        assert_eq!((q.x, q.y), (0.0, 0.0));
    }

    #[test]
    fn jacobian() {
        assert_eq!(polar_jacobian(PolarRT::new(1.0, 0.3).unwrap()).unwrap(), 1.0);
        assert_eq!(polar_jacobian(PolarRT::new(0.5, 0.3).unwrap()).unwrap(), 2.0);
        assert!(matches!(
            polar_jacobian(PolarRT::new(0.0, 0.3).unwrap()),
            Err(Error::Singularity(_))
        ));
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        // |d(r,theta)/d(x,y)| by central differences away from the branch cut
        let h = 1e-6;
        for &(x, y) in &[(0.3, 0.4), (-0.2, 0.7), (0.9, -0.1), (-0.5, -0.5)] {
            let f = |x: f64, y: f64| {
                let p = cartesian_to_polar(PointXY::new(x, y)).unwrap();
                (p.r(), p.theta())
            };
            let (rxp, txp) = f(x + h, y);
            let (rxm, txm) = f(x - h, y);
            let (ryp, typ) = f(x, y + h);
            let (rym, tym) = f(x, y - h);
            let det = ((rxp - rxm) * (typ - tym) - (ryp - rym) * (txp - txm)) / (4.0 * h * h);
            let p = cartesian_to_polar(PointXY::new(x, y)).unwrap();
            assert_abs_diff_eq!(det, polar_jacobian(p).unwrap(), epsilon = 1e-6);
        }
    }

    #[test]
    fn threshold_equivalence_on_grids() {
        let n = 10_000;
        for i in 0..n {
            let r = i as f64 / (n - 1) as f64;
            let long = exceeds_triangle_edge(chord_length_from_polar(PolarRT::new(r, 0.0).unwrap()).unwrap());
            assert_eq!(long, r < 0.5, "r = {r}");

            let beta = PI * i as f64 / (n - 1) as f64;
            let long = exceeds_triangle_edge(chord_length_from_tangent_angle(beta).unwrap());
            assert_eq!(long, PI / 3.0 < beta && beta < 2.0 * PI / 3.0, "beta = {beta}");
        }
        // the exact boundary points
        assert!(!exceeds_triangle_edge(
            chord_length_from_polar(PolarRT::new(0.5, 0.0).unwrap()).unwrap()
        ));
        assert!(!exceeds_triangle_edge(
            chord_length_from_tangent_angle(PI / 3.0).unwrap()
        ));
        assert!(!exceeds_triangle_edge(
            chord_length_from_midpoint(PointXY::new(0.5, 0.0)).unwrap()
        ));
    }

    #[test]
    fn tangent_midpoint_is_at_distance_cos_beta() {
        for &(a, b) in &[(0.0, 0.3), (1.0, 1.2), (4.0, 2.5), (6.0, PI / 2.0)] {
            let t = TangentAngles::new(a, b).unwrap();
            let m = t.midpoint();
            assert_abs_diff_eq!(m.norm_sq().sqrt(), b.cos().abs(), epsilon = GEOMETRY_TOL);
            assert_abs_diff_eq!(
                chord_length_from_midpoint(m).unwrap(),
                chord_length_from_tangent_angle(b).unwrap(),
                epsilon = 1e-12
            );
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn round_trip(r in 1e-9f64..=1.0, theta in -PI..=PI) {
            prop_assume!(theta > -PI);
            let p = polar_to_cartesian(PolarRT::new(r, theta).unwrap());
            let back = polar_to_cartesian(cartesian_to_polar(p).unwrap());
            prop_assert!((back.x - p.x).abs() <= GEOMETRY_TOL);
            prop_assert!((back.y - p.y).abs() <= GEOMETRY_TOL);
        }

        #[test]
        fn midpoint_is_the_polar_intersection(r in 1e-9f64..=1.0, theta in -PI..=PI) {
            let p = PointXY::new(r * theta.cos(), r * theta.sin());
            prop_assume!(p.in_closed_disc());
            let a = chord_length_from_midpoint(p).unwrap();
            let b = chord_length_from_polar(cartesian_to_polar(p).unwrap()).unwrap();
            prop_assert!((a - b).abs() <= GEOMETRY_TOL);
        }
    }
}
