//! Adaptive Gauss–Kronrod (7, 15) quadrature.
//!
//! The interval is first mapped onto `[0, 1]` through the cubic
//! `x = a + (b - a) u^2 (3 - 2u)`, whose derivative vanishes at both ends.
//! This turns inverse square root endpoint singularities into bounded
//! integrands and flattens logarithmic ones. Global adaptive bisection then
//! splits the panel with the largest error estimate until the summed
//! estimate drops below the absolute tolerance.
//! Two-dimensional integrals are nested one-dimensional ones.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

// Kronrod abscissae on [-1, 1], positive half, descending; the odd entries
// are the 7-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Hard cap on the number of panels of one adaptive integral.
const MAX_PANELS: usize = 4_000;

/// Relative accuracy below which error estimates are not trusted.
const ROUNDOFF: f64 = 50.0 * f64::EPSILON;

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Sum of the per-panel |Kronrod - Gauss| estimates.
    pub error_estimate: f64,
    pub panels: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let pair = f(c - h * x) + f(c + h * x);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Panel {
        a,
        b,
        value: kronrod * h,
        error: ((kronrod - gauss) * h).abs(),
    }
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Quadrature {
    if a == b {
        return Quadrature {
            value: 0.0,
            error_estimate: 0.0,
            panels: 0,
            converged: true,
        };
    }
    if b < a {
        let q = integrate(f, b, a, tol);
        return Quadrature { value: -q.value, ..q };
    }
    let width = b - a;
    let g = |u: f64| {
        let s = u * u * (3.0 - 2.0 * u);
        f(a + width * s) * width * 6.0 * u * (1.0 - u)
    };
    adaptive(&g, 0.0, 1.0, tol)
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Quadrature {
    let mut heap = BinaryHeap::new();
    let first = gk15(f, a, b);
    let mut total_err = first.error;
    let mut total_abs = first.value.abs();
    heap.push(first);
    while heap.len() < MAX_PANELS {
        // below this the estimates are dominated by rounding
        let floor = ROUNDOFF * total_abs;
        if total_err <= tol.max(floor) {
            break;
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if worst.error <= floor / MAX_PANELS as f64 || mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            break;
        }
        let left = gk15(f, worst.a, mid);
        let right = gk15(f, mid, worst.b);
        total_err += left.error + right.error - worst.error;
        total_abs += left.value.abs() + right.value.abs() - worst.value.abs();
        heap.push(left);
        heap.push(right);
    }
    // re-sum in order to avoid drift from the running updates
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value: f64 = panels.iter().map(|p| p.value).sum();
    let error_estimate: f64 = panels.iter().map(|p| p.error).sum();
    let total_abs: f64 = panels.iter().map(|p| p.value.abs()).sum();
    Quadrature {
        value,
        error_estimate,
        panels: panels.len(),
        converged: value.is_finite() && error_estimate <= tol.max(ROUNDOFF * total_abs),
    }
}

/// Integrates `f(x, y)` over `x in [a, b]`, `y in [lo(x), hi(x)]`.
///
/// The inner integrals run at a tolerance scaled so that their accumulated
/// error stays below `tol` as well.
pub fn integrate_2d<F, L, H>(f: F, a: f64, b: f64, lo: L, hi: H, tol: f64) -> Quadrature
where
    F: Fn(f64, f64) -> f64,
    L: Fn(f64) -> f64,
    H: Fn(f64) -> f64,
{
    let width = (b - a).abs().max(f64::MIN_POSITIVE);
    let inner_tol = 0.1 * tol / width;
    integrate(
        |x| integrate(|y| f(x, y), lo(x), hi(x), inner_tol).value,
        a,
        b,
        0.5 * tol,
    )
}
