//! Random chords, Buffon needles and random rationals.
//!
//! Each probabilistic model is available in two forms: as a measure that can
//! be evaluated exactly (closed forms, quadrature, convergent series) and as a
//! seeded sampler that feeds the reproducible Monte Carlo engine in
//! [`montecarlo`]. Comparing the two is the point of the crate.
//!
//! | module | content |
//! |--------|---------|
//! | [`geometry`] | unit-circle chords, Cartesian/polar transform, Jacobian |
//! | [`bertrand`] | the three chord models and the change of measure between them |
//! | [`buffon`] | the two needle models and the estimate of pi |
//! | [`squares`] | a number in `[0, 100]` against its square, measured and counted |
//! | [`rationals`] | discrete laws on the rationals of `[0, 1]` and their uniform limit |
//! | [`montecarlo`] | block-seeded, shard-invariant Bernoulli experiments and Wilson intervals |
//! | [`cli`] | the `bertrand-lab` command line front end |
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bertrand;
pub mod buffon;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod montecarlo;
pub mod quadrature;
pub mod rationals;
pub mod squares;

pub use error::{Error, Result};
pub use montecarlo::{Estimate, SimRng};
pub use rationals::{DenominatorLaw, Rational};
