//! Estimate pi from needle crossings, and see the other model estimate 4.
//!
//! cargo run --release --example buffon_pi [samples]

use bertrand_lab::buffon::{estimate_pi, exact_cross_probability, NeedleModel};

fn main() -> bertrand_lab::Result<()> {
    let n: u64 = std::env::args()
        .nth(1)
        .map_or(10_000_000, |s| s.parse().expect("samples"));
    for model in NeedleModel::ALL {
        let e = estimate_pi(model, n, 42, 4)?;
        println!(
            "{model:>12}: p = {:.6} (exact {:.6}), 2/p = {:.5} in [{:.5}, {:.5}]",
            e.crossing.p_hat,
            exact_cross_probability(model),
            e.value,
            e.ci_low,
            e.ci_high
        );
    }
    Ok(())
}
