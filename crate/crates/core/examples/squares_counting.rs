//! Measuring versus counting: a number in [0, 100] above 50, and its square
//! above 2500.

use bertrand_lab::squares::{
    exceed_probability, finite_counting_probability, monte_carlo_square_exceed, pushforward_square_density,
    IntervalModel,
};

fn main() -> bertrand_lab::Result<()> {
    for model in IntervalModel::ALL {
        let t = if model == IntervalModel::UniformX {
            50.0
        } else {
            2500.0
        };
        println!("{model:>21}: P(> {t}) = {}", exceed_probability(model, t)?);
    }
    println!("density of X^2 at 2500: {}", pushforward_square_density(2500.0)?);
    let e = monte_carlo_square_exceed(2500.0, 1_000_000, 42, 1)?;
    println!("sampled P(X^2 > 2500): {:.5}", e.p_hat);

    println!("\non the integers 1..=100:");
    println!(
        "  P(k > 50)     = {}",
        finite_counting_probability(100, 50, false)?
    );
    println!(
        "  P(k^2 > 2500) = {}",
        finite_counting_probability(100, 2500, true)?
    );
    Ok(())
}
