//! Atoms, distribution function and samples of a random rational with a
//! geometric denominator.
//!
//! cargo run --release --example random_rationals [law]

use bertrand_lab::rationals::{
    atom_probability, cdf, interval_probability, mean_reciprocal, sample_counts, sup_pmf, DEFAULT_TOL,
};
use bertrand_lab::{DenominatorLaw, Rational};

fn main() -> bertrand_lab::Result<()> {
    let law: DenominatorLaw = std::env::args()
        .nth(1)
        .as_deref()
        .unwrap_or("geometric:0.5")
        .parse()?;
    println!(
        "law {law}: sup p_m = {:.6}, E[1/M] = {:.6}",
        sup_pmf(&law),
        mean_reciprocal(&law, DEFAULT_TOL)?
    );

    let n = 1_000_000;
    let counts = sample_counts(&law, n, 42, 1)?;
    println!("\n{:>6} {:>10} {:>10}", "q", "P(Q = q)", "sampled");
    let mut atoms: Vec<Rational> = Rational::enumerate(5).collect();
    atoms.sort();
    for q in atoms {
        let p = atom_probability(q, &law, DEFAULT_TOL)?;
        let f = counts.get(&q).copied().unwrap_or(0) as f64 / n as f64;
        println!("{:>6} {p:>10.6} {f:>10.6}", q.to_string());
    }

    println!(
        "\nF(x) at x = 0.25, 0.5, 0.75: {:.6} {:.6} {:.6}",
        cdf(0.25, &law, DEFAULT_TOL)?,
        cdf(0.5, &law, DEFAULT_TOL)?,
        cdf(0.75, &law, DEFAULT_TOL)?
    );
    println!(
        "P(0.2 < Q <= 0.3) = {:.6}",
        interval_probability(0.2, 0.3, &law, DEFAULT_TOL)?
    );
    Ok(())
}
