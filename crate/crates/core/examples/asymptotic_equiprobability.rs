//! Along w_k = 1/k and lambda_k = k the interval probabilities approach the
//! interval lengths while every single atom fades.

use bertrand_lab::rationals::{atom_probability, convergence_table, LawFamily, DEFAULT_TOL};
use bertrand_lab::Rational;

fn main() -> bertrand_lab::Result<()> {
    let half = Rational::canonicalize(1, 2)?;
    for (name, family, ks) in [
        ("geometric", LawFamily::geometric(), vec![10, 100, 1000, 10_000]),
        ("poisson", LawFamily::poisson(), vec![10, 100, 1000]),
    ] {
        println!("{name} family, probe (0, 1/2]");
        println!(
            "{:>6} {:>10} {:>10} {:>10} {:>12} {:>10} {:>10}",
            "k", "s_k ln k", "mu_k", "s_k H_k", "|P - 1/2|", "sup|F-x|", "P(Q=1/2)"
        );
        for r in convergence_table(&family, &ks, (0.0, 0.5), DEFAULT_TOL)? {
            let atom = atom_probability(half, &family.law(r.k)?, DEFAULT_TOL)?;
            println!(
                "{:>6} {:>10.3e} {:>10.3e} {:>10.3e} {:>12.3e} {:>10.3e} {:>10.3e}",
                r.k,
                r.s_k_ln_k,
                r.mu_k,
                r.s_k * r.h_k,
                r.interval_error,
                r.cdf_sup_error,
                atom
            );
        }
        println!();
    }
    Ok(())
}
