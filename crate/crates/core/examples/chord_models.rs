//! Draw chords under each of the three models and compare the share of
//! chords longer than the triangle edge with the exact value.
//!
//! cargo run --release --example chord_models [samples] [seed]

use bertrand_lab::bertrand::{exact_exceed_probability, monte_carlo_exceed, sample_chord, ChordModel};
use bertrand_lab::montecarlo::seeded_rng;

fn main() -> bertrand_lab::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u64 = args.next().map_or(1_000_000, |s| s.parse().expect("samples"));
    let seed: u64 = args.next().map_or(42, |s| s.parse().expect("seed"));

    let mut rng = seeded_rng(seed);
    for model in ChordModel::ALL {
        let s = sample_chord(model, &mut rng);
        println!("{model:>9}: e.g. {:?}, length {:.4}", s.coords, s.length);
    }
    println!();
    println!(
        "{:>9}  {:>8}  {:>8}  {:>21}",
        "model", "exact", "p_hat", "95% interval"
    );
    for model in ChordModel::ALL {
        let e = monte_carlo_exceed(model, n, seed, 4)?;
        println!(
            "{model:>9}  {:>8.5}  {:>8.5}  [{:.5}, {:.5}]",
            exact_exceed_probability(model),
            e.p_hat,
            e.ci_low,
            e.ci_high
        );
    }
    Ok(())
}
