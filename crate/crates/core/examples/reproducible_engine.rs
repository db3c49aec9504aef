//! The Monte Carlo engine: any Bernoulli experiment, block-seeded so the
//! result does not depend on how many shards run it.

use bertrand_lab::montecarlo::{block_seed, run, wilson_interval, Bernoulli, BLOCK_SIZE};
use bertrand_lab::SimRng;
use rand::Rng;

fn main() -> bertrand_lab::Result<()> {
    // a point of the unit square falls in the quarter disc with probability pi/4
    let quarter_disc = Bernoulli::new(
        |rng: &mut SimRng| (rng.random::<f64>(), rng.random::<f64>()),
        |&(x, y): &(f64, f64)| x * x + y * y <= 1.0,
    );
    let n = 4 * 1_000_000;
    for shards in [1, 2, 4] {
        let e = run(&quarter_disc, n, 2024, shards)?;
        println!(
            "{shards} shard(s): {} hits, 4 p_hat = {:.6}",
            e.successes,
            4.0 * e.p_hat
        );
    }
    println!(
        "blocks of {BLOCK_SIZE} draws; block 0 of seed 2024 is seeded with {:#018x}",
        block_seed(2024, 0)
    );
    let (lo, hi) = wilson_interval(50, 100, 0.95)?;
    println!("Wilson 95% interval for 50/100: [{lo:.6}, {hi:.6}]");
    Ok(())
}
