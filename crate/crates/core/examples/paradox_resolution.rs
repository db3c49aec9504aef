//! The answer belongs to the measure, not to the coordinates used to
//! compute it: every measure gives the same probability in every chart.

use bertrand_lab::bertrand::{
    density, exceed_probability_closed_form, exceed_quadrature, monte_carlo_event, pushforward_polar_density,
    ChordModel, NativePoint,
};
use bertrand_lab::geometry::{cartesian_to_polar, PolarRT, TRIANGLE_EDGE};

fn main() -> bertrand_lab::Result<()> {
    let p = PolarRT::new(0.5, 1.0)?;
    println!(
        "uniform midpoints seen in polar coordinates: f(r = 0.5) = {:.6} = r/pi",
        pushforward_polar_density(ChordModel::MidpointUniform, p)?
    );
    println!("density of each measure at that chord, in the polar chart:");
    for m in ChordModel::ALL {
        println!("  {m:>9}: {:.6}", density(m, &NativePoint::Polar(p)));
    }

    println!("\nP(length > sqrt 3) by quadrature");
    println!(
        "{:>9} | {:>14} {:>14} {:>14}",
        "measure", "midpoint chart", "tangent chart", "polar chart"
    );
    for measure in ChordModel::ALL {
        let row: Vec<String> = ChordModel::ALL
            .iter()
            .map(|&chart| {
                exceed_quadrature(TRIANGLE_EDGE, measure, chart).map(|q| format!("{:>14.12}", q.value))
            })
            .collect::<Result<_, _>>()?;
        println!("{measure:>9} | {}", row.join(" "));
    }

    println!("\nP(length > t) for the three measures");
    for t in [0.5, 1.0, 1.5, 1.9] {
        let v: Vec<String> = ChordModel::ALL
            .iter()
            .map(|&m| exceed_probability_closed_form(m, t).map(|p| format!("{p:.6}")))
            .collect::<Result<_, _>>()?;
        println!("  t = {t}: {}", v.join("  "));
    }

    let e = monte_carlo_event(
        ChordModel::MidpointUniform,
        |s| cartesian_to_polar(s.midpoint()).map_or(true, |p| p.r() < 0.5),
        1_000_000,
        42,
        1,
    )?;
    println!(
        "\nsampled midpoints with r < 1/2: {:.5} (the r/pi density gives 1/4)",
        e.p_hat
    );
    Ok(())
}
