//! The pantograph mirror with similarity factor a = 5/16: series, continuation
//! by doubling and the geometry of its caustic.

use std::f64::consts::PI;

use caustics::pantograph::{mirror_report, similarity_factor_exact, solve_series, PantographSolution, SeriesOptions};
use caustics::AngleInterval;

fn main() -> caustics::Result<()> {
    let k = 1;
    println!("a = {}", similarity_factor_exact(k));
    let series = solve_series(k, 30, &SeriesOptions { exact: true, ..Default::default() })?;
    for n in 1..=7 {
        println!("a_{n} = {:+.10e}", series.coeff(n));
    }
    let checks = series.checks();
    println!("even coefficients vanish: {}, bound holds: {}", checks.parity_zero, checks.bound_holds);

    let sol = PantographSolution::new(series)?;
    let iv = AngleInterval::new(0.0, 2.0 * PI, 401)?;
    let clipped = AngleInterval::new(0.01, 2.0 * PI, 401)?;
    println!("pantograph residual {:.2e}", sol.pantograph_residual(&clipped)?);
    let rep = mirror_report(&sol, &iv)?;
    println!("zeros of R: {:?}, off the multiples of pi by {:.4}", rep.zeros, rep.max_zero_deviation);
    println!("caustic cusps collinear to {:.1e}", rep.collinearity);
    println!("arc ratios in [{:.4}, {:.4}]", rep.arc_ratio_min, rep.arc_ratio_max);
    print!("{}", rep.to_key_values());
    Ok(())
}
