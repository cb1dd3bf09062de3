//! Similarity factors and leading coefficients across the pantograph family.

use caustics::pantograph::{similarity_factor_exact, solve_series, SeriesOptions};

fn main() -> caustics::Result<()> {
    for m in 1..=5i64 {
        let k = m - 1;
        let s = solve_series(k, 24, &SeriesOptions::default())?;
        let c = s.checks();
        println!(
            "m = {m}: a = {:>6}  a_(k+2) = {:+.6e}  parity {}  signs {}",
            similarity_factor_exact(k).to_string(),
            s.coeff(k + 2),
            c.parity_zero,
            c.sign_coherent
        );
    }
    let s = solve_series(-3, 20, &SeriesOptions { secondary: Some(0.25), ..Default::default() })?;
    println!("k = -3 with a free a_-2: a_-1 = {:+.6e}", s.coeff(-1));
    Ok(())
}
