//! Delay families: roots of the characteristic equation through the branches of
//! Lambert W, and the curves they build.

use std::f64::consts::PI;

use caustics::skew::{build_family, real_delay_roots, SkewFamilySpec};
use caustics::AngleInterval;

fn main() -> caustics::Result<()> {
    let (a, alpha, phi0) = (1.0, 1.0, PI / 6.0);
    for root in real_delay_roots(a, alpha, phi0)? {
        println!("real root from branch {}: {:.12}", root.index_k, root.lambda.re);
    }

    let spec = SkewFamilySpec::parse(
        "case = delay\nphi0 = pi/6\na = 1\nalpha = 1\nroots = 0, 1, -2\ncoefficients = 1:0, 0.2:0.1, 0.05:0\n",
    )?;
    let fam = build_family(&spec)?;
    for r in &fam.roots {
        println!(
            "branch {:+}: lambda = {:.8} {:+.8}i  residual {:.1e}",
            r.index_k,
            r.lambda.re,
            r.lambda.im,
            r.residual(a, alpha, phi0)
        );
    }
    let iv = AngleInterval::new(0.0, 2.0 * PI, 301)?;
    println!("family residual on [0, 2pi]: {:.2e}", fam.residual(&iv)?);

    let advance = SkewFamilySpec { alpha: -1.0, ..spec };
    let fam = build_family(&advance)?;
    println!("advance problem solved by reflection: {}, residual {:.2e}", fam.normalized, fam.residual(&iv)?);
    Ok(())
}
