//! Curves whose skew caustic is similar to themselves, one per similarity case.

use std::f64::consts::PI;

use caustics::skew::{build_family, inverse_position_coefficients, inverse_shape, SkewFamilySpec};
use caustics::AngleInterval;

fn main() -> caustics::Result<()> {
    let iv = AngleInterval::new(0.0, PI, 201)?;
    let phi0 = PI / 6.0;

    let point = SkewFamilySpec::parse("case = point_by_point\nphi0 = pi/6\na = 0.8\ncoefficients = 1:0\n")?;
    let fam = build_family(&point)?;
    println!("point_by_point  R(1) = {:.6}  residual {:.2e}", fam.curve.radius(1.0), fam.residual(&iv)?);

    for a in [0.5, 1.0, 2.0] {
        println!("inverse position a = {a}: {:?}", inverse_shape(a, phi0)?);
    }
    let alpha = 0.7;
    let (ca, cb) = inverse_position_coefficients(1.0, phi0, alpha)?;
    let text = format!("case = inverse_position\nphi0 = pi/6\na = 1\nalpha = {alpha}\ncoefficients = {ca}:{cb}\n");
    let fam = build_family(&SkewFamilySpec::parse(&text)?)?;
    println!(
        "inverse_position A = {ca:.6}, B = {cb:.6}, implied alpha {:?}, residual {:.2e}",
        fam.alpha,
        fam.residual(&iv)?
    );
    Ok(())
}
