//! Numeric envelope of reflected rays, computed from nothing but the mirror's
//! vertices, against the analytic caustic.

use std::f64::consts::PI;

use caustics::caustic::{caustic_curve, TiltField};
use caustics::geometry::PlanePoint;
use caustics::oracle::{envelope_distance, envelope_numeric, reflect_horizontal, Polyline};
use caustics::verify::semicircle_envelope_distance;
use caustics::{AngleInterval, InclinationCurve};

fn main() -> caustics::Result<()> {
    for n in [100, 200, 400, 800] {
        println!("semicircle, {n:4} rays: envelope distance {:.3e}", semicircle_envelope_distance(n)?);
    }

    let mirror = InclinationCurve::cycloid();
    let iv = AngleInterval::new(0.05, PI - 0.05, 600)?;
    let cc = caustic_curve(&mirror, &TiltField::reflection(), &iv)?;
    let poly = Polyline::from_samples(&cc.source);
    let env = envelope_numeric(&reflect_horizontal(&poly)?)?;
    let cusps: Vec<PlanePoint> = Vec::new();
    let d = envelope_distance(&env, &cc.positions(), &cusps, 0.0);
    println!("cycloid: {} envelope points, distance to analytic caustic {d:.3e}", env.points.len());
    Ok(())
}
