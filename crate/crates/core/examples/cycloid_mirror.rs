//! A cycloid mirror and its reflection caustic, with the cusps where R₁ changes sign.

use std::f64::consts::PI;

use caustics::caustic::{caustic_curve, TiltField};
use caustics::inclination::{find_cusps, reconstruct};
use caustics::{AngleInterval, InclinationCurve};

fn main() -> caustics::Result<()> {
    let mirror = InclinationCurve::cycloid();
    let iv = AngleInterval::new(0.0, PI, 401)?;

    let samples = reconstruct(&mirror, &iv)?;
    let last = samples.last().unwrap();
    println!("arc from theta = 0 to pi ends at ({:.6}, {:.6}), length {:.6}", last.position.x, last.position.y, last.arclength);

    let scan = find_cusps(&mirror, &iv)?;
    println!("interior mirror cusps: {:?}, flat points: {:?}", scan.cusps, scan.flat_points);

    let cc = caustic_curve(&mirror, &TiltField::reflection(), &iv)?;
    let r1: Vec<_> = cc.samples().map(|s| (s.source_theta, s.caustic_radius)).collect();
    for w in r1.windows(2) {
        if w[0].1.signum() != w[1].1.signum() {
            println!("caustic cusp between theta = {:.4} and {:.4}", w[0].0, w[1].0);
        }
    }
    println!("{} of {} caustic nodes failed", cc.failures().count(), cc.nodes.len());
    Ok(())
}
