//! The evolute is the caustic of normal rays; its length between two angles is
//! the change of the radius of curvature.

use caustics::caustic::{caustic_curve, TiltField};
use caustics::{AngleInterval, InclinationCurve};

fn main() -> caustics::Result<()> {
    let spiral = InclinationCurve::log_spiral(1.0, 0.2);
    let iv = AngleInterval::new(0.0, 3.0, 3001)?;
    let cc = caustic_curve(&spiral, &TiltField::evolute(), &iv)?;
    let pts = cc.positions();
    let polygon: f64 = pts.windows(2).map(|w| w[0].distance(w[1])).sum();
    let change = (spiral.radius(3.0) - spiral.radius(0.0)).abs();
    println!("evolute polygon length {polygon:.8}");
    println!("|R(3) - R(0)|          {change:.8}");
    Ok(())
}
