//! Horizontal rays into a parabolic mirror all meet at the focus.

use caustics::caustic::{caustic_curve_with, TiltField};
use caustics::inclination::{Anchor, ReconstructOptions};
use caustics::pantograph::{parabola_focus, parabola_mirror, parabola_point};
use caustics::AngleInterval;

fn main() -> caustics::Result<()> {
    let scale = 0.5;
    let mirror = parabola_mirror(scale)?;
    let (lo, hi) = (0.3, std::f64::consts::PI - 0.3);
    let iv = AngleInterval::new(lo, hi, 61)?;
    let opts = ReconstructOptions {
        anchor: Anchor::at(parabola_point(scale, lo)),
        ..Default::default()
    };
    let cc = caustic_curve_with(&mirror, &TiltField::reflection(), &iv, &opts)?;
    let focus = parabola_focus(scale);
    let spread = cc.positions().iter().map(|p| p.distance(focus)).fold(0.0, f64::max);
    println!("focus ({:.6}, {:.6}), largest distance of a caustic point {spread:.2e}", focus.x, focus.y);
    Ok(())
}
