//! Cusps of R = e^{cθ} sin γθ sit on a logarithmic spiral.

use std::f64::consts::PI;

use caustics::skew::puiseux_diagnostics;
use caustics::AngleInterval;

fn main() -> caustics::Result<()> {
    for (c, gamma) in [(0.2, 3.0), (0.0, 2.0), (-0.1, 1.5)] {
        let iv = AngleInterval::new(0.0, 4.0 * PI, 2001)?;
        let rep = puiseux_diagnostics(c, gamma, &iv)?;
        println!("c = {c}, gamma = {gamma}: {} cusps, angle error {:.1e}", rep.cusp_angles.len(), rep.max_angle_error);
        match rep.center {
            Some(o) => println!("  spiral center ({:.6}, {:.6})", o.x, o.y),
            None => println!("  cusps equally spaced"),
        }
        println!("  expected ratio {:.6}, worst deviation {:.1e}", rep.expected_ratio, rep.ratio_error);
    }
    Ok(())
}
