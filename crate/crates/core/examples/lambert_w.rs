//! Lambert W on several branches, with the round trip W e^W = z.

use caustics::specfun::lambert_w;
use num_complex::Complex64;

fn main() -> caustics::Result<()> {
    for z in [Complex64::new(1.0, 0.0), Complex64::new(-0.2, 0.0), Complex64::new(-1.0, 0.0), Complex64::new(0.5, 2.0)] {
        for k in -2..=2 {
            let w = lambert_w(k, z)?;
            let err = (w * w.exp() - z).norm();
            println!("W_{k:+}({z:.2}) = {w:.10}  |W e^W - z| = {err:.1e}");
        }
    }
    Ok(())
}
