//! Caustic of a semicircular mirror under horizontal light: the nephroid.
//!
//! Writes `nephroid.svg` to the current directory and prints a few caustic points
//! next to the closed form.

use std::f64::consts::PI;

use caustics::caustic::{caustic_curve, TiltField};
use caustics::geometry::directed_hausdorff_to_polyline;
use caustics::svg::Figure;
use caustics::verify::closed_form_nephroid;
use caustics::{AngleInterval, InclinationCurve};

fn main() -> caustics::Result<()> {
    let mirror = InclinationCurve::circle(1.0);
    let iv = AngleInterval::new(0.0, PI, 181)?;
    let cc = caustic_curve(&mirror, &TiltField::reflection(), &iv)?;

    for s in cc.samples().step_by(30) {
        println!(
            "theta = {:.4}  caustic = ({:+.6}, {:+.6})  R1 = {:+.6}",
            s.source_theta, s.position.x, s.position.y, s.caustic_radius
        );
    }
    let exact = closed_form_nephroid(2001);
    let worst = directed_hausdorff_to_polyline(&cc.positions(), &exact);
    println!("max distance to the closed-form nephroid: {worst:.2e}");

    let mut fig = Figure::new(600.0);
    let mirror_pts: Vec<_> = cc.source.iter().map(|s| s.position).collect();
    fig.polyline("mirror", &mirror_pts).polyline("caustic", &cc.positions());
    for (s, c) in cc.source.iter().zip(cc.samples()).step_by(12) {
        fig.segment("rays", s.position, c.position);
    }
    std::fs::write("nephroid.svg", fig.render())?;
    println!("wrote nephroid.svg");
    Ok(())
}
