//! Taylor coefficients of tan θ from the Bernoulli numbers, and the error of the
//! truncated series.

use caustics::specfun::{tan_coeffs, TanCoefficients};

fn main() {
    let t = tan_coeffs(30);
    for n in 0..6 {
        println!("tau_{} = {}", 2 * n, t.exact.as_ref().unwrap()[n]);
    }
    println!("coefficients above their bound: {:?}", t.bound_violations());
    println!("bound at n = 10: {:.3e}, value {:.3e}", TanCoefficients::bound(10), t.get(10));
    for theta in [0.5, 1.0, 1.2, 1.4] {
        println!("theta = {theta}: series - tan = {:+.3e}", t.evaluate(theta) - f64::tan(theta));
    }
}
