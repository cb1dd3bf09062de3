//! Special functions: multi-branch Lambert W, Taylor coefficients of tan θ,
//! Bernoulli numbers and ζ at even integers.

use std::f64::consts::{E, PI};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const INV_E: f64 = 1.0 / E;
const MAX_HALLEY_ITERATIONS: usize = 100;

/// Branch `k` of the Lambert W function, the inverse of `w e^w`.
///
/// Uses the usual branch cuts: `(-∞, -1/e]` for `k = 0` and `(-∞, 0]` for
/// every other branch, with values on a cut taken from the upper side
/// (counterclockwise continuity). Real arguments on the real ranges of `W_0`
/// (`z ≥ -1/e`) and `W_{-1}` (`-1/e ≤ z < 0`) give real results.
///
/// The initial guess comes from the branch-point series near `-1/e`, from
/// `ln(1 + z)` near the origin on the principal branch and from the
/// logarithmic asymptotic expansion elsewhere; Halley's iteration refines it.
pub fn lambert_w(branch: i64, z: Complex64) -> Result<Complex64> {
    if z.re.is_nan() || z.im.is_nan() {
        return Err(Error::Numeric("Lambert W of NaN".into()));
    }
    if z.is_zero() {
        return if branch == 0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(Error::LambertPole { branch })
        };
    }
    if z.im == 0.0 {
        let x = z.re;
        let real_branch = match branch {
            0 => x >= -INV_E,
            -1 => (-INV_E..0.0).contains(&x),
            _ => false,
        };
        if real_branch {
            return lambert_w_real(branch, x).map(|w| Complex64::new(w, 0.0));
        }
    }
    let mut w = initial_guess(branch, z);
    for _ in 0..MAX_HALLEY_ITERATIONS {
        let ew = w.exp();
        let f = w * ew - z;
        let wp1 = w + 1.0;
        if wp1.norm() < 1e-300 {
            break;
        }
        let denom = ew * wp1 - (w + 2.0) * f / (wp1 * 2.0);
        let step = f / denom;
        let next = w - step;
        if !next.re.is_finite() || !next.im.is_finite() {
            return Err(Error::Numeric(format!(
                "Lambert W iteration diverged for branch {branch}, z = {z}"
            )));
        }
        w = next;
        if step.norm() <= 2.0 * f64::EPSILON * w.norm().max(1e-300) {
            return check_residual(branch, z, w);
        }
    }
    check_residual(branch, z, w)
}

fn check_residual(branch: i64, z: Complex64, w: Complex64) -> Result<Complex64> {
    let rel = (w * w.exp() - z).norm() / z.norm();
    if rel <= 1e-13 || (z + INV_E).norm() < 1e-8 && rel <= 1e-10 {
        Ok(w)
    } else {
        Err(Error::Numeric(format!(
            "Lambert W did not converge: branch {branch}, z = {z}, w = {w}, relative residual {rel:e}"
        )))
    }
}

/// Series of W about the branch point in `p = ±sqrt(2(ez + 1))`.
fn branch_point_series(p: Complex64) -> Complex64 {
    let p2 = p * p;
    -1.0 + p - p2 / 3.0 + p2 * p * (11.0 / 72.0) - p2 * p2 * (43.0 / 540.0)
}

fn initial_guess(k: i64, z: Complex64) -> Complex64 {
    let near_branch_point = (z + INV_E).norm() < 0.3;
    if near_branch_point {
        let p = ((z * E + 1.0) * 2.0).sqrt();
        match k {
            0 => return branch_point_series(p),
            -1 if z.im >= 0.0 => return branch_point_series(-p),
            1 if z.im < 0.0 => return branch_point_series(-p),
            _ => {}
        }
    }
    // on the principal cut left of the branch point ln(1 + z) would start Halley on the real line
    let on_cut = z.im == 0.0 && z.re < -INV_E;
    if k == 0 && !on_cut && z.re > -1.0 && z.re < 1.5 && z.im.abs() < 1.0 {
        return (z + 1.0).ln();
    }
    let l1 = z.ln() + Complex64::new(0.0, 2.0 * PI * k as f64);
    let l2 = l1.ln();
    l1 - l2 + l2 / l1
}

fn lambert_w_real(k: i64, x: f64) -> Result<f64> {
    if (x + INV_E).abs() <= 4.0 * f64::EPSILON * INV_E {
        return Ok(-1.0);
    }
    let p = (2.0 * (E * x + 1.0)).max(0.0).sqrt();
    let mut w = match k {
        0 if x < -0.25 => -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p,
        0 if x < 3.0 => x.ln_1p(),
        0 => {
            let l1 = x.ln();
            l1 - l1.ln() + l1.ln() / l1
        }
        _ if x < -0.25 => -1.0 - p - p * p / 3.0 - 11.0 / 72.0 * p * p * p,
        _ => {
            let l1 = (-x).ln();
            let l2 = (-l1).ln();
            l1 - l2 + l2 / l1
        }
    };
    for _ in 0..MAX_HALLEY_ITERATIONS {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        if wp1 == 0.0 {
            break;
        }
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        let next = w - step;
        if !next.is_finite() {
            break;
        }
        w = next;
        if step.abs() <= 2.0 * f64::EPSILON * w.abs().max(1e-300) {
            break;
        }
    }
    let rel = (w * w.exp() - x).abs() / x.abs();
    // the branch point is ill conditioned: w+1 ~ sqrt(residual)
    if rel <= 1e-13 || ((x + INV_E).abs() < 1e-8 && rel <= 1e-10) {
        Ok(w)
    } else {
        Err(Error::Numeric(format!(
            "real Lambert W did not converge on branch {k} at x = {x}: residual {rel:e}"
        )))
    }
}

/// Taylor coefficients of `tan θ = Σ τ_{2n} θ^{2n+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TanCoefficients {
    /// `values[n]` multiplies `θ^{2n+1}`.
    pub values: Vec<f64>,
    /// Exact rationals, present when computed with `n_max ≤ 30`.
    pub exact: Option<Vec<BigRational>>,
}

impl TanCoefficients {
    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    /// Coefficient of `θ^{2n+1}`.
    pub fn get(&self, n: usize) -> f64 {
        self.values[n]
    }

    /// Upper bound `(π²/3)(2/π)^{2n}` valid for `n ≥ 1`.
    pub fn bound(n: usize) -> f64 {
        PI * PI / 3.0 * (2.0 / PI).powi(2 * n as i32)
    }

    /// Indices `n ≥ 1` where the coefficient is not positive or exceeds [`Self::bound`].
    pub fn bound_violations(&self) -> Vec<usize> {
        (1..self.values.len())
            .filter(|&n| !(self.values[n] > 0.0 && self.values[n] <= Self::bound(n)))
            .collect()
    }

    /// Partial sum of the series at `theta`.
    pub fn evaluate(&self, theta: f64) -> f64 {
        let t2 = theta * theta;
        let mut acc = 0.0;
        for &c in self.values.iter().rev() {
            acc = acc * t2 + c;
        }
        acc * theta
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,tau\n");
        for (n, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{n},{v:.16e}\n"));
        }
        out
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Coefficients of tan θ up to `θ^{2 n_max + 1}` by dividing the sine series
/// by the cosine series. Exact rational arithmetic is used for `n_max ≤ 30`.
pub fn tan_coeffs(n_max: usize) -> TanCoefficients {
    let degree = 2 * n_max + 1;
    if n_max <= 30 {
        let mut t: Vec<BigRational> = vec![BigRational::zero(); degree + 1];
        let cos_c = |i: usize| -> BigRational {
            let sign = if (i / 2).is_multiple_of(2) { 1 } else { -1 };
            BigRational::new(BigInt::from(sign), factorial(i))
        };
        for j in (1..=degree).step_by(2) {
            let sign = if ((j - 1) / 2) % 2 == 0 { 1 } else { -1 };
            let mut acc = BigRational::new(BigInt::from(sign), factorial(j));
            for i in (2..j).step_by(2) {
                acc -= cos_c(i) * &t[j - i];
            }
            t[j] = acc;
        }
        let exact: Vec<BigRational> = (0..=n_max).map(|n| t[2 * n + 1].clone()).collect();
        let values = exact.iter().map(ratio_to_f64).collect();
        TanCoefficients {
            values,
            exact: Some(exact),
        }
    } else {
        let mut t = vec![0.0f64; degree + 1];
        let mut fact = vec![1.0f64; degree + 1];
        for i in 1..=degree {
            fact[i] = fact[i - 1] * i as f64;
        }
        for j in (1..=degree).step_by(2) {
            let sign = if ((j - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let mut acc = sign / fact[j];
            for i in (2..j).step_by(2) {
                let c = if (i / 2) % 2 == 0 { 1.0 } else { -1.0 } / fact[i];
                acc -= c * t[j - i];
            }
            t[j] = acc;
        }
        TanCoefficients {
            values: (0..=n_max).map(|n| t[2 * n + 1]).collect(),
            exact: None,
        }
    }
}

/// Bernoulli numbers `B_0 … B_m` (with `B_1 = -1/2`).
pub fn bernoulli_numbers(m: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(m + 1);
    b.push(BigRational::one());
    // binomial row C(j+1, i) built incrementally
    for j in 1..=m {
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (i, bi) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bi;
            binom = binom * BigInt::from(j + 1 - i) / BigInt::from(i + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(j + 1)));
    }
    b
}

/// ζ(s) for a positive even integer `s`, from
/// `ζ(2n) = (-1)^{n+1} B_{2n} (2π)^{2n} / (2 (2n)!)`.
pub fn zeta_even(s: i64) -> Result<f64> {
    if s <= 0 || s % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "zeta_even needs a positive even argument, got {s}"
        )));
    }
    let s = s as usize;
    if s > 120 {
        // (2π)^s overflows long before this matters; the sum is 1 to double precision
        return Ok(1.0 + 2f64.powi(-(s as i32)));
    }
    let b = bernoulli_numbers(s);
    let scaled = b[s].abs() / BigRational::from_integer(factorial(s));
    Ok(ratio_to_f64(&scaled) * (2.0 * PI).powi(s as i32) / 2.0)
}

/// The rational tan coefficient via Bernoulli numbers,
/// `(-1)^{n} 2^{2n+2} (2^{2n+2} - 1) B_{2n+2} / (2n+2)!` for `θ^{2n+1}`.
pub fn tan_coeff_bernoulli(n: usize) -> BigRational {
    let m = 2 * n + 2;
    let b = bernoulli_numbers(m);
    let p = BigInt::one() << m;
    let num = BigRational::from_integer(p.clone() * (p - BigInt::one())) * &b[m];
    let val = num / BigRational::from_integer(factorial(m));
    if n.is_multiple_of(2) {
        val
    } else {
        -val
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn elementary_values() {
        assert_eq!(lambert_w(0, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!((lambert_w(0, c(E, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(lambert_w(-1, c(-INV_E, 0.0)).unwrap(), c(-1.0, 0.0));
        assert_eq!(lambert_w(0, c(-INV_E, 0.0)).unwrap(), c(-1.0, 0.0));
        assert!(matches!(lambert_w(1, c(0.0, 0.0)), Err(Error::LambertPole { branch: 1 })));
    }

    #[test]
    fn omega_constant_by_newton() {
        // independent Newton iteration on w e^w = 1
        let mut w = 0.5f64;
        for _ in 0..50 {
            w -= (w * w.exp() - 1.0) / (w.exp() * (w + 1.0));
        }
        let got = lambert_w(0, c(1.0, 0.0)).unwrap();
        assert_eq!(got.im, 0.0);
        assert!((got.re - w).abs() < 1e-15);
        assert!((got.re - 0.567_143_290_409_783_8).abs() < 1e-15);
    }

    #[test]
    fn real_branches_stay_real() {
        for &x in &[-0.36, -0.2, -0.01, -1e-6] {
            let w0 = lambert_w(0, c(x, 0.0)).unwrap();
            let wm = lambert_w(-1, c(x, 0.0)).unwrap();
            assert_eq!(w0.im, 0.0);
            assert_eq!(wm.im, 0.0);
            assert!(w0.re > -1.0 && wm.re < -1.0);
        }
    }

    // reference values from scipy.special.lambertw
    #[test]
    fn reference_values() {
        let cases: &[(i64, (f64, f64), (f64, f64))] = &[
            (1, (1.0, 0.0), (-1.533_913_319_793_574_5, 4.375_185_153_061_898)),
            (-1, (1.0, 0.0), (-1.533_913_319_793_574_5, -4.375_185_153_061_898)),
            (0, (-1.0, 0.0), (-0.318_131_505_204_764_2, 1.337_235_701_430_689_3)),
            (2, (0.5, -2.0), (-1.541_755_516_230_682_6, 9.509_019_255_274_936)),
            (-2, (-3.0, 1.0), (-0.942_328_018_776_054_4, -8.059_336_922_782_885)),
            (1, (-0.2, -0.01), (-2.541_448_265_897_161_6, 0.082_349_747_653_061_23)),
            (-1, (-0.2, 0.01), (-2.541_448_265_897_161_6, -0.082_349_747_653_061_23)),
            (1, (-0.5, 0.0), (-2.772_069_015_153_082, 7.499_943_028_341_875_5)),
            (-1, (-0.2, 0.0), (-2.542_641_357_773_526_5, 0.0)),
        ];
        for &(k, (zr, zi), (wr, wi)) in cases {
            let w = lambert_w(k, c(zr, zi)).unwrap();
            assert!((w - c(wr, wi)).norm() < 1e-12, "k={k} z=({zr},{zi}) got {w}");
        }
    }

    #[test]
    fn real_arguments_on_the_cuts() {
        for x in [-0.37, -0.38, -0.5, -0.83, -1.0, -1.7, -2.5, -40.0] {
            for k in -3..=3 {
                let z = c(x, 0.0);
                let w = lambert_w(k, z).unwrap();
                assert!((w * w.exp() - z).norm() < 1e-13 * z.norm(), "{k} {x} {w}");
                if k == 0 {
                    assert!(w.im > 0.0, "upper side of the cut: {x} {w}");
                }
            }
        }
    }

    #[test]
    fn tan_low_order() {
        let t = tan_coeffs(10);
        let ex = t.exact.as_ref().unwrap();
        assert_eq!(ex[0], BigRational::one());
        assert_eq!(ex[1], BigRational::new(1.into(), 3.into()));
        assert_eq!(ex[2], BigRational::new(2.into(), 15.into()));
        assert_eq!(ex[3], BigRational::new(17.into(), 315.into()));
        for n in 0..=10 {
            assert_eq!(ex[n], tan_coeff_bernoulli(n));
        }
        assert!(t.get(10) <= TanCoefficients::bound(10));
    }

    #[test]
    fn float_path_matches_exact() {
        let e = tan_coeffs(30);
        let f = tan_coeffs(35);
        for n in 0..=30 {
            assert!((e.values[n] - f.values[n]).abs() <= 1e-14 * e.values[n]);
        }
        assert!(f.exact.is_none());
    }

    #[test]
    fn zeta_values() {
        assert!((zeta_even(2).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta_even(4).unwrap() - PI.powi(4) / 90.0).abs() < 1e-14);
        assert!(zeta_even(3).is_err());
        assert!(zeta_even(0).is_err());
        assert!(zeta_even(-2).is_err());
        let mut prev = f64::INFINITY;
        for n in 1..=20 {
            let z = zeta_even(2 * n).unwrap();
            assert!(z < prev && z > 1.0);
            prev = z;
        }
        assert!((zeta_even(40).unwrap() - 1.0).abs() < 1e-11);
    }

    #[test]
    fn bernoulli_small() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[1], BigRational::new((-1).into(), 2.into()));
        assert_eq!(b[2], BigRational::new(1.into(), 6.into()));
        assert_eq!(b[4], BigRational::new((-1).into(), 30.into()));
        assert_eq!(b[8], BigRational::new((-1).into(), 30.into()));
        assert!(b[3].is_zero() && b[5].is_zero());
    }
}
