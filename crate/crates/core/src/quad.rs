//! Adaptive composite Gauss-Legendre quadrature.
//!
//! Eight-point rule per panel; a panel is accepted when its estimate agrees
//! with the sum over its two halves to the requested absolute tolerance.
//! The integrand is vector valued so that several integrals sharing the same
//! (possibly expensive) evaluation of R(θ) are computed in one pass.

use crate::error::{Error, Result};

const NODES: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329_0,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const WEIGHTS: [f64; 4] = [
    0.362_683_783_378_362_0,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

const MAX_DEPTH: u32 = 30;
/// Panels whose two estimates agree to this relative accuracy are accepted
/// even when the absolute tolerance is below rounding noise.
const REL_FLOOR: f64 = 1e-13;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

fn panel<const D: usize, F>(f: &F, lo: f64, hi: f64) -> Result<[f64; D]>
where
    F: Fn(f64) -> [f64; D],
{
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut acc = [0.0; D];
    for (x, w) in NODES.iter().zip(WEIGHTS.iter()) {
        for t in [mid - half * x, mid + half * x] {
            let v = f(t);
            for (a, vi) in acc.iter_mut().zip(v.iter()) {
                if !vi.is_finite() {
                    return Err(Error::Evaluation { theta: t });
                }
                *a += w * vi;
            }
        }
    }
    for a in acc.iter_mut() {
        *a *= half;
    }
    Ok(acc)
}

fn refine<const D: usize, F>(
    f: &F,
    lo: f64,
    hi: f64,
    whole: [f64; D],
    tol: f64,
    depth: u32,
) -> Result<[f64; D]>
where
    F: Fn(f64) -> [f64; D],
{
    let mid = 0.5 * (lo + hi);
    let left = panel(f, lo, mid)?;
    let right = panel(f, mid, hi)?;
    let mut split = [0.0; D];
    let mut err: f64 = 0.0;
    let mut mag: f64 = 0.0;
    for i in 0..D {
        split[i] = left[i] + right[i];
        err = err.max((split[i] - whole[i]).abs());
        mag = mag.max(left[i].abs() + right[i].abs());
    }
    if err <= tol.max(REL_FLOOR * mag) || depth >= MAX_DEPTH {
        return Ok(split);
    }
    let l = refine(f, lo, mid, left, 0.5 * tol, depth + 1)?;
    let r = refine(f, mid, hi, right, 0.5 * tol, depth + 1)?;
    let mut out = [0.0; D];
    for i in 0..D {
        out[i] = l[i] + r[i];
    }
    Ok(out)
}

/// Integrates a vector-valued function over `[lo, hi]` to absolute tolerance `tol`.
pub fn integrate<const D: usize, F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<[f64; D]>
where
    F: Fn(f64) -> [f64; D],
{
    if lo == hi {
        return Ok([0.0; D]);
    }
    let whole = panel(&f, lo, hi)?;
    refine(&f, lo, hi, whole, tol, 0)
}

/// Scalar convenience wrapper around [`integrate`].
pub fn integrate_scalar<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    integrate(|t| [f(t)], lo, hi, tol).map(|v| v[0])
}
