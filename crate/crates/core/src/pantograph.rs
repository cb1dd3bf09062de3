//! The mirror pantograph equation
//!
//! ```text
//! sin θ R′(θ) = 4a R(2θ) − 3 cos θ R(θ)
//! ```
//!
//! whose solutions are mirrors similar point by point to their caustics by
//! reflection. Near 0 we write `R = Q sin θ` with `Q = Σ_{n≥k} a_n θ^n`, which
//! turns the equation into `tan θ Q′ = 8a Q(2θ) − 4Q` and gives
//!
//! ```text
//! a = (k + 4)/2^{k+3},   (2^{n+3} a − n − 4) a_n = Σ_{i≥1} τ_{2i} (n − 2i) a_{n−2i}
//! ```
//!
//! with τ the Taylor coefficients of tan. The series converges on |θ| < π/2;
//! beyond that `R(2u) = (3 cos u R(u) + sin u R′(u))/(4a)` continues it.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::{collinearity_residual, PlanePoint};
use crate::inclination::{
    self, fmt_num, Anchor, AngleInterval, InclinationCurve, ReconstructOptions,
};
use crate::oracle::{occlusion_check, verticality_check, OcclusionReport, VerticalityReport};
use crate::specfun::tan_coeffs;

pub const DEFAULT_ORDER: usize = 30;
pub const DEFAULT_JET_ORDER: usize = 12;
/// Distance kept from the edge π/2 of the convergence disk.
pub const DEFAULT_GUARD: f64 = 1e-3;
/// Smallest supported lowest exponent.
pub const MIN_K: i64 = -4;

const RESONANCE_TOLERANCE: f64 = 1e-12;
/// Highest sine term multiplied into `Q` when forming the series of `R`.
const SINE_DEGREE: i64 = 41;
/// Largest `n` searched when locating where the coefficient bound becomes inductive.
const BOUND_SEARCH: i64 = 400;

/// `(k + 4)/2^{k+3}`; for the mirror exponent `m = k + 1` this is `(m + 3)/2^{m+2}`.
pub fn similarity_factor(k: i64) -> f64 {
    (k + 4) as f64 * 2f64.powi(-(k + 3) as i32)
}

pub fn similarity_factor_exact(k: i64) -> BigRational {
    let p = k + 3;
    let num = BigInt::from(k + 4);
    if p >= 0 {
        BigRational::new(num, BigInt::one() << p as usize)
    } else {
        BigRational::from_integer(num << (-p) as usize)
    }
}

fn denominator(n: i64, a: f64) -> f64 {
    2f64.powi((n + 3) as i32) * a - n as f64 - 4.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesOptions {
    /// `a_k`, the free scale.
    pub leading: f64,
    /// `a_{-2}`, free only when `k = −3`.
    pub secondary: Option<f64>,
    /// Run the recursion in exact rationals as well (`N − k ≤ 60`).
    pub exact: bool,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions {
            leading: 1.0,
            secondary: None,
            exact: false,
        }
    }
}

/// Truncated Laurent series `Q(θ) = Σ_{n=k}^{N} a_n θ^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PantographSeries {
    pub k: i64,
    pub factor_a: f64,
    /// `coeffs[i]` is `a_{k+i}`.
    pub coeffs: Vec<f64>,
    pub order: i64,
    pub secondary_coeff: Option<f64>,
    pub exact: Option<Vec<BigRational>>,
}

pub fn solve_series(k: i64, order: usize, options: &SeriesOptions) -> Result<PantographSeries> {
    if k < MIN_K {
        return Err(Error::InvalidParameter(format!(
            "k = {k} is below the supported range k >= {MIN_K}"
        )));
    }
    let n_top = order as i64;
    if n_top <= k {
        return Err(Error::InvalidParameter(format!("order N = {order} must exceed k = {k}")));
    }
    if options.leading == 0.0 || !options.leading.is_finite() {
        return Err(Error::InvalidParameter("leading coefficient must be finite and nonzero".into()));
    }
    if options.secondary.is_some() && k != -3 {
        return Err(Error::InvalidParameter("a secondary coefficient is only free when k = -3".into()));
    }
    let a = similarity_factor(k);
    let len = (n_top - k + 1) as usize;
    let tau = tan_coeffs(len / 2 + 1);
    let mut c = vec![0.0f64; len];
    c[0] = options.leading;
    for n in k + 1..=n_top {
        let d = denominator(n, a);
        let idx = (n - k) as usize;
        if d.abs() < RESONANCE_TOLERANCE {
            match options.secondary {
                Some(s) if n == k + 1 => {
                    c[idx] = s;
                    continue;
                }
                _ => return Err(Error::Resonance { n }),
            }
        }
        let mut acc = 0.0;
        let mut i = 1;
        while n - 2 * i >= k {
            let m = n - 2 * i;
            acc += tau.get(i as usize) * (m as f64) * c[(m - k) as usize];
            i += 1;
        }
        c[idx] = acc / d;
    }
    let exact = if options.exact {
        Some(solve_exact(k, n_top, options)?)
    } else {
        None
    };
    let coeffs = match &exact {
        Some(e) => e.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect(),
        None => c,
    };
    Ok(PantographSeries {
        k,
        factor_a: a,
        coeffs,
        order: n_top,
        secondary_coeff: options.secondary,
        exact,
    })
}

fn solve_exact(k: i64, n_top: i64, options: &SeriesOptions) -> Result<Vec<BigRational>> {
    let len = (n_top - k + 1) as usize;
    if len / 2 + 1 > 30 {
        return Err(Error::InvalidParameter(format!(
            "exact recursion supports N - k <= 60, got {}",
            n_top - k
        )));
    }
    let from = |v: f64| {
        BigRational::from_float(v)
            .ok_or_else(|| Error::InvalidParameter(format!("{v} has no exact rational form")))
    };
    let tau = tan_coeffs(len / 2 + 1)
        .exact
        .ok_or_else(|| Error::Numeric("exact tan coefficients unavailable".into()))?;
    let a = similarity_factor_exact(k);
    let mut c = vec![BigRational::zero(); len];
    c[0] = from(options.leading)?;
    for n in k + 1..=n_top {
        let idx = (n - k) as usize;
        let p = n + 3;
        let pow = if p >= 0 {
            BigRational::from_integer(BigInt::one() << p as usize)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-p) as usize)
        };
        let d = pow * &a - BigRational::from_integer(BigInt::from(n + 4));
        if d.is_zero() {
            match options.secondary {
                Some(s) if n == k + 1 => {
                    c[idx] = from(s)?;
                    continue;
                }
                _ => return Err(Error::Resonance { n }),
            }
        }
        let mut acc = BigRational::zero();
        let mut i = 1;
        while n - 2 * i >= k {
            let m = n - 2 * i;
            acc += &tau[i as usize] * BigRational::from_integer(BigInt::from(m)) * &c[(m - k) as usize];
            i += 1;
        }
        c[idx] = acc / d;
    }
    Ok(c)
}

/// Outcome of checking a series against the properties its recursion guarantees.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesChecks {
    /// `a_{k+1} = 0` and every other coefficient of that parity vanishes
    /// (not applicable with a secondary coefficient).
    pub parity_zero: bool,
    /// Each parity chain keeps the sign of its first coefficient. Guaranteed
    /// for k ≥ 0 only: for negative k the factor (n − 2i) changes sign.
    pub sign_coherent: bool,
    /// `2^{n+3} a − n − 4 > 0` for `n > k` away from the resonance.
    pub denominators_positive: bool,
    /// The bound constant `M` (absent for `k = −4`).
    pub bound_m: Option<f64>,
    /// `|a_n| (π/2)^n ≤ M` for every stored coefficient.
    pub bound_holds: bool,
}

impl SeriesChecks {
    pub fn all_pass(&self) -> bool {
        self.parity_zero && self.sign_coherent && self.denominators_positive && self.bound_holds
    }
}

impl PantographSeries {
    /// `m = k + 1`, the power of θ in `R` near 0.
    pub fn mirror_exponent(&self) -> i64 {
        self.k + 1
    }

    pub fn coeff(&self, n: i64) -> f64 {
        if n < self.k || n > self.order {
            0.0
        } else {
            self.coeffs[(n - self.k) as usize]
        }
    }

    /// The constant `M` with `|a_n| ≤ M (2/π)^n` for all n: find `N₀` beyond
    /// which the recursion cannot increase `|a_n|(π/2)^n` and take the maximum
    /// up to there.
    pub fn bound_m(&self) -> Option<f64> {
        if self.k <= MIN_K {
            return None;
        }
        let a = self.factor_a;
        let ok = |n: i64| {
            let h = n.div_euclid(2);
            let den = 2f64.powi((n + 4) as i32) * a - n as f64 - 5.0;
            den > 0.0 && ((n - h) * h) as f64 * PI * PI / 3.0 <= den
        };
        let start = self.k.max(0);
        let mut n0 = BOUND_SEARCH;
        for cand in (start..BOUND_SEARCH).rev() {
            if !ok(cand) {
                break;
            }
            n0 = cand;
        }
        let mut reach = self.clone();
        if n0 > self.order {
            let opts = SeriesOptions {
                leading: self.coeffs[0],
                secondary: self.secondary_coeff,
                exact: false,
            };
            reach = solve_series(self.k, n0 as usize, &opts).ok()?;
        }
        let r = FRAC_PI_2;
        Some(
            (self.k..=n0.max(self.k))
                .map(|n| reach.coeff(n).abs() * r.powi(n as i32))
                .fold(0.0, f64::max),
        )
    }

    pub fn checks(&self) -> SeriesChecks {
        let parity_zero = self.secondary_coeff.is_some()
            || (self.k + 1..=self.order)
                .step_by(2)
                .all(|n| self.coeff(n) == 0.0);
        let sign_coherent = [self.k, self.k + 1].iter().all(|&start| {
            let chain: Vec<f64> = (start..=self.order)
                .step_by(2)
                .map(|n| self.coeff(n))
                .filter(|v| *v != 0.0)
                .collect();
            chain.windows(2).all(|w| w[0].signum() == w[1].signum())
        });
        let denominators_positive = self.k <= MIN_K
            || (self.k + 1..=self.order)
                .filter(|&n| !(self.k == -3 && n == -2))
                .all(|n| denominator(n, self.factor_a) > 0.0);
        let bound_m = self.bound_m();
        let bound_holds = match bound_m {
            Some(m) => (self.k..=self.order)
                .all(|n| self.coeff(n).abs() * FRAC_PI_2.powi(n as i32) <= m * (1.0 + 1e-12)),
            None => true,
        };
        SeriesChecks {
            parity_zero,
            sign_coherent,
            denominators_positive,
            bound_m,
            bound_holds,
        }
    }

    /// `n,a_n` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,a_n\n");
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{},{}\n", self.k + i as i64, fmt_num(*c)));
        }
        out
    }
}

fn falling(e: i64, j: usize) -> f64 {
    (0..j as i64).fold(1.0, |acc, i| acc * (e - i) as f64)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// A pantograph mirror `R(θ)` on `[0, ∞)`: the series on the base interval and
/// the doubling formula beyond it.
#[derive(Debug, Clone)]
pub struct PantographSolution {
    pub series: PantographSeries,
    pub jet_order: usize,
    pub guard: f64,
    /// Series of `R = Q sin θ`; `r_coeffs[i]` multiplies `θ^{k+1+i}`.
    r_coeffs: Vec<f64>,
}

impl PantographSolution {
    pub fn new(series: PantographSeries) -> Result<Self> {
        if series.factor_a == 0.0 {
            return Err(Error::InvalidParameter(
                "k = -4 (a = 0) cannot be continued by doubling; use parabola_mirror".into(),
            ));
        }
        let lo = series.k + 1;
        let hi = series.order + SINE_DEGREE;
        let mut r = vec![0.0; (hi - lo + 1) as usize];
        let mut fact = 1.0;
        let mut sine = Vec::new();
        for m in 1..=SINE_DEGREE {
            fact *= m as f64;
            if m % 2 == 1 {
                let sign = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
                sine.push((m, sign / fact));
            }
        }
        for (i, &a) in series.coeffs.iter().enumerate() {
            let n = series.k + i as i64;
            for &(m, s) in &sine {
                r[(n + m - lo) as usize] += a * s;
            }
        }
        Ok(PantographSolution {
            series,
            jet_order: DEFAULT_JET_ORDER,
            guard: DEFAULT_GUARD,
            r_coeffs: r,
        })
    }

    pub fn with_jet_order(mut self, jet_order: usize) -> Self {
        self.jet_order = jet_order;
        self
    }

    pub fn with_guard(mut self, guard: f64) -> Self {
        self.guard = guard;
        self
    }

    pub fn factor_a(&self) -> f64 {
        self.series.factor_a
    }

    /// Upper end of the interval where the series is used directly.
    pub fn base_limit(&self) -> f64 {
        FRAC_PI_2 - self.guard
    }

    fn check_base(&self, theta: f64) -> Result<()> {
        if !(theta.abs() < self.base_limit()) {
            return Err(Error::OutsideDomain {
                lo: theta,
                hi: theta,
                domain_lo: -self.base_limit(),
                domain_hi: self.base_limit(),
            });
        }
        if theta == 0.0 && self.series.k < 0 {
            return Err(Error::Pole { theta });
        }
        Ok(())
    }

    /// `Q^{(j)}(θ)` for `j = 0..=order`, term by term.
    pub fn eval_q_jet(&self, theta: f64, order: usize) -> Result<Vec<f64>> {
        self.check_base(theta)?;
        Ok(laurent_jet(&self.series.coeffs, self.series.k, theta, order))
    }

    pub fn eval_q(&self, theta: f64) -> Result<f64> {
        Ok(self.eval_q_jet(theta, 0)?[0])
    }

    /// `R^{(j)}(θ)` for `j = 0..=order` on the base interval.
    pub fn eval_r_base(&self, theta: f64, order: usize) -> Result<Vec<f64>> {
        self.check_base(theta)?;
        if theta == 0.0 && self.series.k < -1 {
            return Err(Error::Pole { theta });
        }
        let jet = laurent_jet(&self.r_coeffs, self.series.k + 1, theta, order);
        if jet.iter().any(|v| !v.is_finite()) {
            return Err(Error::Evaluation { theta });
        }
        Ok(jet)
    }

    /// Number of doublings from `theta` down to the base interval.
    pub fn depth(&self, theta: f64) -> usize {
        let mut t = theta;
        let mut d = 0;
        while t >= self.base_limit() {
            t *= 0.5;
            d += 1;
        }
        d
    }

    /// `R^{(j)}(θ)` for `j = 0..=order`, by doubling when θ is past the base interval.
    pub fn jet(&self, theta: f64, order: usize) -> Result<Vec<f64>> {
        if !theta.is_finite() {
            return Err(Error::InvalidParameter(format!("theta = {theta} is not finite")));
        }
        if theta < 0.0 && theta.abs() >= self.base_limit() {
            return Err(Error::InvalidParameter(format!(
                "continuation is defined for theta >= 0, got {theta}"
            )));
        }
        let d = self.depth(theta);
        let required = d + order;
        if d > 0 && required > self.jet_order {
            return Err(Error::Depth {
                theta,
                required,
                configured: self.jet_order,
            });
        }
        self.jet_rec(theta, order)
    }

    fn jet_rec(&self, theta: f64, order: usize) -> Result<Vec<f64>> {
        if theta < self.base_limit() {
            return self.eval_r_base(theta, order);
        }
        let u = 0.5 * theta;
        let ju = self.jet_rec(u, order + 1)?;
        let four_a = 4.0 * self.series.factor_a;
        let mut out = Vec::with_capacity(order + 1);
        for j in 0..=order {
            // F = 3 cos u R + sin u R′, differentiated j times by Leibniz
            let mut f = 0.0;
            for i in 0..=j {
                let shift = i as f64 * FRAC_PI_2;
                let b = binomial(j, i);
                f += b * (3.0 * (u + shift).cos() * ju[j - i] + (u + shift).sin() * ju[j - i + 1]);
            }
            out.push(f / (four_a * 2f64.powi(j as i32)));
        }
        Ok(out)
    }

    /// `(R(θ), R′(θ))`.
    pub fn continue_r(&self, theta: f64) -> Result<(f64, f64)> {
        let j = self.jet(theta, 1)?;
        Ok((j[0], j[1]))
    }

    /// The mirror as an inclination curve on `[0, ∞)`.
    pub fn curve(&self) -> InclinationCurve {
        let (s0, s1, s2) = (Arc::new(self.clone()), Arc::new(self.clone()), Arc::new(self.clone()));
        let domain = AngleInterval {
            lo: 0.0,
            hi: f64::INFINITY,
            n_samples: 2,
        };
        let curve = InclinationCurve::new(
            format!("pantograph(m={})", self.series.mirror_exponent()),
            domain,
            move |t| s0.jet(t, 0).map(|j| j[0]).unwrap_or(f64::NAN),
        )
        .with_derivative(move |t| s1.jet(t, 1).map(|j| j[1]).unwrap_or(f64::NAN))
        .with_second_derivative(move |t| s2.jet(t, 2).map(|j| j[2]).unwrap_or(f64::NAN));
        if self.series.k < -1 {
            curve.with_poles(vec![0.0])
        } else {
            curve
        }
    }

    /// `sup |sin θ R′ + 3 cos θ R − 4a R(2θ)|` over the grid.
    pub fn pantograph_residual(&self, interval: &AngleInterval) -> Result<f64> {
        let four_a = 4.0 * self.series.factor_a;
        let mut worst: f64 = 0.0;
        for t in interval.grid() {
            let (r, rp) = self.continue_r(t)?;
            let r2 = self.jet(2.0 * t, 0)?[0];
            worst = worst.max((t.sin() * rp + 3.0 * t.cos() * r - four_a * r2).abs());
        }
        Ok(worst)
    }

    /// `sup |tan θ Q′ − 8a Q(2θ) + 4Q|` over the grid, with `Q = R / sin θ`
    /// continued by doubling where `2θ` leaves the base interval.
    pub fn auxiliary_residual(&self, interval: &AngleInterval) -> Result<f64> {
        let eight_a = 8.0 * self.series.factor_a;
        let mut worst: f64 = 0.0;
        for t in interval.grid() {
            let q = self.eval_q_jet(t, 1)?;
            let q2 = self.jet(2.0 * t, 0)?[0] / (2.0 * t).sin();
            worst = worst.max((t.tan() * q[1] - eight_a * q2 + 4.0 * q[0]).abs());
        }
        Ok(worst)
    }
}

/// Derivatives of `Σ c_i θ^{lo+i}` up to `order`.
fn laurent_jet(c: &[f64], lo: i64, theta: f64, order: usize) -> Vec<f64> {
    (0..=order)
        .map(|j| {
            let mut acc = 0.0;
            for (i, &ci) in c.iter().enumerate().rev() {
                if ci == 0.0 {
                    continue;
                }
                let e = lo + i as i64;
                let f = falling(e, j);
                if f != 0.0 {
                    acc += ci * f * theta.powi((e - j as i64) as i32);
                }
            }
            acc
        })
        .collect()
}

/// Diagnostics of a pantograph mirror.
#[derive(Debug, Clone, PartialEq)]
pub struct MirrorReport {
    pub factor_a: f64,
    /// Sign changes of R inside the interval.
    pub zeros: Vec<f64>,
    /// Distance of each zero from the nearest multiple of π.
    pub zero_deviations: Vec<f64>,
    pub max_zero_deviation: f64,
    pub r_at_pi: f64,
    /// `max |R|` over the interval grid.
    pub max_abs_r: f64,
    /// Mirror angles 0, π/2, π, 2π, 4π whose caustic points should be collinear.
    pub cusp_angles: Vec<f64>,
    pub mirror_points: Vec<PlanePoint>,
    pub caustic_cusps: Vec<PlanePoint>,
    pub collinearity: f64,
    /// `|R(θ + π)/R(θ)|`, the size ratio of consecutive arcs, on this interval.
    pub arc_ratio_interval: (f64, f64),
    pub arc_ratio_min: f64,
    pub arc_ratio_max: f64,
    /// `(δ, |Q(π − δ)|)` for shrinking δ.
    pub q_growth: Vec<(f64, f64)>,
    /// Largest distance between the caustic's first arc scaled by 1/a about
    /// `r(0)` and the mirror's first arc, matched by inclination.
    pub self_similarity: f64,
    pub verticality: VerticalityReport,
    pub occlusion: OcclusionReport,
}

const ARC_RATIO_MARGIN: f64 = 0.3;
const SELF_SIMILARITY_SAMPLES: usize = 201;

/// Caustic point of a mirror point under horizontal rays: `r + ½ R sin θ (cos 2θ, sin 2θ)`.
fn reflection_caustic(p: PlanePoint, theta: f64, r: f64) -> PlanePoint {
    p + PlanePoint::from_angle(2.0 * theta) * (0.5 * r * theta.sin())
}

pub fn mirror_report(solution: &PantographSolution, interval: &AngleInterval) -> Result<MirrorReport> {
    let curve = solution.curve();
    let opts = ReconstructOptions {
        anchor: Anchor::default(),
        tolerance: 1e-13,
    };

    let scan = inclination::find_cusps(&curve, interval)?;
    let zero_deviations: Vec<f64> = scan
        .cusps
        .iter()
        .map(|&z| (z - (z / PI).round() * PI).abs())
        .collect();
    let max_zero_deviation = zero_deviations.iter().cloned().fold(0.0, f64::max);

    let samples = inclination::reconstruct_with(&curve, interval, &opts)?;
    let max_abs_r = samples.iter().map(|s| s.radius.abs()).fold(0.0, f64::max);
    let points: Vec<PlanePoint> = samples.iter().map(|s| s.position).collect();

    let cusp_angles = vec![0.0, FRAC_PI_2, PI, 2.0 * PI, 4.0 * PI];
    let at_cusps = inclination::reconstruct_on_grid(&curve, &cusp_angles, &opts)?;
    let caustic_cusps: Vec<PlanePoint> = at_cusps
        .iter()
        .map(|s| reflection_caustic(s.position, s.theta, s.radius))
        .collect();

    let ratio_iv = AngleInterval::new(ARC_RATIO_MARGIN, PI - ARC_RATIO_MARGIN, 200)?;
    let mut arc_ratio_min = f64::INFINITY;
    let mut arc_ratio_max = f64::NEG_INFINITY;
    for t in ratio_iv.grid() {
        let rho = (solution.jet(t + PI, 0)?[0] / solution.jet(t, 0)?[0]).abs();
        arc_ratio_min = arc_ratio_min.min(rho);
        arc_ratio_max = arc_ratio_max.max(rho);
    }

    let q_growth = [1e-1, 1e-2, 1e-3]
        .iter()
        .map(|&d| {
            let t = PI - d;
            solution.jet(t, 0).map(|j| (d, (j[0] / t.sin()).abs()))
        })
        .collect::<Result<Vec<_>>>()?;

    let grid = AngleInterval::new(0.0, PI, SELF_SIMILARITY_SAMPLES)?.grid();
    let half: Vec<f64> = grid.iter().map(|t| 0.5 * t).collect();
    let mirror_arc = inclination::reconstruct_on_grid(&curve, &grid, &opts)?;
    let caustic_arc = inclination::reconstruct_on_grid(&curve, &half, &opts)?;
    let origin = mirror_arc[0].position;
    let a = solution.factor_a();
    let self_similarity = mirror_arc
        .iter()
        .zip(&caustic_arc)
        .map(|(m, c)| {
            let cp = reflection_caustic(c.position, c.theta, c.radius);
            (origin + (cp - origin) * (1.0 / a)).distance(m.position)
        })
        .fold(0.0, f64::max);

    Ok(MirrorReport {
        factor_a: a,
        zeros: scan.cusps,
        zero_deviations,
        max_zero_deviation,
        r_at_pi: solution.jet(PI, 0)?[0],
        max_abs_r,
        collinearity: collinearity_residual(&caustic_cusps),
        cusp_angles,
        mirror_points: at_cusps.iter().map(|s| s.position).collect(),
        caustic_cusps,
        arc_ratio_interval: (ratio_iv.lo, ratio_iv.hi),
        arc_ratio_min,
        arc_ratio_max,
        q_growth,
        self_similarity,
        verticality: verticality_check(&points),
        occlusion: occlusion_check(&points),
    })
}

impl MirrorReport {
    /// Machine-readable `key=value` lines.
    pub fn to_key_values(&self) -> String {
        let list = |v: &[f64]| v.iter().map(|x| fmt_num(*x)).collect::<Vec<_>>().join(",");
        let mut out = String::new();
        out.push_str(&format!("factor_a={}\n", fmt_num(self.factor_a)));
        out.push_str(&format!("zeros={}\n", list(&self.zeros)));
        out.push_str(&format!("zero_deviations={}\n", list(&self.zero_deviations)));
        out.push_str(&format!("max_zero_deviation={}\n", fmt_num(self.max_zero_deviation)));
        out.push_str(&format!("r_at_pi={}\n", fmt_num(self.r_at_pi)));
        out.push_str(&format!("max_abs_r={}\n", fmt_num(self.max_abs_r)));
        out.push_str(&format!("cusp_collinearity={}\n", fmt_num(self.collinearity)));
        out.push_str(&format!("arc_ratio_min={}\n", fmt_num(self.arc_ratio_min)));
        out.push_str(&format!("arc_ratio_max={}\n", fmt_num(self.arc_ratio_max)));
        for (d, q) in &self.q_growth {
            out.push_str(&format!("q_abs_at_pi_minus_{d:e}={}\n", fmt_num(*q)));
        }
        out.push_str(&format!("self_similarity={}\n", fmt_num(self.self_similarity)));
        out.push_str(&format!("vertical={}\n", self.verticality.vertical));
        out.push_str(&format!("blocked_fraction={}\n", fmt_num(self.occlusion.blocked_fraction)));
        out
    }
}

impl fmt::Display for MirrorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "similarity factor a      {}", self.factor_a)?;
        writeln!(f, "zeros of R               {}", self.zeros.len())?;
        writeln!(f, "max zero deviation       {:e}", self.max_zero_deviation)?;
        writeln!(f, "R(pi) / max|R|           {:e}", self.r_at_pi / self.max_abs_r)?;
        writeln!(f, "cusp collinearity        {:e}", self.collinearity)?;
        writeln!(
            f,
            "arc ratio on [{:.1}, {:.4}] {} .. {}",
            self.arc_ratio_interval.0, self.arc_ratio_interval.1, self.arc_ratio_min, self.arc_ratio_max
        )?;
        for (d, q) in &self.q_growth {
            writeln!(f, "|Q(pi - {d:e})|          {q:e}")?;
        }
        writeln!(f, "caustic self-similarity  {:e}", self.self_similarity)?;
        writeln!(f, "vertical mirror          {}", self.verticality.vertical)?;
        writeln!(f, "blocked fraction         {}", self.occlusion.blocked_fraction)
    }
}

/// `R(θ) = A / sin³θ` on (0, π): the parabola `y² + 2Ax = −A²`, whose caustic
/// by reflection is the focus `(−A, 0)`.
pub fn parabola_mirror(scale: f64) -> Result<InclinationCurve> {
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::DegenerateCurve(format!("parabola needs A != 0, got {scale}")));
    }
    let a = scale;
    Ok(InclinationCurve::new(
        format!("parabola({a})"),
        AngleInterval::new(0.0, PI, 2)?,
        move |t| a / t.sin().powi(3),
    )
    .with_derivative(move |t| -3.0 * a * t.cos() / t.sin().powi(4))
    .with_second_derivative(move |t| {
        let s = t.sin();
        3.0 * a * (s * s + 4.0 * t.cos().powi(2)) / s.powi(5)
    })
    .with_poles(vec![0.0, PI]))
}

/// Point of the parabola at inclination θ, `(−A/(2 sin²θ), −A cot θ)`.
pub fn parabola_point(scale: f64, theta: f64) -> PlanePoint {
    let s = theta.sin();
    PlanePoint::new(-scale / (2.0 * s * s), -scale * theta.cos() / s)
}

pub fn parabola_focus(scale: f64) -> PlanePoint {
    PlanePoint::new(-scale, 0.0)
}
