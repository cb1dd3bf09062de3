//! Plane curves given by their inclination equation R(θ).
//!
//! θ is the angle between the tangent and the x-axis and R is the signed
//! radius of curvature. The sign of R flips at cusps, so the unit tangent is
//! always `(cos θ, sin θ)` and the normal `(-sin θ, cos θ)`; both reverse
//! relative to the direction of travel at a cusp. The natural parameter is
//! redefined by `ds/dθ = R(θ)`, which may decrease.
//!
//! Plane positions are recovered by quadrature:
//!
//! ```text
//! x(θ) = ∫ R(θ) cos θ dθ,   y(θ) = ∫ R(θ) sin θ dθ,   s(θ) = ∫ R(θ) dθ
//! ```

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::PlanePoint;
use crate::quad;

/// Distance kept from a declared pole when an interval touches it.
pub const POLE_GUARD: f64 = 1e-6;

/// Bisection tolerance for cusp angles.
pub const CUSP_TOLERANCE: f64 = 1e-12;

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A closed angle interval sampled uniformly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleInterval {
    pub lo: f64,
    pub hi: f64,
    pub n_samples: usize,
}

impl AngleInterval {
    pub fn new(lo: f64, hi: f64, n_samples: usize) -> Result<Self> {
        if !(lo < hi) || n_samples < 2 || lo.is_nan() || hi.is_nan() {
            return Err(Error::InvalidInterval { lo, hi, n_samples });
        }
        Ok(AngleInterval { lo, hi, n_samples })
    }

    /// The whole real line; only meaningful as a curve domain.
    pub fn unbounded() -> Self {
        AngleInterval {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
            n_samples: 2,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains(&self, theta: f64) -> bool {
        theta >= self.lo && theta <= self.hi
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.n_samples - 1) as f64
    }

    /// Uniform grid including both endpoints.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.n_samples;
        let h = self.step();
        (0..n)
            .map(|i| if i + 1 == n { self.hi } else { self.lo + h * i as f64 })
            .collect()
    }

    pub fn with_samples(&self, n_samples: usize) -> Result<Self> {
        AngleInterval::new(self.lo, self.hi, n_samples)
    }
}

/// A curve given by its signed radius of curvature as a function of inclination.
#[derive(Clone)]
pub struct InclinationCurve {
    radius: ScalarFn,
    derivative: Option<ScalarFn>,
    second_derivative: Option<ScalarFn>,
    domain: AngleInterval,
    poles: Vec<f64>,
    label: String,
}

impl fmt::Debug for InclinationCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InclinationCurve")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field("poles", &self.poles)
            .field("analytic_derivative", &self.derivative.is_some())
            .finish()
    }
}

impl InclinationCurve {
    pub fn new(
        label: impl Into<String>,
        domain: AngleInterval,
        radius: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        InclinationCurve {
            radius: Arc::new(radius),
            derivative: None,
            second_derivative: None,
            domain,
            poles: Vec::new(),
            label: label.into(),
        }
    }

    /// Registers the analytic R′(θ).
    pub fn with_derivative(mut self, d: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.derivative = Some(Arc::new(d));
        self
    }

    /// Registers the analytic R″(θ).
    pub fn with_second_derivative(
        mut self,
        d: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.second_derivative = Some(Arc::new(d));
        self
    }

    pub fn with_poles(mut self, poles: Vec<f64>) -> Self {
        self.poles = poles;
        self.poles.sort_by(f64::total_cmp);
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> AngleInterval {
        self.domain
    }

    pub fn poles(&self) -> &[f64] {
        &self.poles
    }

    pub fn has_analytic_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    pub fn radius(&self, theta: f64) -> f64 {
        (self.radius)(theta)
    }

    /// R′(θ): analytic when registered, else a five-point central difference
    /// with step `1e-5 · max(1, |θ|)`.
    pub fn radius_derivative(&self, theta: f64) -> f64 {
        match &self.derivative {
            Some(d) => d(theta),
            None => five_point(&*self.radius, theta),
        }
    }

    /// R″(θ): analytic when registered, else differentiates R′.
    pub fn radius_second_derivative(&self, theta: f64) -> f64 {
        match (&self.second_derivative, &self.derivative) {
            (Some(d2), _) => d2(theta),
            (None, Some(d)) => five_point(&**d, theta),
            (None, None) => {
                let h = 1e-4 * theta.abs().max(1.0);
                let r = &self.radius;
                (-r(theta + 2.0 * h) + 16.0 * r(theta + h) - 30.0 * r(theta)
                    + 16.0 * r(theta - h)
                    - r(theta - 2.0 * h))
                    / (12.0 * h * h)
            }
        }
    }

    /// Checks `interval` against the domain and the declared poles. An endpoint
    /// touching a pole is pulled inward by [`POLE_GUARD`]; a pole strictly inside
    /// is an error.
    pub fn clip_interval(&self, interval: &AngleInterval) -> Result<AngleInterval> {
        let mut lo = interval.lo;
        let mut hi = interval.hi;
        for &p in &self.poles {
            if (lo - p).abs() < POLE_GUARD {
                lo = p + POLE_GUARD;
            }
            if (hi - p).abs() < POLE_GUARD {
                hi = p - POLE_GUARD;
            }
        }
        for &p in &self.poles {
            if p >= lo && p <= hi {
                return Err(Error::Pole { theta: p });
            }
        }
        let d = self.domain;
        if lo < d.lo || hi > d.hi {
            return Err(Error::OutsideDomain {
                lo: interval.lo,
                hi: interval.hi,
                domain_lo: d.lo,
                domain_hi: d.hi,
            });
        }
        AngleInterval::new(lo, hi, interval.n_samples)
    }

    /// Curve with radius `R(θ) = r` on the whole line.
    pub fn circle(r: f64) -> Self {
        InclinationCurve::new(format!("circle({r})"), AngleInterval::unbounded(), move |_| r)
            .with_derivative(|_| 0.0)
            .with_second_derivative(|_| 0.0)
    }

    /// `R(θ) = sin θ`, the cycloid with generating circle of radius 1/4.
    pub fn cycloid() -> Self {
        InclinationCurve::new("cycloid", AngleInterval::unbounded(), f64::sin)
            .with_derivative(f64::cos)
            .with_second_derivative(|t| -t.sin())
    }

    /// `R(θ) = A e^{bθ}`.
    pub fn log_spiral(a: f64, b: f64) -> Self {
        InclinationCurve::new(
            format!("log_spiral({a},{b})"),
            AngleInterval::unbounded(),
            move |t| a * (b * t).exp(),
        )
        .with_derivative(move |t| a * b * (b * t).exp())
        .with_second_derivative(move |t| a * b * b * (b * t).exp())
    }

    /// `R(θ) = e^{cθ} sin γθ`, Puiseux's cuspidal spiral.
    pub fn puiseux(c: f64, gamma: f64) -> Self {
        InclinationCurve::new(
            format!("puiseux({c},{gamma})"),
            AngleInterval::unbounded(),
            move |t| (c * t).exp() * (gamma * t).sin(),
        )
        .with_derivative(move |t| {
            (c * t).exp() * (c * (gamma * t).sin() + gamma * (gamma * t).cos())
        })
        .with_second_derivative(move |t| {
            (c * t).exp()
                * ((c * c - gamma * gamma) * (gamma * t).sin()
                    + 2.0 * c * gamma * (gamma * t).cos())
        })
    }

    /// `R(θ) = Σ c_i θ^i`.
    pub fn polynomial(coeffs: Vec<f64>) -> Self {
        let label = format!("series({})", coeffs.len());
        let c0 = Arc::new(coeffs);
        let (c1, c2) = (c0.clone(), c0.clone());
        InclinationCurve::new(label, AngleInterval::unbounded(), move |t| horner(&c0, t, 0))
            .with_derivative(move |t| horner(&c1, t, 1))
            .with_second_derivative(move |t| horner(&c2, t, 2))
    }
}

/// `order`-th derivative of `Σ c_i t^i` by Horner's scheme.
fn horner(c: &[f64], t: f64, order: usize) -> f64 {
    let mut acc = 0.0;
    for (i, &ci) in c.iter().enumerate().skip(order).rev() {
        let mut falling = 1.0;
        for j in 0..order {
            falling *= (i - j) as f64;
        }
        acc = acc * t + ci * falling;
    }
    acc
}

fn five_point(f: &(dyn Fn(f64) -> f64 + Send + Sync), t: f64) -> f64 {
    let h = 1e-5 * t.abs().max(1.0);
    (-f(t + 2.0 * h) + 8.0 * f(t + h) - 8.0 * f(t - h) + f(t - 2.0 * h)) / (12.0 * h)
}

/// One sample of a reconstructed curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameSample {
    pub theta: f64,
    pub position: PlanePoint,
    pub tangent: PlanePoint,
    pub normal: PlanePoint,
    pub radius: f64,
    /// Signed natural parameter, `ds = R dθ`.
    pub arclength: f64,
}

impl FrameSample {
    pub fn new(theta: f64, position: PlanePoint, radius: f64, arclength: f64) -> Self {
        let tangent = PlanePoint::from_angle(theta);
        FrameSample {
            theta,
            position,
            tangent,
            normal: tangent.perp(),
            radius,
            arclength,
        }
    }
}

/// Placement of the first reconstructed sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Anchor {
    pub origin: PlanePoint,
    /// Rotation of the whole curve; shifts every inclination by this angle.
    pub rotation: f64,
}

impl Default for Anchor {
    fn default() -> Self {
        Anchor {
            origin: PlanePoint::ORIGIN,
            rotation: 0.0,
        }
    }
}

impl Anchor {
    pub fn at(origin: PlanePoint) -> Self {
        Anchor {
            origin,
            rotation: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconstructOptions {
    pub anchor: Anchor,
    pub tolerance: f64,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        ReconstructOptions {
            anchor: Anchor::default(),
            tolerance: quad::DEFAULT_TOLERANCE,
        }
    }
}

/// Reconstructs positions and arclength on the uniform grid of `interval`,
/// anchored at the origin.
pub fn reconstruct(curve: &InclinationCurve, interval: &AngleInterval) -> Result<Vec<FrameSample>> {
    reconstruct_with(curve, interval, &ReconstructOptions::default())
}

pub fn reconstruct_with(
    curve: &InclinationCurve,
    interval: &AngleInterval,
    options: &ReconstructOptions,
) -> Result<Vec<FrameSample>> {
    let interval = curve.clip_interval(interval)?;
    let grid = interval.grid();
    reconstruct_on_grid(curve, &grid, options)
}

/// Reconstruction on an arbitrary increasing grid (no domain checks).
pub fn reconstruct_on_grid(
    curve: &InclinationCurve,
    grid: &[f64],
    options: &ReconstructOptions,
) -> Result<Vec<FrameSample>> {
    let integrand = |t: f64| {
        let r = curve.radius(t);
        let (s, c) = t.sin_cos();
        [r * c, r * s, r]
    };
    let rot = options.anchor.rotation;
    let mut out = Vec::with_capacity(grid.len());
    let mut acc = [0.0f64; 3];
    for (i, &t) in grid.iter().enumerate() {
        if i > 0 {
            let d = quad::integrate(integrand, grid[i - 1], t, options.tolerance)?;
            for j in 0..3 {
                acc[j] += d[j];
            }
        }
        let r = curve.radius(t);
        if !r.is_finite() {
            return Err(Error::Evaluation { theta: t });
        }
        let local = PlanePoint::new(acc[0], acc[1]);
        let position = options.anchor.origin + local.rotate(rot);
        out.push(FrameSample::new(t + rot, position, r, acc[2]));
    }
    Ok(out)
}

/// Result of scanning R(θ) for zeros.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CuspScan {
    /// Angles where R changes sign, strictly inside the interval.
    pub cusps: Vec<f64>,
    /// Angles where R touches zero without changing sign.
    pub flat_points: Vec<f64>,
}

/// Locates the sign changes of R on the grid of `interval` and refines them by
/// bisection. Zeros that do not change sign are reported as flat points.
pub fn find_cusps(curve: &InclinationCurve, interval: &AngleInterval) -> Result<CuspScan> {
    let interval = curve.clip_interval(interval)?;
    let grid = interval.grid();
    let vals: Vec<f64> = grid.iter().map(|&t| curve.radius(t)).collect();
    if let Some((i, _)) = vals.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::Evaluation { theta: grid[i] });
    }
    let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let n = grid.len();
    let mut scan = CuspScan::default();
    let f = |t: f64| curve.radius(t);

    let mut i = 0;
    while i + 1 < n {
        let (a, b) = (vals[i], vals[i + 1]);
        if a != 0.0 && b != 0.0 && a.signum() != b.signum() {
            scan.cusps.push(bisect(&f, grid[i], grid[i + 1], a));
        } else if b == 0.0 && i + 2 < n {
            // zero exactly on a node: compare the neighbours
            let c = vals[i + 2];
            if a != 0.0 && c != 0.0 {
                if a.signum() != c.signum() {
                    scan.cusps.push(grid[i + 1]);
                } else {
                    scan.flat_points.push(grid[i + 1]);
                }
                i += 1;
            }
        }
        i += 1;
    }

    // touching zeros between nodes: local minima of |R| that come close to zero
    for i in 1..n.saturating_sub(1) {
        let (a, b, c) = (vals[i - 1], vals[i], vals[i + 1]);
        if b == 0.0 || a == 0.0 || c == 0.0 {
            continue;
        }
        if a.signum() == b.signum() && b.signum() == c.signum() && b.abs() <= a.abs() && b.abs() <= c.abs() {
            let (t, v) = golden_min_abs(&f, grid[i - 1], grid[i + 1]);
            if v <= 1e-8 * scale.max(f64::MIN_POSITIVE) {
                scan.flat_points.push(t);
            }
        }
    }
    scan.flat_points.sort_by(f64::total_cmp);
    Ok(scan)
}

fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, f_lo: f64) -> f64 {
    let s_lo = f_lo.signum();
    while hi - lo > CUSP_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            return mid;
        }
        if v.signum() == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn golden_min_abs(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let mut fc = f(c).abs();
    let mut fd = f(d).abs();
    for _ in 0..200 {
        if b - a < 1e-14 * (1.0 + a.abs()) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c).abs();
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d).abs();
        }
    }
    let t = 0.5 * (a + b);
    (t, f(t).abs())
}

/// Largest deviation `|ΔT/Δs − κN|` over interior samples, using central
/// differences in θ.
pub fn frenet_residual(samples: &[FrameSample]) -> Result<f64> {
    if samples.len() < 3 {
        return Err(Error::DegenerateSampling(format!(
            "need at least 3 samples, got {}",
            samples.len()
        )));
    }
    for w in samples.windows(2) {
        if w[0].arclength == w[1].arclength {
            return Err(Error::DegenerateSampling(format!(
                "duplicate arclength {} at theta = {}",
                w[0].arclength, w[1].theta
            )));
        }
    }
    let mut worst: f64 = 0.0;
    for w in samples.windows(3) {
        let ds = w[2].arclength - w[0].arclength;
        if ds == 0.0 {
            return Err(Error::DegenerateSampling(format!(
                "zero arclength increment around theta = {}",
                w[1].theta
            )));
        }
        let dt = (w[2].tangent - w[0].tangent) * (1.0 / ds);
        let kn = w[1].normal * (1.0 / w[1].radius);
        worst = worst.max((dt - kn).norm());
    }
    Ok(worst)
}

pub const SAMPLE_CSV_HEADER: &str = "theta,x,y,R,s";

/// 17 significant digits, round-trips through `str::parse::<f64>`.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes samples as `theta,x,y,R,s`, LF line endings.
pub fn samples_to_csv(samples: &[FrameSample]) -> String {
    let mut out = String::with_capacity(samples.len() * 110);
    out.push_str(SAMPLE_CSV_HEADER);
    out.push('\n');
    for s in samples {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_num(s.theta),
            fmt_num(s.position.x),
            fmt_num(s.position.y),
            fmt_num(s.radius),
            fmt_num(s.arclength)
        ));
    }
    out
}

/// Parses the output of [`samples_to_csv`].
pub fn samples_from_csv(text: &str) -> Result<Vec<FrameSample>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == SAMPLE_CSV_HEADER => {}
        other => {
            return Err(Error::Parse(format!(
                "expected header `{SAMPLE_CSV_HEADER}`, found {other:?}"
            )))
        }
    }
    let mut out = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<f64> = line
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 2)))?;
        if fields.len() != 5 {
            return Err(Error::Parse(format!(
                "line {}: expected 5 fields, found {}",
                lineno + 2,
                fields.len()
            )));
        }
        out.push(FrameSample::new(
            fields[0],
            PlanePoint::new(fields[1], fields[2]),
            fields[3],
            fields[4],
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn iv(lo: f64, hi: f64, n: usize) -> AngleInterval {
        AngleInterval::new(lo, hi, n).unwrap()
    }

    #[test]
    fn interval_validation() {
        assert!(AngleInterval::new(1.0, 1.0, 10).is_err());
        assert!(AngleInterval::new(0.0, 1.0, 1).is_err());
        let g = iv(0.0, 1.0, 5).grid();
        assert_eq!(g, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn unit_circle_closes() {
        let s = reconstruct(&InclinationCurve::circle(1.0), &iv(0.0, 2.0 * PI, 33)).unwrap();
        for f in &s {
            let (x, y) = (f.theta.sin(), 1.0 - f.theta.cos());
            assert!(f.position.distance(PlanePoint::new(x, y)) < 1e-10);
        }
        assert!(s[0].position.distance(s.last().unwrap().position) < 1e-9);
        assert!((s.last().unwrap().arclength - 2.0 * PI).abs() < 1e-10);
    }

    #[test]
    fn cycloid_matches_antiderivative() {
        let s = reconstruct(&InclinationCurve::cycloid(), &iv(0.0, PI, 50)).unwrap();
        for f in &s {
            let t = f.theta;
            let x = t.sin().powi(2) / 2.0;
            let y = t / 2.0 - (2.0 * t).sin() / 4.0;
            assert!(f.position.distance(PlanePoint::new(x, y)) < 1e-10, "{t}");
        }
    }

    #[test]
    fn exponential_radius_at_one() {
        let s = reconstruct(&InclinationCurve::log_spiral(1.0, 1.0), &iv(0.0, 1.0, 11)).unwrap();
        let e = 1f64.exp();
        let x = e / 2.0 * (1f64.cos() + 1f64.sin()) - 0.5;
        let y = e / 2.0 * (1f64.sin() - 1f64.cos()) + 0.5;
        assert!(s.last().unwrap().position.distance(PlanePoint::new(x, y)) < 1e-9);
    }

    #[test]
    fn frame_is_orthonormal() {
        let s = reconstruct(&InclinationCurve::puiseux(0.2, 3.0), &iv(-2.0, 2.0, 101)).unwrap();
        for f in s {
            assert!(f.tangent.dot(f.normal).abs() < 1e-12);
            assert!((f.tangent.norm() - 1.0).abs() < 1e-12);
            assert!((f.normal.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn pole_inside_interval_is_rejected() {
        let c = InclinationCurve::new("p", AngleInterval::unbounded(), |t: f64| 1.0 / t.sin().powi(3))
            .with_poles(vec![0.0, PI]);
        match reconstruct(&c, &iv(-0.5, 0.5, 10)) {
            Err(Error::Pole { theta }) => assert_eq!(theta, 0.0),
            other => panic!("{other:?}"),
        }
        // touching a pole at an endpoint clips by the guard band
        let s = reconstruct(&c, &iv(0.0, 1.0, 10)).unwrap();
        assert!((s[0].theta - POLE_GUARD).abs() < 1e-18);
    }

    #[test]
    fn non_finite_radius_is_an_evaluation_error() {
        let c = InclinationCurve::new("bad", AngleInterval::unbounded(), |t: f64| if t > 0.5 { f64::NAN } else { 1.0 });
        assert!(matches!(reconstruct(&c, &iv(0.0, 1.0, 5)), Err(Error::Evaluation { .. })));
    }

    #[test]
    fn sine_cusps() {
        let scan = find_cusps(&InclinationCurve::cycloid(), &iv(-1.0, 4.0, 200)).unwrap();
        assert_eq!(scan.cusps.len(), 2);
        assert!(scan.cusps[0].abs() < 1e-12);
        assert!((scan.cusps[1] - PI).abs() < 1e-12);
        assert!(scan.flat_points.is_empty());
        let none = find_cusps(&InclinationCurve::circle(1.0), &iv(0.0, 10.0, 100)).unwrap();
        assert!(none.cusps.is_empty());
    }

    #[test]
    fn damped_triple_sine_cusps() {
        let c = InclinationCurve::new("e^{0.2t} sin 3t", AngleInterval::unbounded(), |t: f64| {
            (0.2 * t).exp() * (3.0 * t).sin()
        });
        let scan = find_cusps(&c, &iv(0.0, 2.0 * PI, 500)).unwrap();
        let expected: Vec<f64> = (1..6).map(|n| n as f64 * PI / 3.0).collect();
        assert_eq!(scan.cusps.len(), expected.len());
        for (a, b) in scan.cusps.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-11, "{a} vs {b}");
        }
    }

    #[test]
    fn touching_zero_is_flat_not_cusp() {
        let c = InclinationCurve::new("sin^2", AngleInterval::unbounded(), |t: f64| t.sin().powi(2));
        let scan = find_cusps(&c, &iv(1.0, 5.0, 100)).unwrap();
        assert!(scan.cusps.is_empty());
        assert_eq!(scan.flat_points.len(), 1);
        assert!((scan.flat_points[0] - PI).abs() < 1e-6);
    }

    #[test]
    fn velocity_reverses_at_cusps() {
        let curve = InclinationCurve::puiseux(0.2, 3.0);
        let scan = find_cusps(&curve, &iv(0.1, 6.0, 300)).unwrap();
        assert!(!scan.cusps.is_empty());
        for &t in &scan.cusps {
            let d = 1e-3;
            let grid = [t - d, t, t + d];
            let s = reconstruct_on_grid(&curve, &grid, &ReconstructOptions::default()).unwrap();
            let a = s[1].position - s[0].position;
            let b = s[2].position - s[1].position;
            assert!(a.dot(b) < 0.0);
        }
    }

    #[test]
    fn frenet_residuals() {
        let s = reconstruct(&InclinationCurve::circle(1.0), &iv(0.0, 2.0 * PI, 1000)).unwrap();
        assert!(frenet_residual(&s).unwrap() < 1e-4);
        let s = reconstruct(&InclinationCurve::cycloid(), &iv(0.1, PI - 0.1, 2000)).unwrap();
        assert!(frenet_residual(&s).unwrap() < 1e-3);
        assert!(matches!(
            frenet_residual(&s[..2]),
            Err(Error::DegenerateSampling(_))
        ));
        let mut dup = s[..5].to_vec();
        dup[2].arclength = dup[1].arclength;
        assert!(matches!(frenet_residual(&dup), Err(Error::DegenerateSampling(_))));
    }

    #[test]
    fn finite_difference_fallback_is_fourth_order() {
        let c = InclinationCurve::new("e^{0.7t}", AngleInterval::unbounded(), |t: f64| (0.7 * t).exp());
        for t in [-2.0f64, 0.0, 0.5, 3.0] {
            let exact = 0.7 * (0.7 * t).exp();
            assert!((c.radius_derivative(t) - exact).abs() < 1e-9 * exact.max(1.0));
        }
    }

    #[test]
    fn rotated_anchor_rotates_positions() {
        let curve = InclinationCurve::puiseux(0.1, 2.0);
        let interval = iv(0.0, 3.0, 40);
        let base = reconstruct(&curve, &interval).unwrap();
        let psi = 0.83;
        let origin = PlanePoint::new(2.0, -1.0);
        let opts = ReconstructOptions {
            anchor: Anchor { origin, rotation: psi },
            ..Default::default()
        };
        let rot = reconstruct_with(&curve, &interval, &opts).unwrap();
        for (a, b) in base.iter().zip(&rot) {
            let expect = origin + a.position.rotate(psi);
            assert!(expect.distance(b.position) < 1e-12);
            assert!((b.theta - a.theta - psi).abs() < 1e-15);
        }
    }

    #[test]
    fn csv_round_trip_is_byte_identical() {
        let s = reconstruct(&InclinationCurve::cycloid(), &iv(0.0, PI, 7)).unwrap();
        let text = samples_to_csv(&s);
        assert!(text.starts_with("theta,x,y,R,s\n"));
        let again = samples_to_csv(&samples_from_csv(&text).unwrap());
        assert_eq!(text, again);
        assert!(samples_from_csv("a,b\n1,2\n").is_err());
    }
}
