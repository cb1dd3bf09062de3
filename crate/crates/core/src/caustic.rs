//! Conormal caustics: envelopes of rays leaving a curve at a tilt angle φ(θ)
//! from its normal.
//!
//! The moving coframe is `τ = cos φ T − sin φ N`, `ν = sin φ T + cos φ N` with
//! coframe curvature `χ = (1 − φ′)/R`. Rays run along ν and touch the caustic at
//! `c = r + (cos φ / χ) ν`, where the caustic has inclination `θ₁ = θ + π/2 − φ`
//! and signed radius
//!
//! ```text
//! R₁ = [((1 − 2φ′) sin φ + φ″ cos φ / (1 − φ′)) R + cos φ R′] / (1 − φ′)²
//! ```

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::PlanePoint;
use crate::inclination::{
    self, fmt_num, AngleInterval, FrameSample, InclinationCurve, ReconstructOptions, ScalarFn,
    POLE_GUARD,
};

/// `|1 − φ′|` below this is treated as a flat caustic.
pub const FLAT_GUARD: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TiltKind {
    Evolute,
    Skew(f64),
    Reflection,
    Custom,
}

/// Tilt angle φ(θ) of the rays from the normal, with its first two derivatives.
#[derive(Clone)]
pub struct TiltField {
    kind: TiltKind,
    phi: ScalarFn,
    phi1: ScalarFn,
    phi2: ScalarFn,
}

impl fmt::Debug for TiltField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TiltField").field("kind", &self.kind).finish()
    }
}

impl TiltField {
    /// Rays along the normal; the caustic is the evolute.
    pub fn evolute() -> Self {
        TiltField::constant(TiltKind::Evolute, 0.0)
    }

    /// Rays at the constant angle `π/2 − φ₀` to the curve.
    pub fn skew(phi0: f64) -> Self {
        TiltField::constant(TiltKind::Skew(phi0), phi0)
    }

    /// Horizontal rays (travelling in +x) reflected by the curve: `φ = π/2 − θ`.
    pub fn reflection() -> Self {
        TiltField {
            kind: TiltKind::Reflection,
            phi: Arc::new(|t| FRAC_PI_2 - t),
            phi1: Arc::new(|_| -1.0),
            phi2: Arc::new(|_| 0.0),
        }
    }

    pub fn custom(
        phi: impl Fn(f64) -> f64 + Send + Sync + 'static,
        phi1: impl Fn(f64) -> f64 + Send + Sync + 'static,
        phi2: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        TiltField {
            kind: TiltKind::Custom,
            phi: Arc::new(phi),
            phi1: Arc::new(phi1),
            phi2: Arc::new(phi2),
        }
    }

    fn constant(kind: TiltKind, phi0: f64) -> Self {
        TiltField {
            kind,
            phi: Arc::new(move |_| phi0),
            phi1: Arc::new(|_| 0.0),
            phi2: Arc::new(|_| 0.0),
        }
    }

    pub fn kind(&self) -> TiltKind {
        self.kind
    }

    pub fn phi(&self, theta: f64) -> f64 {
        (self.phi)(theta)
    }

    pub fn phi1(&self, theta: f64) -> f64 {
        (self.phi1)(theta)
    }

    pub fn phi2(&self, theta: f64) -> f64 {
        (self.phi2)(theta)
    }

    /// Ray direction ν for inclination `theta`.
    pub fn ray_direction(&self, theta: f64) -> PlanePoint {
        let t = PlanePoint::from_angle(theta);
        let n = t.perp();
        let (s, c) = self.phi(theta).sin_cos();
        t * s + n * c
    }
}

/// The moving coframe at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoframeState {
    pub theta: f64,
    pub tau: PlanePoint,
    pub nu: PlanePoint,
    pub chi: f64,
}

pub fn coframe_at(curve: &InclinationCurve, tilt: &TiltField, theta: f64) -> Result<CoframeState> {
    let r = curve.radius(theta);
    if !r.is_finite() {
        return Err(Error::Evaluation { theta });
    }
    let phi1 = tilt.phi1(theta);
    if (1.0 - phi1).abs() < FLAT_GUARD {
        return Err(Error::FlatCaustic { theta });
    }
    if r == 0.0 {
        return Err(Error::Cusp { theta });
    }
    let t = PlanePoint::from_angle(theta);
    let n = t.perp();
    let (s, c) = tilt.phi(theta).sin_cos();
    Ok(CoframeState {
        theta,
        tau: t * c - n * s,
        nu: t * s + n * c,
        chi: (1.0 - phi1) / r,
    })
}

/// Signed radius of curvature of the caustic at the point generated from θ.
pub fn caustic_radius(r: f64, r_prime: f64, phi: f64, phi1: f64, phi2: f64) -> Result<f64> {
    let d = 1.0 - phi1;
    if d.abs() < FLAT_GUARD {
        return Err(Error::FlatCaustic { theta: f64::NAN });
    }
    let (s, c) = phi.sin_cos();
    Ok((((1.0 - 2.0 * phi1) * s + phi2 / d * c) * r + c * r_prime) / (d * d))
}

/// Caustic radius for reflected horizontal rays, `¼(3 cos θ R + sin θ R′)`.
pub fn reflection_caustic_radius(theta: f64, r: f64, r_prime: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    0.25 * (3.0 * c * r + s * r_prime)
}

/// One point of a caustic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CausticSample {
    pub source_theta: f64,
    /// Inclination θ₁ of the caustic.
    pub caustic_theta: f64,
    /// Signed radius of curvature R₁ of the caustic.
    pub caustic_radius: f64,
    pub position: PlanePoint,
    /// Length of the ray segment from the curve to the caustic.
    pub ray_length: f64,
}

/// Caustic point generated by the ray leaving `sample`. `sample` must come from
/// a reconstruction without anchor rotation so that its θ is the curve's own.
pub fn caustic_point(
    curve: &InclinationCurve,
    sample: &FrameSample,
    tilt: &TiltField,
) -> Result<CausticSample> {
    let theta = sample.theta;
    let r = sample.radius;
    if !r.is_finite() {
        return Err(Error::CausticAtInfinity { theta });
    }
    let phi = tilt.phi(theta);
    let phi1 = tilt.phi1(theta);
    let phi2 = tilt.phi2(theta);
    let d = 1.0 - phi1;
    if d.abs() < FLAT_GUARD {
        return Err(Error::CausticAtInfinity { theta });
    }
    // cos φ / χ, finite at cusps where χ is not
    let offset = phi.cos() * r / d;
    let nu = tilt.ray_direction(theta);
    let r_prime = curve.radius_derivative(theta);
    let caustic_radius = caustic_radius(r, r_prime, phi, phi1, phi2)
        .map_err(|_| Error::FlatCaustic { theta })?;
    Ok(CausticSample {
        source_theta: theta,
        caustic_theta: theta + FRAC_PI_2 - phi,
        caustic_radius,
        position: sample.position + nu * offset,
        ray_length: offset.abs(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CausticNode {
    pub index: usize,
    pub source_theta: f64,
    pub result: Result<CausticSample>,
}

/// Caustic sampled on a grid; failed nodes stay in place with their error.
#[derive(Debug, Clone, PartialEq)]
pub struct CausticCurve {
    pub source: Vec<FrameSample>,
    pub nodes: Vec<CausticNode>,
}

impl CausticCurve {
    pub fn samples(&self) -> impl Iterator<Item = &CausticSample> {
        self.nodes.iter().filter_map(|n| n.result.as_ref().ok())
    }

    pub fn positions(&self) -> Vec<PlanePoint> {
        self.samples().map(|s| s.position).collect()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CausticNode> {
        self.nodes.iter().filter(|n| n.result.is_err())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta,theta1,x,y,R1,ray_length\n");
        for node in &self.nodes {
            match &node.result {
                Ok(s) => out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    fmt_num(s.source_theta),
                    fmt_num(s.caustic_theta),
                    fmt_num(s.position.x),
                    fmt_num(s.position.y),
                    fmt_num(s.caustic_radius),
                    fmt_num(s.ray_length)
                )),
                Err(_) => out.push_str(&format!("{},NaN,NaN,NaN,NaN,NaN\n", fmt_num(node.source_theta))),
            }
        }
        out
    }
}

pub fn caustic_curve(
    curve: &InclinationCurve,
    tilt: &TiltField,
    interval: &AngleInterval,
) -> Result<CausticCurve> {
    caustic_curve_with(curve, tilt, interval, &ReconstructOptions::default())
}

pub fn caustic_curve_with(
    curve: &InclinationCurve,
    tilt: &TiltField,
    interval: &AngleInterval,
    options: &ReconstructOptions,
) -> Result<CausticCurve> {
    if options.anchor.rotation != 0.0 {
        return Err(Error::InvalidParameter(
            "caustics are computed in the curve's own frame; use a translation-only anchor".into(),
        ));
    }
    let source = inclination::reconstruct_with(curve, interval, options)?;
    let nodes = source
        .iter()
        .enumerate()
        .map(|(index, s)| CausticNode {
            index,
            source_theta: s.theta,
            result: caustic_point(curve, s, tilt),
        })
        .collect();
    Ok(CausticCurve { source, nodes })
}

/// Similarity of a curve and its caustic: `R₁(θ₁) = a R(±(θ₁ − β))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilaritySpec {
    pub factor_a: f64,
    pub shift_beta: f64,
    pub sign: f64,
}

impl SimilaritySpec {
    pub fn new(factor_a: f64, shift_beta: f64, sign: i32) -> Result<Self> {
        if !factor_a.is_finite() || !shift_beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "similarity factor and shift must be finite, got a = {factor_a}, beta = {shift_beta}"
            )));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidParameter(format!("sign must be +1 or -1, got {sign}")));
        }
        Ok(SimilaritySpec {
            factor_a,
            shift_beta,
            sign: sign as f64,
        })
    }

    /// Skew-evolute form `cos φ₀ R′ + sin φ₀ R = a R(±(θ − α))`; the equivalent
    /// shift is `β = α + π/2 − φ₀`.
    pub fn from_skew_alpha(factor_a: f64, alpha: f64, phi0: f64, sign: i32) -> Result<Self> {
        SimilaritySpec::new(factor_a, alpha + FRAC_PI_2 - phi0, sign)
    }

    /// Argument of R on the right-hand side for a given θ.
    pub fn argument(&self, theta: f64, phi: f64) -> f64 {
        self.sign * (theta + FRAC_PI_2 - phi - self.shift_beta)
    }
}

/// `sup_θ |R₁(θ) − a R(±(θ + π/2 − φ − β))|` over the grid of `interval`.
pub fn similarity_residual(
    curve: &InclinationCurve,
    tilt: &TiltField,
    spec: &SimilaritySpec,
    interval: &AngleInterval,
) -> Result<f64> {
    let interval = curve.clip_interval(interval)?;
    let domain = curve.domain();
    let mut worst: f64 = 0.0;
    for theta in interval.grid() {
        let phi = tilt.phi(theta);
        let lhs = caustic_radius(
            curve.radius(theta),
            curve.radius_derivative(theta),
            phi,
            tilt.phi1(theta),
            tilt.phi2(theta),
        )
        .map_err(|_| Error::FlatCaustic { theta })?;
        let arg = spec.argument(theta, phi);
        let near_pole = curve.poles().iter().any(|&p| (p - arg).abs() < POLE_GUARD);
        if !domain.contains(arg) || near_pole {
            return Err(Error::ArgumentOutsideDomain { theta, argument: arg });
        }
        let rhs = spec.factor_a * curve.radius(arg);
        let d = (lhs - rhs).abs();
        if !d.is_finite() {
            return Err(Error::Evaluation { theta });
        }
        worst = worst.max(d);
    }
    Ok(worst)
}
