//! Curves similar to their skew-evolutes.
//!
//! With constant tilt φ₀ the skew-evolute has radius `cos φ₀ R′ + sin φ₀ R`, and
//! similarity reads
//!
//! ```text
//! cos φ₀ R′(θ) + sin φ₀ R(θ) = a R(±(θ − α))
//! ```
//!
//! Three cases are built here: α = 0 with the `+` sign (logarithmic spirals),
//! the `−` sign (inverse position, trigonometric or hyperbolic solutions) and
//! the `+` sign with α ≠ 0 (a delay equation solved by exponentials whose
//! exponents come from the Lambert W function).

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::caustic::{similarity_residual, SimilaritySpec, TiltField};
use crate::error::{Error, Result};
use crate::geometry::PlanePoint;
use crate::inclination::{self, AngleInterval, InclinationCurve, ReconstructOptions};
use crate::literal::parse_real;
use crate::specfun::lambert_w;

/// Relative tolerance deciding `ω² = 0` in the inverse-position case.
pub const INVOLUTE_TOLERANCE: f64 = 1e-12;

/// Tolerance on the characteristic-equation residual, relative to `max(1, |a/cos φ₀|)`.
pub const ROOT_TOLERANCE: f64 = 1e-10;

fn check_tilt(phi0: f64) -> Result<()> {
    if !phi0.is_finite() || phi0.abs() >= FRAC_PI_2 {
        return Err(Error::InvalidParameter(format!(
            "tilt phi0 = {phi0} must satisfy |phi0| < pi/2"
        )));
    }
    Ok(())
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} = {v} is not finite")))
    }
}

/// `R(θ) = A e^{((a − sin φ₀)/cos φ₀) θ}`; a circle when `a = sin φ₀`.
pub fn point_by_point_curve(scale: f64, a: f64, phi0: f64) -> Result<InclinationCurve> {
    check_tilt(phi0)?;
    check_finite("a", a)?;
    check_finite("A", scale)?;
    if scale == 0.0 {
        return Err(Error::DegenerateCurve("A = 0 gives R = 0".into()));
    }
    let b = (a - phi0.sin()) / phi0.cos();
    if b == 0.0 {
        return Ok(InclinationCurve::circle(scale));
    }
    Ok(InclinationCurve::log_spiral(scale, b))
}

/// Shape of the inverse-position solutions, from `ω² = (a² − sin²φ₀)/cos²φ₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InverseShape {
    /// `A cos ωθ + B sin ωθ`
    Trigonometric { omega: f64 },
    /// `A + Bθ`, involutes of a circle
    Involute,
    /// `A cosh bθ + B sinh bθ`
    Hyperbolic { b: f64 },
}

pub fn inverse_shape(a: f64, phi0: f64) -> Result<InverseShape> {
    check_tilt(phi0)?;
    check_finite("a", a)?;
    let (s, c) = phi0.sin_cos();
    let diff = a * a - s * s;
    let scale = (a * a).max(s * s);
    if diff.abs() <= INVOLUTE_TOLERANCE * scale || scale == 0.0 {
        return Ok(InverseShape::Involute);
    }
    let w = (diff.abs()).sqrt() / c;
    Ok(if diff > 0.0 {
        InverseShape::Trigonometric { omega: w }
    } else {
        InverseShape::Hyperbolic { b: w }
    })
}

/// `ω²` of the inverse-position equation `R″ + ω² R = 0` (zero for involutes).
pub fn inverse_omega_squared(a: f64, phi0: f64) -> Result<f64> {
    Ok(match inverse_shape(a, phi0)? {
        InverseShape::Trigonometric { omega } => omega * omega,
        InverseShape::Involute => 0.0,
        InverseShape::Hyperbolic { b } => -b * b,
    })
}

/// General solution of the inverse-position case with free constants `A`, `B`.
pub fn inverse_position_curve(ca: f64, cb: f64, a: f64, phi0: f64) -> Result<InclinationCurve> {
    check_finite("A", ca)?;
    check_finite("B", cb)?;
    let shape = inverse_shape(a, phi0)?;
    if ca == 0.0 && cb == 0.0 {
        return Err(Error::DegenerateCurve("A = B = 0 gives R = 0".into()));
    }
    let label = format!("inverse_position({ca},{cb};a={a},phi0={phi0})");
    let dom = AngleInterval::unbounded();
    Ok(match shape {
        InverseShape::Trigonometric { omega: w } => {
            InclinationCurve::new(label, dom, move |t| ca * (w * t).cos() + cb * (w * t).sin())
                .with_derivative(move |t| w * (-ca * (w * t).sin() + cb * (w * t).cos()))
                .with_second_derivative(move |t| -w * w * (ca * (w * t).cos() + cb * (w * t).sin()))
        }
        InverseShape::Involute => InclinationCurve::new(label, dom, move |t| ca + cb * t)
            .with_derivative(move |_| cb)
            .with_second_derivative(|_| 0.0),
        InverseShape::Hyperbolic { b } => {
            InclinationCurve::new(label, dom, move |t| ca * (b * t).cosh() + cb * (b * t).sinh())
                .with_derivative(move |t| b * (ca * (b * t).sinh() + cb * (b * t).cosh()))
                .with_second_derivative(move |t| b * b * (ca * (b * t).cosh() + cb * (b * t).sinh()))
        }
    })
}

fn inverse_identity_holds(ca: f64, cb: f64, a: f64, phi0: f64, alpha: f64) -> bool {
    let Ok(curve) = inverse_position_curve(ca, cb, a, phi0) else {
        return false;
    };
    let (s, c) = phi0.sin_cos();
    let scale = ca.abs().max(cb.abs()) * (1.0 + a.abs()) * (1.0 + alpha.abs());
    [-1.0, 0.0, 0.7, 1.3].iter().all(|&t| {
        let lhs = c * curve.radius_derivative(t) + s * curve.radius(t);
        let rhs = a * curve.radius(alpha - t);
        (lhs - rhs).abs() <= 1e-9 * scale
    })
}

/// The delay α for which the inverse-position curve with constants `A`, `B`
/// satisfies `cos φ₀ R′ + sin φ₀ R = a R(α − θ)`, if any.
///
/// Trigonometric curves always have one (defined modulo `2π/ω`, reported in
/// `(−π/ω, π/ω]`); hyperbolic curves and involutes only for some constants.
pub fn implied_alpha(ca: f64, cb: f64, a: f64, phi0: f64) -> Result<Option<f64>> {
    let shape = inverse_shape(a, phi0)?;
    if a == 0.0 || (ca == 0.0 && cb == 0.0) {
        return Ok(None);
    }
    let (s, c) = phi0.sin_cos();
    let candidate = match shape {
        InverseShape::Trigonometric { omega: w } => {
            let p = (cb * w * c + ca * s) / a;
            let q = (-ca * w * c + cb * s) / a;
            let n = ca * ca + cb * cb;
            let cos = (ca * p - cb * q) / n;
            let sin = (cb * p + ca * q) / n;
            Some(sin.atan2(cos) / w)
        }
        InverseShape::Hyperbolic { b } => {
            let p = (cb * b * c + ca * s) / a;
            let q = (ca * b * c + cb * s) / a;
            // [[A, B], [−B, −A]] (cosh bα, sinh bα) = (p, q)
            let det = cb * cb - ca * ca;
            if det == 0.0 {
                None
            } else {
                let ch = (-ca * p - cb * q) / det;
                let sh = (cb * p + ca * q) / det;
                if ch > 0.0 && (sh / ch).abs() < 1.0 {
                    Some((sh / ch).atanh() / b)
                } else {
                    None
                }
            }
        }
        InverseShape::Involute => {
            if cb != 0.0 && s != 0.0 {
                Some(-(c * cb + 2.0 * s * ca) / (s * cb))
            } else if cb == 0.0 {
                // constant radius: any delay works when a = sin φ₀
                Some(0.0)
            } else {
                None
            }
        }
    };
    Ok(candidate.filter(|&al| al.is_finite() && inverse_identity_holds(ca, cb, a, phi0, al)))
}

/// Constants `(A, B)` of an inverse-position curve with prescribed delay α,
/// normalized to `A² + B² = 1`.
pub fn inverse_position_coefficients(a: f64, phi0: f64, alpha: f64) -> Result<(f64, f64)> {
    check_finite("alpha", alpha)?;
    let shape = inverse_shape(a, phi0)?;
    if a == 0.0 {
        return Err(Error::InvalidParameter("a = 0 leaves the delay undetermined".into()));
    }
    let (s, c) = phi0.sin_cos();
    // rows of the homogeneous system M (A, B) = 0
    let rows = match shape {
        InverseShape::Trigonometric { omega: w } => {
            let (sn, cs) = (w * alpha).sin_cos();
            [[s / a - cs, w * c / a - sn], [-w * c / a - sn, s / a + cs]]
        }
        InverseShape::Hyperbolic { b } => {
            let (ch, sh) = ((b * alpha).cosh(), (b * alpha).sinh());
            [[s / a - ch, b * c / a - sh], [b * c / a + sh, s / a + ch]]
        }
        InverseShape::Involute => {
            // θ terms: (s + a) B = 0; constants: (s − a) A + (c − aα) B = 0
            [[s - a, c - a * alpha], [0.0, s + a]]
        }
    };
    let pick = if rows[0][0].hypot(rows[0][1]) >= rows[1][0].hypot(rows[1][1]) {
        rows[0]
    } else {
        rows[1]
    };
    let (ca, cb) = if pick[0] == 0.0 && pick[1] == 0.0 {
        (1.0, 0.0)
    } else {
        (-pick[1], pick[0])
    };
    let n = ca.hypot(cb);
    let (ca, cb) = (ca / n, cb / n);
    if !inverse_identity_holds(ca, cb, a, phi0, alpha) {
        return Err(Error::InvalidParameter(format!(
            "no inverse-position curve with a = {a}, phi0 = {phi0} has delay {alpha}"
        )));
    }
    Ok((ca, cb))
}

/// Which argument the right-hand side of the similarity relation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkewCase {
    /// `a R(θ)`
    PointByPoint,
    /// `a R(α − θ)`
    InversePosition,
    /// `a R(θ − α)`
    Delay,
}

impl SkewCase {
    pub fn name(self) -> &'static str {
        match self {
            SkewCase::PointByPoint => "point_by_point",
            SkewCase::InversePosition => "inverse_position",
            SkewCase::Delay => "delay",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "point_by_point" => Ok(SkewCase::PointByPoint),
            "inverse_position" => Ok(SkewCase::InversePosition),
            "delay" => Ok(SkewCase::Delay),
            other => Err(Error::Parse(format!(
                "unknown case '{other}' (expected point_by_point, inverse_position or delay)"
            ))),
        }
    }
}

/// `sup |cos φ₀ R′ + sin φ₀ R − a R(arg)|` over the grid of `interval`.
pub fn skew_residual(
    curve: &InclinationCurve,
    phi0: f64,
    a: f64,
    case: SkewCase,
    alpha: f64,
    interval: &AngleInterval,
) -> Result<f64> {
    let (alpha, sign) = match case {
        SkewCase::PointByPoint => (0.0, 1),
        SkewCase::InversePosition => (alpha, -1),
        SkewCase::Delay => (alpha, 1),
    };
    let spec = SimilaritySpec::from_skew_alpha(a, alpha, phi0, sign)?;
    similarity_residual(curve, &TiltField::skew(phi0), &spec, interval)
}

/// `sup |R″ + ω² R|` with the analytic (or finite-difference) second derivative.
pub fn inverse_ode_residual(
    curve: &InclinationCurve,
    a: f64,
    phi0: f64,
    interval: &AngleInterval,
) -> Result<f64> {
    let w2 = inverse_omega_squared(a, phi0)?;
    let interval = curve.clip_interval(interval)?;
    Ok(interval
        .grid()
        .into_iter()
        .map(|t| (curve.radius_second_derivative(t) + w2 * curve.radius(t)).abs())
        .fold(0.0, f64::max))
}

/// A root λ of `(λ + tan φ₀) e^{αλ} = a / cos φ₀` from Lambert branch `index_k`.
/// A non-real root stands for the conjugate pair λ, λ̄.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicRoot {
    pub index_k: i64,
    pub lambda: Complex64,
}

impl CharacteristicRoot {
    pub fn is_real(&self) -> bool {
        self.lambda.im == 0.0
    }

    pub fn residual(&self, a: f64, alpha: f64, phi0: f64) -> f64 {
        let (s, c) = phi0.sin_cos();
        ((self.lambda + s / c) * (self.lambda * alpha).exp() - a / c).norm()
    }
}

/// Argument `α a e^{α tan φ₀} / cos φ₀` of the Lambert equation `z e^z = rhs`.
pub fn lambert_rhs(a: f64, alpha: f64, phi0: f64) -> f64 {
    alpha * a * (alpha * phi0.tan()).exp() / phi0.cos()
}

/// Lambert branches that are real for a real right-hand side.
pub fn real_branches(rhs: f64) -> Vec<i64> {
    let branch_point = -(-1.0f64).exp();
    if rhs >= 0.0 {
        vec![0]
    } else if rhs >= branch_point {
        vec![0, -1]
    } else {
        Vec::new()
    }
}

fn check_delay(a: f64, alpha: f64, phi0: f64) -> Result<()> {
    check_tilt(phi0)?;
    check_finite("a", a)?;
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "delay alpha = {alpha} must be positive; normalize advance problems first"
        )));
    }
    Ok(())
}

fn root_from_branch(a: f64, alpha: f64, phi0: f64, k: i64) -> Result<CharacteristicRoot> {
    let rhs = lambert_rhs(a, alpha, phi0);
    if !rhs.is_finite() {
        return Err(Error::Numeric(format!("Lambert argument overflows for alpha = {alpha}")));
    }
    let w = lambert_w(k, Complex64::new(rhs, 0.0))?;
    let root = CharacteristicRoot {
        index_k: k,
        lambda: w / alpha - phi0.tan(),
    };
    let tol = ROOT_TOLERANCE * (a / phi0.cos()).abs().max(1.0);
    let r = root.residual(a, alpha, phi0);
    if !(r <= tol) {
        return Err(Error::Numeric(format!(
            "characteristic root on branch {k} has residual {r:e}"
        )));
    }
    Ok(root)
}

/// Roots `λ_k = W_k(α a e^{α tan φ₀}/cos φ₀)/α − tan φ₀` for the requested branches.
pub fn delay_roots(a: f64, alpha: f64, phi0: f64, indices: &[i64]) -> Result<Vec<CharacteristicRoot>> {
    check_delay(a, alpha, phi0)?;
    indices
        .iter()
        .map(|&k| root_from_branch(a, alpha, phi0, k))
        .collect()
}

/// A real root from branch 0 or −1; fails when that branch is not real here.
pub fn real_delay_root(a: f64, alpha: f64, phi0: f64, branch: i64) -> Result<CharacteristicRoot> {
    check_delay(a, alpha, phi0)?;
    let available = real_branches(lambert_rhs(a, alpha, phi0));
    if !available.contains(&branch) {
        return Err(Error::BranchUnavailable {
            requested: branch,
            available,
        });
    }
    root_from_branch(a, alpha, phi0, branch)
}

/// All real roots (none, one or two).
pub fn real_delay_roots(a: f64, alpha: f64, phi0: f64) -> Result<Vec<CharacteristicRoot>> {
    check_delay(a, alpha, phi0)?;
    real_branches(lambert_rhs(a, alpha, phi0))
        .into_iter()
        .map(|k| root_from_branch(a, alpha, phi0, k))
        .collect()
}

/// Input of a skew family construction; see [`SkewFamilySpec::parse`] for the file form.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewFamilySpec {
    pub case: SkewCase,
    pub phi0: f64,
    pub factor_a: f64,
    pub alpha: f64,
    /// `(A_k, B_k)`; the first pair is `(A, B)` outside the delay case.
    pub coefficients: Vec<(f64, f64)>,
    pub root_indices: Vec<i64>,
}

impl SkewFamilySpec {
    /// Reads `key = value` lines (`#` starts a comment). Keys: `case`, `phi0`,
    /// `a`, `alpha`, `roots` (comma list of branch indices) and `coefficients`
    /// (comma list of `A:B`).
    pub fn parse(text: &str) -> Result<Self> {
        let mut case = None;
        let mut phi0 = 0.0;
        let mut factor_a = None;
        let mut alpha = 0.0;
        let mut coefficients = Vec::new();
        let mut root_indices = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", lineno + 1)))?;
            let value = value.trim();
            match key.trim() {
                "case" => case = Some(SkewCase::parse(value)?),
                "phi0" => phi0 = parse_real(value)?,
                "a" => factor_a = Some(parse_real(value)?),
                "alpha" => alpha = parse_real(value)?,
                "roots" => {
                    root_indices = value
                        .split(',')
                        .filter(|t| !t.trim().is_empty())
                        .map(|t| {
                            t.trim()
                                .parse::<i64>()
                                .map_err(|_| Error::Parse(format!("bad branch index '{}'", t.trim())))
                        })
                        .collect::<Result<_>>()?
                }
                "coefficients" => {
                    coefficients = value
                        .split(',')
                        .filter(|t| !t.trim().is_empty())
                        .map(|t| match t.split_once(':') {
                            Some((x, y)) => Ok((parse_real(x)?, parse_real(y)?)),
                            None => Ok((parse_real(t)?, 0.0)),
                        })
                        .collect::<Result<_>>()?
                }
                other => return Err(Error::Parse(format!("line {}: unknown key '{other}'", lineno + 1))),
            }
        }
        let spec = SkewFamilySpec {
            case: case.ok_or_else(|| Error::Parse("missing key 'case'".into()))?,
            phi0,
            factor_a: factor_a.ok_or_else(|| Error::Parse("missing key 'a'".into()))?,
            alpha,
            coefficients,
            root_indices,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        check_tilt(self.phi0)?;
        check_finite("a", self.factor_a)?;
        check_finite("alpha", self.alpha)?;
        match self.case {
            SkewCase::Delay => {
                if self.alpha == 0.0 {
                    return Err(Error::InvalidParameter("delay case needs alpha != 0".into()));
                }
                if self.coefficients.len() != self.root_indices.len() {
                    return Err(Error::Shape(format!(
                        "{} coefficient pairs for {} roots",
                        self.coefficients.len(),
                        self.root_indices.len()
                    )));
                }
            }
            _ => {
                if self.coefficients.is_empty() {
                    return Err(Error::Shape("coefficients must give at least A".into()));
                }
            }
        }
        Ok(())
    }

    /// Canonical `key = value` form, as echoed by the CLI.
    pub fn to_text(&self) -> String {
        let roots: Vec<String> = self.root_indices.iter().map(|k| k.to_string()).collect();
        let coeffs: Vec<String> = self.coefficients.iter().map(|(x, y)| format!("{x}:{y}")).collect();
        format!(
            "case = {}\nphi0 = {}\na = {}\nalpha = {}\nroots = {}\ncoefficients = {}\n",
            self.case.name(),
            self.phi0,
            self.factor_a,
            self.alpha,
            roots.join(","),
            coeffs.join(",")
        )
    }

    /// Maps an advance problem (α < 0) to a delay problem by θ → −θ, which
    /// flips the signs of α, φ₀ and a. Returns the spec and whether it changed.
    pub fn normalize_advance(&self) -> (SkewFamilySpec, bool) {
        if self.case != SkewCase::Delay || self.alpha > 0.0 {
            return (self.clone(), false);
        }
        let mut s = self.clone();
        s.alpha = -s.alpha;
        s.phi0 = -s.phi0;
        s.factor_a = -s.factor_a;
        (s, true)
    }
}

/// `R(θ) = Σ Re((A_k − i B_k) e^{λ_k θ})`, one term per root; real roots take
/// `B_k = 0`. `roots` must solve the delay equation of `spec` (α > 0).
pub fn delay_curve(spec: &SkewFamilySpec, roots: &[CharacteristicRoot]) -> Result<InclinationCurve> {
    check_delay(spec.factor_a, spec.alpha, spec.phi0)?;
    if spec.coefficients.len() != roots.len() {
        return Err(Error::Shape(format!(
            "{} coefficient pairs for {} roots",
            spec.coefficients.len(),
            roots.len()
        )));
    }
    let tol = ROOT_TOLERANCE * (spec.factor_a / spec.phi0.cos()).abs().max(1.0);
    let mut terms = Vec::new();
    for (root, &(ca, cb)) in roots.iter().zip(&spec.coefficients) {
        let r = root.residual(spec.factor_a, spec.alpha, spec.phi0);
        if !(r <= tol) {
            return Err(Error::InvalidParameter(format!(
                "root {} does not solve this delay equation (residual {r:e})",
                root.lambda
            )));
        }
        if root.is_real() && cb != 0.0 {
            return Err(Error::Shape(format!(
                "real root on branch {} takes a single coefficient, got B = {cb}",
                root.index_k
            )));
        }
        if ca != 0.0 || cb != 0.0 {
            terms.push((Complex64::new(ca, -cb), root.lambda));
        }
    }
    if terms.is_empty() {
        return Err(Error::DegenerateCurve("all coefficients vanish, R = 0".into()));
    }
    let terms = Arc::new(terms);
    let jet = move |order: i32| {
        let terms = terms.clone();
        move |t: f64| {
            terms
                .iter()
                .map(|&(w, l)| (w * l.powi(order) * (l * t).exp()).re)
                .sum::<f64>()
        }
    };
    Ok(InclinationCurve::new(
        format!("delay(a={},alpha={},phi0={})", spec.factor_a, spec.alpha, spec.phi0),
        AngleInterval::unbounded(),
        jet(0),
    )
    .with_derivative(jet(1))
    .with_second_derivative(jet(2)))
}

fn reflect(curve: InclinationCurve) -> InclinationCurve {
    let (f0, f1, f2) = (curve.clone(), curve.clone(), curve.clone());
    InclinationCurve::new(format!("{}(-theta)", curve.label()), AngleInterval::unbounded(), move |t| {
        f0.radius(-t)
    })
    .with_derivative(move |t| -f1.radius_derivative(-t))
    .with_second_derivative(move |t| f2.radius_second_derivative(-t))
}

/// A constructed skew family member.
#[derive(Debug, Clone)]
pub struct SkewFamily {
    pub spec: SkewFamilySpec,
    pub curve: InclinationCurve,
    /// Roots of the normalized delay problem (delay case only).
    pub roots: Vec<CharacteristicRoot>,
    /// The delay entering the residual check: α as given (delay), the implied α
    /// (inverse position, when it exists) or 0.
    pub alpha: Option<f64>,
    /// True when an advance problem was solved through θ → −θ.
    pub normalized: bool,
}

impl SkewFamily {
    pub fn residual(&self, interval: &AngleInterval) -> Result<f64> {
        let alpha = self.alpha.ok_or_else(|| {
            Error::InvalidParameter("no delay satisfies the inverse-position relation for these constants".into())
        })?;
        skew_residual(&self.curve, self.spec.phi0, self.spec.factor_a, self.spec.case, alpha, interval)
    }
}

pub fn build_family(spec: &SkewFamilySpec) -> Result<SkewFamily> {
    spec.validate()?;
    let (a, phi0) = (spec.factor_a, spec.phi0);
    match spec.case {
        SkewCase::PointByPoint => Ok(SkewFamily {
            spec: spec.clone(),
            curve: point_by_point_curve(spec.coefficients[0].0, a, phi0)?,
            roots: Vec::new(),
            alpha: Some(0.0),
            normalized: false,
        }),
        SkewCase::InversePosition => {
            let (ca, cb) = spec.coefficients[0];
            Ok(SkewFamily {
                spec: spec.clone(),
                curve: inverse_position_curve(ca, cb, a, phi0)?,
                roots: Vec::new(),
                alpha: implied_alpha(ca, cb, a, phi0)?,
                normalized: false,
            })
        }
        SkewCase::Delay => {
            let (norm, flipped) = spec.normalize_advance();
            let roots = delay_roots(norm.factor_a, norm.alpha, norm.phi0, &norm.root_indices)?;
            let curve = delay_curve(&norm, &roots)?;
            Ok(SkewFamily {
                spec: spec.clone(),
                curve: if flipped { reflect(curve) } else { curve },
                roots,
                alpha: Some(spec.alpha),
                normalized: flipped,
            })
        }
    }
}

/// Cusp geometry of `R = e^{cθ} sin γθ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PuiseuxReport {
    pub c: f64,
    pub gamma: f64,
    pub cusp_angles: Vec<f64>,
    /// Largest distance of a detected cusp angle from the nearest `nπ/γ`.
    pub max_angle_error: f64,
    pub cusp_positions: Vec<PlanePoint>,
    /// Center of the logarithmic spiral through the cusps; `None` when the
    /// cusps are equally spaced (no finite center).
    pub center: Option<PlanePoint>,
    /// Cusp distances from the center, or successive cusp spacings without one.
    pub distances: Vec<f64>,
    pub ratios: Vec<f64>,
    pub expected_ratio: f64,
    /// `max |ratio − expected_ratio|`.
    pub ratio_error: f64,
}

pub fn puiseux_diagnostics(c: f64, gamma: f64, interval: &AngleInterval) -> Result<PuiseuxReport> {
    check_finite("c", c)?;
    check_finite("gamma", gamma)?;
    if gamma == 0.0 {
        return Err(Error::InvalidParameter("gamma must be nonzero".into()));
    }
    let curve = InclinationCurve::puiseux(c, gamma);
    let scan = inclination::find_cusps(&curve, interval)?;
    let period = PI / gamma.abs();
    let cusps = scan.cusps;
    let max_angle_error = cusps
        .iter()
        .map(|&t| (t - (t / period).round() * period).abs())
        .fold(0.0, f64::max);
    let opts = ReconstructOptions {
        tolerance: 1e-13,
        ..Default::default()
    };
    let positions: Vec<PlanePoint> = if cusps.is_empty() {
        Vec::new()
    } else {
        inclination::reconstruct_on_grid(&curve, &cusps, &opts)?
            .into_iter()
            .map(|s| s.position)
            .collect()
    };
    let expected_ratio = (c * period).exp();
    let mut report = PuiseuxReport {
        c,
        gamma,
        cusp_angles: cusps,
        max_angle_error,
        cusp_positions: positions.clone(),
        center: None,
        distances: Vec::new(),
        ratios: Vec::new(),
        expected_ratio,
        ratio_error: 0.0,
    };
    if positions.len() < 3 {
        return Ok(report);
    }
    let z = |p: PlanePoint| Complex64::new(p.x, p.y);
    let d0 = z(positions[1]) - z(positions[0]);
    let d1 = z(positions[2]) - z(positions[1]);
    let q = d1 / d0;
    let distances: Vec<f64> = if (Complex64::new(1.0, 0.0) - q).norm() < 1e-9 {
        positions.windows(2).map(|w| w[0].distance(w[1])).collect()
    } else {
        let center = (z(positions[1]) - q * z(positions[0])) / (1.0 - q);
        report.center = Some(PlanePoint::new(center.re, center.im));
        positions.iter().map(|&p| (z(p) - center).norm()).collect()
    };
    let ratios: Vec<f64> = distances.windows(2).map(|w| w[1] / w[0]).collect();
    report.ratio_error = ratios
        .iter()
        .map(|r| (r - expected_ratio).abs())
        .fold(0.0, f64::max);
    report.distances = distances;
    report.ratios = ratios;
    Ok(report)
}

impl fmt::Display for PuiseuxReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "puiseux c = {} gamma = {}", self.c, self.gamma)?;
        writeln!(f, "cusps: {}  max angle error: {:e}", self.cusp_angles.len(), self.max_angle_error)?;
        match self.center {
            Some(p) => writeln!(f, "spiral center: ({}, {})", p.x, p.y)?,
            None => writeln!(f, "spiral center: none (equal spacing)")?,
        }
        writeln!(f, "expected ratio: {}  max ratio error: {:e}", self.expected_ratio, self.ratio_error)
    }
}
