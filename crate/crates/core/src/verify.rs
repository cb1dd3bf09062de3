//! Named agreement and residual suites run by `caustics verify`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::caustic::{caustic_curve, caustic_curve_with, similarity_residual, SimilaritySpec, TiltField};
use crate::error::{Error, Result};
use crate::geometry::{scatter, PlanePoint};
use crate::inclination::{self, Anchor, AngleInterval, InclinationCurve, ReconstructOptions};
use crate::oracle::{envelope_distance, envelope_numeric, reflect_horizontal, Polyline, CUSP_EXCLUSION};
use crate::pantograph::{self, mirror_report, solve_series, PantographSolution, SeriesOptions};
use crate::skew::{self, InverseShape, SkewCase, SkewFamilySpec};
use crate::specfun::{lambert_w, tan_coeffs};

pub const DEFAULT_SEED: u64 = 20_240_521;
pub const DEFAULT_DRAWS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Nephroid,
    Oracle,
    Cycloid,
    Pantograph,
    Parabola,
    Skew,
    Delay,
    Lambert,
    Puiseux,
    Tan,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Nephroid,
        Suite::Oracle,
        Suite::Cycloid,
        Suite::Pantograph,
        Suite::Parabola,
        Suite::Skew,
        Suite::Delay,
        Suite::Lambert,
        Suite::Puiseux,
        Suite::Tan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Nephroid => "nephroid",
            Suite::Oracle => "oracle",
            Suite::Cycloid => "cycloid",
            Suite::Pantograph => "pantograph",
            Suite::Parabola => "parabola",
            Suite::Skew => "skew",
            Suite::Delay => "delay",
            Suite::Lambert => "lambert",
            Suite::Puiseux => "puiseux",
            Suite::Tan => "tan",
        }
    }

    pub fn parse(name: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .ok_or_else(|| {
                let known: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
                Error::InvalidParameter(format!("unknown suite '{name}' (known: all, {})", known.join(", ")))
            })
    }
}

/// Which suites to run and how.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub draws: usize,
    /// Replaces every check's own tolerance when set.
    pub tolerance: Option<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            suites: Suite::ALL.to_vec(),
            seed: DEFAULT_SEED,
            draws: DEFAULT_DRAWS,
            tolerance: None,
        }
    }
}

impl VerifyConfig {
    /// One suite name per line, or `seed = N`, `draws = N`, `tolerance = x`.
    /// `#` starts a comment. A config naming no suite is rejected.
    pub fn parse(text: &str) -> Result<VerifyConfig> {
        let mut cfg = VerifyConfig {
            suites: Vec::new(),
            ..VerifyConfig::default()
        };
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| Error::Parse(format!("suite config line {}: {what}", lineno + 1));
            if let Some((key, value)) = line.split_once('=') {
                let value = value.trim();
                match key.trim() {
                    "seed" => cfg.seed = value.parse().map_err(|_| bad("seed must be an unsigned integer"))?,
                    "draws" => cfg.draws = value.parse().map_err(|_| bad("draws must be an unsigned integer"))?,
                    "tolerance" => cfg.tolerance = Some(crate::literal::parse_real(value)?),
                    other => return Err(bad(&format!("unknown key '{other}'"))),
                }
            } else if line == "all" {
                cfg.suites.extend(Suite::ALL);
            } else {
                cfg.suites.push(Suite::parse(line)?);
            }
        }
        if cfg.suites.is_empty() {
            return Err(Error::InvalidParameter(
                "suite config lists no suites; add suite names such as 'nephroid' or 'all'".into(),
            ));
        }
        let mut seen = Vec::new();
        cfg.suites.retain(|s| if seen.contains(s) { false } else { seen.push(*s); true });
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Below,
    Above,
}

/// A single measured quantity against its tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub relation: Relation,
}

impl Check {
    pub fn pass(&self) -> bool {
        match self.relation {
            Relation::Below => self.value < self.tolerance,
            Relation::Above => self.value > self.tolerance,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.relation {
            Relation::Below => "<",
            Relation::Above => ">",
        };
        write!(
            f,
            "{:<5} {:<11} {:<44} {:>12.4e} {op} {:.1e}",
            if self.pass() { "PASS" } else { "FAIL" },
            self.suite,
            self.name,
            self.value,
            self.tolerance
        )
    }
}

struct Collector<'a> {
    suite: &'static str,
    cfg: &'a VerifyConfig,
    out: Vec<Check>,
}

impl Collector<'_> {
    fn push(&mut self, name: impl Into<String>, value: f64, tol: f64, relation: Relation) {
        let tolerance = match (relation, self.cfg.tolerance) {
            (Relation::Below, Some(t)) => t,
            _ => tol,
        };
        self.out.push(Check {
            suite: self.suite,
            name: name.into(),
            value: if value.is_nan() { f64::INFINITY } else { value },
            tolerance,
            relation,
        });
    }

    fn below(&mut self, name: impl Into<String>, value: f64, tol: f64) {
        self.push(name, value, tol, Relation::Below);
    }

    fn above(&mut self, name: impl Into<String>, value: f64, tol: f64) {
        self.push(name, value, tol, Relation::Above);
    }

    /// Boolean facts are recorded as 0 (holds) or 1 (fails) below 0.5.
    fn holds(&mut self, name: impl Into<String>, ok: bool) {
        self.out.push(Check {
            suite: self.suite,
            name: name.into(),
            value: if ok { 0.0 } else { 1.0 },
            tolerance: 0.5,
            relation: Relation::Below,
        });
    }
}

pub fn run(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut all = Vec::new();
    for &suite in &cfg.suites {
        all.extend(run_suite(suite, cfg)?);
    }
    Ok(all)
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut c = Collector {
        suite: suite.name(),
        cfg,
        out: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (suite as u64).wrapping_mul(0x9e37_79b9));
    match suite {
        Suite::Nephroid => nephroid(&mut c)?,
        Suite::Oracle => oracle(&mut c)?,
        Suite::Cycloid => cycloid(&mut c)?,
        Suite::Pantograph => pantograph_suite(&mut c)?,
        Suite::Parabola => parabola(&mut c)?,
        Suite::Skew => skew_suite(&mut c, &mut rng)?,
        Suite::Delay => delay(&mut c, &mut rng)?,
        Suite::Lambert => lambert(&mut c, &mut rng)?,
        Suite::Puiseux => puiseux(&mut c)?,
        Suite::Tan => tan(&mut c),
    }
    Ok(c.out)
}

/// Summary table, one row per check.
pub fn table(checks: &[Check]) -> String {
    let mut out = String::new();
    for ch in checks {
        out.push_str(&ch.to_string());
        out.push('\n');
    }
    let failed = checks.iter().filter(|c| !c.pass()).count();
    out.push_str(&format!("{} checks, {} passed, {} failed\n", checks.len(), checks.len() - failed, failed));
    out
}

fn iv(lo: f64, hi: f64, n: usize) -> Result<AngleInterval> {
    AngleInterval::new(lo, hi, n)
}

fn nephroid(c: &mut Collector) -> Result<()> {
    let cc = caustic_curve(&InclinationCurve::circle(1.0), &TiltField::reflection(), &iv(0.0, PI, 1000)?)?;
    let (mut radius, mut inclination_form) = (0.0f64, 0.0f64);
    for s in cc.samples() {
        radius = radius.max((s.caustic_radius - 0.75 * s.source_theta.cos()).abs());
        inclination_form = inclination_form
            .max((s.caustic_radius - 0.75 * (0.5 * s.caustic_theta).cos()).abs())
            .max((s.caustic_theta - 2.0 * s.source_theta).abs());
    }
    c.holds("all 1000 caustic points finite", cc.failures().count() == 0);
    c.below("max |R1 - 3/4 cos(theta)|", radius, 1e-12);
    c.below("max |R1 - 3/4 cos(theta1/2)|", inclination_form, 1e-12);
    Ok(())
}

/// Nephroid traced by horizontal rays inside the unit circle centred at (0, 1).
pub fn closed_form_nephroid(n: usize) -> Vec<PlanePoint> {
    (0..n)
        .map(|i| {
            let psi = -FRAC_PI_2 + PI * i as f64 / (n - 1) as f64;
            PlanePoint::new(
                (3.0 * psi.cos() - (3.0 * psi).cos()) / 4.0,
                1.0 + (3.0 * psi.sin() - (3.0 * psi).sin()) / 4.0,
            )
        })
        .collect()
}

/// Hausdorff distance of the numeric envelope of `n` rays reflected in the unit
/// semicircle from the closed-form nephroid.
pub fn semicircle_envelope_distance(n: usize) -> Result<f64> {
    let s = inclination::reconstruct(&InclinationCurve::circle(1.0), &iv(0.0, PI, n)?)?;
    let env = envelope_numeric(&reflect_horizontal(&Polyline::from_samples(&s))?)?;
    let cusps = [PlanePoint::new(0.0, 0.0), PlanePoint::new(0.0, 2.0), PlanePoint::new(0.5, 1.0)];
    Ok(envelope_distance(&env, &closed_form_nephroid(8001), &cusps, CUSP_EXCLUSION))
}

fn oracle(c: &mut Collector) -> Result<()> {
    let d1 = semicircle_envelope_distance(2000)?;
    let d2 = semicircle_envelope_distance(3999)?;
    c.below("envelope distance, 2000 rays", d1, 1e-3);
    c.below("distance ratio after halving the step", d2 / d1, 0.5 + 1e-12);
    Ok(())
}

fn solution(k: i64) -> Result<PantographSolution> {
    PantographSolution::new(solve_series(k, pantograph::DEFAULT_ORDER, &SeriesOptions::default())?)
}

fn cycloid_collinearity() -> Result<f64> {
    Ok(mirror_report(&solution(0)?, &iv(0.0, 4.0 * PI, 800)?)?.collinearity)
}

fn cycloid(c: &mut Collector) -> Result<()> {
    let spec = SimilaritySpec::new(0.5, 0.0, 1)?;
    let res = similarity_residual(&InclinationCurve::cycloid(), &TiltField::reflection(), &spec, &iv(0.0, PI, 1000)?)?;
    c.below("similarity residual a = 1/2, beta = 0", res, 1e-10);
    let rep = mirror_report(&solution(0)?, &iv(0.0, 4.0 * PI, 800)?)?;
    c.below("zero deviation from multiples of pi", rep.max_zero_deviation, 1e-11);
    let rho = (rep.arc_ratio_min - 1.0).abs().max((rep.arc_ratio_max - 1.0).abs());
    c.below("|arc ratio - 1|", rho, 1e-10);
    c.below("cusp collinearity residual", rep.collinearity, 1e-10);
    Ok(())
}

fn pantograph_suite(c: &mut Collector) -> Result<()> {
    let cyc = cycloid_collinearity()?;
    for m in [2i64, 3] {
        let k = m - 1;
        let exact = solve_series(k, pantograph::DEFAULT_ORDER, &SeriesOptions { exact: true, ..Default::default() })?;
        let a_exact = pantograph::similarity_factor_exact(k);
        let expected = if m == 2 { BigRational::new(5.into(), 16.into()) } else { BigRational::new(3.into(), 16.into()) };
        c.holds(format!("m={m}: a = {expected}"), a_exact == expected);
        if m == 2 {
            c.below("m=2: |a_3 - 1/39|", (exact.coeff(3) - 1.0 / 39.0).abs(), 1e-15);
        }
        let checks = exact.checks();
        c.holds(format!("m={m}: parity zeros"), checks.parity_zero);
        c.holds(format!("m={m}: uniform sign"), checks.sign_coherent);
        c.holds(format!("m={m}: |a_n|(pi/2)^n <= M"), checks.bound_holds);
        let sol = PantographSolution::new(exact)?;
        c.below(format!("m={m}: pantograph residual on [0.01, 2pi]"), sol.pantograph_residual(&iv(0.01, 2.0 * PI, 400)?)?, 1e-8);
        let rep = mirror_report(&sol, &iv(0.0, 2.0 * PI, 400)?)?;
        if m == 2 {
            c.above("m=2: |R(pi)| / max|R|", rep.r_at_pi.abs() / rep.max_abs_r, 1e-3);
            c.above("m=2: arc ratio spread", rep.arc_ratio_max - rep.arc_ratio_min, 1e-3);
            c.holds("m=2: mirror is not vertical", !rep.verticality.vertical);
        } else {
            c.above("m=3: collinearity residual over cycloid's", rep.collinearity, cyc);
        }
    }
    Ok(())
}

fn parabola(c: &mut Collector) -> Result<()> {
    let a = 1.0;
    let curve = pantograph::parabola_mirror(a)?;
    let opts = ReconstructOptions {
        anchor: Anchor::at(pantograph::parabola_point(a, 0.2)),
        tolerance: 1e-12,
    };
    let range = iv(0.2, PI - 0.2, 400)?;
    let samples = inclination::reconstruct_with(&curve, &range, &opts)?;
    let implicit = samples
        .iter()
        .map(|s| (s.position.y * s.position.y + 2.0 * a * s.position.x + a * a).abs())
        .fold(0.0, f64::max);
    let cc = caustic_curve_with(&curve, &TiltField::reflection(), &range, &opts)?;
    c.below("caustic scatter", scatter(&cc.positions()), 1e-7);
    c.below("|y^2 + 2Ax + A^2|", implicit, 1e-8);
    Ok(())
}

fn skew_suite(c: &mut Collector, rng: &mut ChaCha8Rng) -> Result<()> {
    let range = iv(0.0, 2.0, 200)?;
    let (mut pbp, mut inv, mut ode, mut involute) = (0.0f64, 0.0f64, 0.0f64, true);
    for _ in 0..c.cfg.draws {
        let phi0 = rng.gen_range(-1.2..1.2);
        let a = rng.gen_range(0.2..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let alpha = rng.gen_range(-2.0..2.0);
        let curve = skew::point_by_point_curve(1.0, a, phi0)?;
        pbp = pbp.max(skew::skew_residual(&curve, phi0, a, SkewCase::PointByPoint, 0.0, &range)?);
        let (ca, cb) = skew::inverse_position_coefficients(a, phi0, alpha)?;
        let curve = skew::inverse_position_curve(ca, cb, a, phi0)?;
        inv = inv.max(skew::skew_residual(&curve, phi0, a, SkewCase::InversePosition, alpha, &range)?);
        ode = ode.max(skew::inverse_ode_residual(&curve, a, phi0, &range)?);
        let s = phi0.sin();
        involute &= skew::inverse_shape(s, phi0)? == InverseShape::Involute
            && skew::inverse_shape(-s, phi0)? == InverseShape::Involute
            && skew::inverse_shape(s * (1.0 + 1e-6) + 1e-9, phi0)? != InverseShape::Involute;
    }
    c.below("point-by-point skew residual", pbp, 1e-9);
    c.below("inverse-position skew residual", inv, 1e-9);
    c.below("inverse-position ODE residual", ode, 1e-9);
    c.holds("involute exactly at a = +-sin(phi0)", involute);
    Ok(())
}

fn delay(c: &mut Collector, rng: &mut ChaCha8Rng) -> Result<()> {
    let range = iv(0.0, 3.0, 200)?;
    let (mut root_res, mut curve_res) = (0.0f64, 0.0f64);
    for _ in 0..c.cfg.draws {
        let a = rng.gen_range(0.2..2.0);
        let alpha = rng.gen_range(0.1..2.0);
        let phi0 = rng.gen_range(-1.0..1.0);
        for r in skew::delay_roots(a, alpha, phi0, &[-2, -1, 0, 1, 2])? {
            root_res = root_res.max(r.residual(a, alpha, phi0));
        }
        let spec = SkewFamilySpec {
            case: SkewCase::Delay,
            phi0,
            factor_a: a,
            alpha,
            coefficients: vec![(1.0, 0.0)],
            root_indices: vec![0],
        };
        curve_res = curve_res.max(skew::build_family(&spec)?.residual(&range)?);
    }
    c.below("characteristic equation residual", root_res, 1e-10);
    c.below("delay similarity residual of e^(lambda0 theta)", curve_res, 1e-9);
    Ok(())
}

fn lambert(c: &mut Collector, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut worst = 0.0f64;
    for _ in 0..c.cfg.draws * 10 {
        let z = Complex64::from_polar(rng.gen_range(0.5..5.0), rng.gen_range(-PI..PI));
        for k in -2..=2 {
            let w = lambert_w(k, z)?;
            worst = worst.max((w * w.exp() - z).norm() / z.norm());
        }
    }
    c.below("W e^W round trip on annulus 0.5 <= |z| <= 5", worst, 1e-12);
    Ok(())
}

fn puiseux(c: &mut Collector) -> Result<()> {
    let rep = skew::puiseux_diagnostics(0.2, 3.0, &iv(0.1, 4.0 * PI, 4000)?)?;
    c.below("cusp angle error from n pi/gamma", rep.max_angle_error, 1e-9);
    c.below("spiral ratio error from e^(c pi/gamma)", rep.ratio_error, 1e-6);
    Ok(())
}

fn tan(c: &mut Collector) {
    let t = tan_coeffs(30);
    let err = (0..=240)
        .map(|i| {
            let x = -1.2 + 2.4 * i as f64 / 240.0;
            (t.evaluate(x) - x.tan()).abs()
        })
        .fold(0.0, f64::max);
    c.below("series vs tan on |theta| <= 1.2", err, 1e-10);
    c.holds("coefficient bound for n >= 1", t.bound_violations().is_empty());
}
