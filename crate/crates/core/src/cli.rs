//! Command-line front end: `curve`, `caustic`, `skew`, `pantograph`, `verify`.
//!
//! Exit status 0 on success, 2 on validation errors (bad flags, unreadable or
//! malformed input), 3 on numeric failures.

use std::ffi::OsString;
use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::caustic::{caustic_curve_with, CausticCurve, TiltField};
use crate::error::{Error, Result};
use crate::geometry::PlanePoint;
use crate::inclination::{
    self, fmt_num, Anchor, AngleInterval, InclinationCurve, ReconstructOptions,
};
use crate::literal::{parse_list, parse_real};
use crate::pantograph::{self, mirror_report, solve_series, PantographSolution, SeriesOptions};
use crate::skew::{self, SkewFamilySpec};
use crate::svg::Figure;
use crate::verify::{self, Suite, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "caustics", version, about = "Caustics of plane curves from inclination equations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reconstruct a curve from its radius of curvature R(theta).
    Curve(CurveArgs),
    /// Caustic of a curve under a tilt field.
    Caustic(CausticArgs),
    /// Build a skew-evolute family member and its skew evolute.
    Skew(SkewArgs),
    /// Solve the pantograph equation for a given m and report on the mirror.
    Pantograph(PantographArgs),
    /// Run the oracle agreement and residual suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct Sampling {
    /// `lo:hi`, accepts pi literals such as `0:2pi` or `pi/4:3pi/4`.
    #[arg(long, allow_hyphen_values = true)]
    pub interval: Option<String>,
    #[arg(long, default_value_t = 400)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct Outputs {
    #[arg(long)]
    pub out_csv: Option<PathBuf>,
    #[arg(long)]
    pub out_svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// `circle[:r]`, `cycloid`, `log_spiral:A,b`, `parabola:A`, `puiseux:c,gamma`, `series:c0,c1,...`
    #[arg(long, required_unless_present = "from_csv")]
    pub curve: Option<String>,
    /// Re-read a curve CSV and emit it again.
    #[arg(long, conflicts_with = "curve")]
    pub from_csv: Option<PathBuf>,
    #[command(flatten)]
    pub sampling: Sampling,
    #[command(flatten)]
    pub outputs: Outputs,
}

#[derive(Debug, Args)]
pub struct CausticArgs {
    #[arg(long)]
    pub curve: String,
    /// `evolute`, `skew:<phi>` or `reflection`
    #[arg(long, default_value = "reflection")]
    pub tilt: String,
    #[command(flatten)]
    pub sampling: Sampling,
    #[command(flatten)]
    pub outputs: Outputs,
}

#[derive(Debug, Args)]
pub struct SkewArgs {
    /// Family spec file (`key = value` lines); inline flags are ignored when given.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// point_by_point, inverse_position or delay
    #[arg(long, default_value = "delay")]
    pub case: String,
    #[arg(long, default_value = "pi/6", allow_hyphen_values = true)]
    pub phi0: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub alpha: String,
    /// Comma list of `A:B` pairs.
    #[arg(long, default_value = "1:0", allow_hyphen_values = true)]
    pub coefficients: String,
    /// Comma list of Lambert branch indices (delay case).
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub roots: String,
    #[command(flatten)]
    pub sampling: Sampling,
    #[command(flatten)]
    pub outputs: Outputs,
}

#[derive(Debug, Args)]
pub struct PantographArgs {
    /// Mirror index, similarity factor a = (m + 3)/2^(m + 2).
    #[arg(long)]
    pub m: Option<u32>,
    /// Similarity factor as a fraction, e.g. 5/16; must match --m when both are given.
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long, default_value_t = pantograph::DEFAULT_ORDER)]
    pub order: usize,
    #[arg(long, default_value_t = pantograph::DEFAULT_JET_ORDER)]
    pub jet_order: usize,
    #[command(flatten)]
    pub sampling: Sampling,
    #[command(flatten)]
    pub outputs: Outputs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// `all` or a comma list of suite names.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Suite config file; see `VerifyConfig::parse`.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub draws: Option<usize>,
    /// Overrides the tolerance of every upper-bound check.
    #[arg(long)]
    pub tolerance: Option<String>,
}

/// Parses `args` (including the program name) and runs the job; returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(&cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_validation() {
                EXIT_VALIDATION
            } else {
                EXIT_NUMERIC
            }
        }
    }
}

/// Runs a parsed command, writing the text report to `out`.
pub fn execute(command: &Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Curve(a) => cmd_curve(a, out),
        Command::Caustic(a) => cmd_caustic(a, out),
        Command::Skew(a) => cmd_skew(a, out),
        Command::Pantograph(a) => cmd_pantograph(a, out),
        Command::Verify(a) => cmd_verify(a, out),
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))
}

/// `lo:hi` with pi literals.
pub fn parse_interval(text: &str, n_samples: usize) -> Result<AngleInterval> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("interval '{text}' must look like lo:hi, e.g. 0:2pi")))?;
    AngleInterval::new(parse_real(lo)?, parse_real(hi)?, n_samples)
}

/// A registry curve and where its first sample sits.
pub struct NamedCurve {
    pub curve: InclinationCurve,
    pub default_interval: (f64, f64),
    anchor: Option<Box<dyn Fn(f64) -> PlanePoint>>,
}

impl NamedCurve {
    pub fn options(&self, interval: &AngleInterval) -> ReconstructOptions {
        ReconstructOptions {
            anchor: Anchor::at(self.anchor.as_ref().map_or(PlanePoint::ORIGIN, |f| f(interval.lo))),
            ..ReconstructOptions::default()
        }
    }

    pub fn interval(&self, sampling: &Sampling) -> Result<AngleInterval> {
        match &sampling.interval {
            Some(t) => parse_interval(t, sampling.samples),
            None => AngleInterval::new(self.default_interval.0, self.default_interval.1, sampling.samples),
        }
    }
}

/// Built-in curves: `circle[:r]`, `cycloid`, `log_spiral:A,b`, `parabola:A`,
/// `puiseux:c,gamma`, `series:c0,c1,...`.
pub fn parse_curve(text: &str) -> Result<NamedCurve> {
    let (name, params) = match text.split_once(':') {
        Some((n, p)) => (n.trim(), parse_list(p)?),
        None => (text.trim(), Vec::new()),
    };
    let want = |n: usize, usage: &str| -> Result<()> {
        if params.len() == n {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "curve '{name}' takes {n} parameter(s), got {}; use --curve {usage}",
                params.len()
            )))
        }
    };
    let plain = |curve, lo, hi| NamedCurve {
        curve,
        default_interval: (lo, hi),
        anchor: None,
    };
    Ok(match name {
        "circle" => {
            let r = match params.len() {
                0 => 1.0,
                _ => {
                    want(1, "circle:r")?;
                    params[0]
                }
            };
            plain(InclinationCurve::circle(r), 0.0, PI)
        }
        "cycloid" => {
            want(0, "cycloid")?;
            plain(InclinationCurve::cycloid(), 0.0, PI)
        }
        "log_spiral" => {
            want(2, "log_spiral:A,b")?;
            plain(InclinationCurve::log_spiral(params[0], params[1]), 0.0, 2.0 * PI)
        }
        "parabola" => {
            want(1, "parabola:A")?;
            let a = params[0];
            NamedCurve {
                curve: pantograph::parabola_mirror(a)?,
                default_interval: (0.2, PI - 0.2),
                anchor: Some(Box::new(move |t| pantograph::parabola_point(a, t))),
            }
        }
        "puiseux" => {
            want(2, "puiseux:c,gamma")?;
            if params[1] == 0.0 {
                return Err(Error::InvalidParameter("puiseux needs gamma != 0".into()));
            }
            plain(InclinationCurve::puiseux(params[0], params[1]), 0.0, 4.0 * PI)
        }
        "series" => {
            if params.is_empty() {
                return Err(Error::InvalidParameter(
                    "series needs coefficients; use --curve series:c0,c1,...".into(),
                ));
            }
            plain(InclinationCurve::polynomial(params), 0.0, 1.0)
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown curve '{other}' (known: circle, cycloid, log_spiral, parabola, puiseux, series)"
            )))
        }
    })
}

/// `evolute`, `skew:<phi>` or `reflection`.
pub fn parse_tilt(text: &str) -> Result<TiltField> {
    match text.split_once(':') {
        Some(("skew", phi)) => {
            let phi = parse_real(phi)?;
            if phi.cos().abs() < 1e-12 {
                return Err(Error::InvalidParameter(format!("skew tilt needs cos(phi) != 0, got phi = {phi}")));
            }
            Ok(TiltField::skew(phi))
        }
        None if text == "evolute" => Ok(TiltField::evolute()),
        None if text == "reflection" => Ok(TiltField::reflection()),
        _ => Err(Error::InvalidParameter(format!(
            "unknown tilt '{text}' (expected evolute, skew:<phi> or reflection)"
        ))),
    }
}

fn cmd_curve(args: &CurveArgs, out: &mut dyn Write) -> Result<i32> {
    let samples = match (&args.from_csv, &args.curve) {
        (Some(path), _) => inclination::samples_from_csv(&read_file(path)?)?,
        (None, Some(name)) => {
            let named = parse_curve(name)?;
            let iv = named.interval(&args.sampling)?;
            inclination::reconstruct_with(&named.curve, &iv, &named.options(&iv))?
        }
        (None, None) => return Err(Error::InvalidParameter("give --curve or --from-csv".into())),
    };
    let csv = inclination::samples_to_csv(&samples);
    emit_csv(&args.outputs, &csv, out)?;
    if let Some(path) = &args.outputs.out_svg {
        let mut fig = Figure::default();
        fig.polyline("mirror", &samples.iter().map(|s| s.position).collect::<Vec<_>>());
        write_file(path, &fig.render())?;
    }
    Ok(EXIT_OK)
}

fn emit_csv(outputs: &Outputs, csv: &str, out: &mut dyn Write) -> Result<()> {
    match &outputs.out_csv {
        Some(path) => write_file(path, csv),
        None if outputs.out_svg.is_none() => out.write_all(csv.as_bytes()).map_err(io),
        None => Ok(()),
    }
}

/// Mirror, caustic, a fan of rays, caustic cusps (sign changes of R₁) and the
/// line through the cusps.
fn caustic_figure(cc: &CausticCurve) -> Figure {
    let mut fig = Figure::default();
    fig.polyline("mirror", &cc.source.iter().map(|s| s.position).collect::<Vec<_>>());
    let caustic: Vec<PlanePoint> = cc
        .nodes
        .iter()
        .map(|n| n.result.as_ref().map_or(PlanePoint::new(f64::NAN, f64::NAN), |s| s.position))
        .collect();
    fig.polyline("caustic", &caustic);
    let stride = (cc.nodes.len() / 24).max(1);
    for (node, src) in cc.nodes.iter().zip(&cc.source).step_by(stride) {
        if let Ok(s) = &node.result {
            fig.segment("rays", src.position, s.position);
        }
    }
    let mut cusps = Vec::new();
    for w in cc.nodes.windows(2) {
        if let (Ok(a), Ok(b)) = (&w[0].result, &w[1].result) {
            if a.caustic_radius == 0.0 || a.caustic_radius.signum() != b.caustic_radius.signum() {
                let p = if a.caustic_radius.abs() <= b.caustic_radius.abs() { a.position } else { b.position };
                fig.marker("cusps", p);
                cusps.push(p);
            }
        }
    }
    if cusps.len() >= 2 {
        fig.polyline("cuspline", &cusps);
    }
    fig
}

fn cmd_caustic(args: &CausticArgs, out: &mut dyn Write) -> Result<i32> {
    let named = parse_curve(&args.curve)?;
    let tilt = parse_tilt(&args.tilt)?;
    let iv = named.interval(&args.sampling)?;
    let cc = caustic_curve_with(&named.curve, &tilt, &iv, &named.options(&iv))?;
    emit_csv(&args.outputs, &cc.to_csv(), out)?;
    if let Some(path) = &args.outputs.out_svg {
        write_file(path, &caustic_figure(&cc).render())?;
    }
    let failed = cc.failures().count();
    if failed > 0 {
        writeln!(out, "# {failed} of {} samples have no finite caustic point", cc.nodes.len()).map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn inline_spec(args: &SkewArgs) -> Result<SkewFamilySpec> {
    let text = format!(
        "case = {}\nphi0 = {}\na = {}\nalpha = {}\ncoefficients = {}\nroots = {}\n",
        args.case, args.phi0, args.a, args.alpha, args.coefficients, args.roots
    );
    SkewFamilySpec::parse(&text)
}

fn cmd_skew(args: &SkewArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = match &args.spec {
        Some(path) => SkewFamilySpec::parse(&read_file(path)?)?,
        None => inline_spec(args)?,
    };
    let family = skew::build_family(&spec)?;
    let iv = match &args.sampling.interval {
        Some(t) => parse_interval(t, args.sampling.samples)?,
        None => AngleInterval::new(0.0, PI, args.sampling.samples)?,
    };
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(io);
    out.write_all(spec.to_text().as_bytes()).map_err(io)?;
    if family.normalized {
        w(out, "# advance problem solved through theta -> -theta".into())?;
    }
    for r in &family.roots {
        w(out, format!("# lambda_{} = {} + {}i", r.index_k, fmt_num(r.lambda.re), fmt_num(r.lambda.im)))?;
    }
    match family.alpha {
        Some(alpha) => {
            w(out, format!("# alpha used = {}", fmt_num(alpha)))?;
            w(out, format!("# skew residual = {:e}", family.residual(&iv)?))?;
        }
        None => w(out, "# no delay alpha satisfies the inverse-position relation for these constants".into())?,
    }
    let cc = caustic_curve_with(&family.curve, &TiltField::skew(spec.phi0), &iv, &ReconstructOptions::default())?;
    if let Some(path) = &args.outputs.out_csv {
        write_file(path, &cc.to_csv())?;
    }
    if let Some(path) = &args.outputs.out_svg {
        write_file(path, &caustic_figure(&cc).render())?;
    }
    Ok(EXIT_OK)
}

/// `m` whose factor `(m + 3)/2^{m+2}` equals `a`.
fn m_from_factor(a: f64) -> Result<u32> {
    (0..=60u32)
        .find(|&m| (pantograph::similarity_factor(m as i64 - 1) - a).abs() <= 1e-15 * a.abs())
        .ok_or_else(|| {
            Error::InvalidParameter(format!(
                "a = {a} is not of the form (m + 3)/2^(m + 2); try 1/2, 5/16 or 3/16"
            ))
        })
}

fn cmd_pantograph(args: &PantographArgs, out: &mut dyn Write) -> Result<i32> {
    let m = match (args.m, &args.a) {
        (Some(m), None) => m,
        (m, Some(a)) => {
            let from_a = m_from_factor(parse_real(a)?)?;
            if let Some(m) = m {
                if m != from_a {
                    return Err(Error::InvalidParameter(format!("--a {a} belongs to m = {from_a}, not m = {m}")));
                }
            }
            from_a
        }
        (None, None) => 2,
    };
    if m == 0 {
        return Err(Error::InvalidParameter("m = 0 gives a = 3/4 with k = -1; use m >= 1".into()));
    }
    let k = m as i64 - 1;
    let exact = args.order as i64 - k <= 60;
    let series = solve_series(k, args.order, &SeriesOptions { exact, ..Default::default() })?;
    let checks = series.checks();
    let csv = series.to_csv();
    let solution = PantographSolution::new(series)?.with_jet_order(args.jet_order);
    let iv = match &args.sampling.interval {
        Some(t) => parse_interval(t, args.sampling.samples)?,
        None => AngleInterval::new(0.0, 2.0 * PI, args.sampling.samples)?,
    };
    // the sampled curve maps jet failures to NaN, so surface a too-shallow jet here
    solution.jet(iv.hi, 2)?;
    let report = mirror_report(&solution, &iv)?;
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(io);
    w(out, format!("m = {m}"))?;
    w(out, format!("a = {}", pantograph::similarity_factor_exact(k)))?;
    w(out, format!("parity_zero = {}", checks.parity_zero))?;
    w(out, format!("sign_coherent = {}", checks.sign_coherent))?;
    w(out, format!("bound_m = {}", checks.bound_m.map_or("none".into(), fmt_num)))?;
    w(out, format!("bound_holds = {}", checks.bound_holds))?;
    let residual_iv = AngleInterval::new(iv.lo.max(0.01), iv.hi, iv.n_samples)?;
    w(out, format!("pantograph_residual = {}", fmt_num(solution.pantograph_residual(&residual_iv)?)))?;
    out.write_all(report.to_key_values().as_bytes()).map_err(io)?;
    match &args.outputs.out_csv {
        Some(path) => write_file(path, &csv)?,
        None => out.write_all(csv.as_bytes()).map_err(io)?,
    }
    if let Some(path) = &args.outputs.out_svg {
        let curve = solution.curve();
        let opts = ReconstructOptions::default();
        let cc = caustic_curve_with(&curve, &TiltField::reflection(), &iv, &opts)?;
        let mut fig = caustic_figure(&cc);
        for &p in &report.caustic_cusps {
            fig.marker("cusps", p);
        }
        fig.polyline("cuspline", &report.caustic_cusps);
        write_file(path, &fig.render())?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let mut cfg = match &args.config {
        Some(path) => VerifyConfig::parse(&read_file(path)?)?,
        None => VerifyConfig::default(),
    };
    if args.suite != "all" {
        let wanted = args
            .suite
            .split(',')
            .map(|s| Suite::parse(s.trim()))
            .collect::<Result<Vec<_>>>()?;
        if let Some(missing) = wanted.iter().find(|s| !cfg.suites.contains(s)) {
            return Err(Error::InvalidParameter(format!(
                "suite '{}' is not enabled by the config file",
                missing.name()
            )));
        }
        cfg.suites = wanted;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(draws) = args.draws {
        cfg.draws = draws;
    }
    if let Some(t) = &args.tolerance {
        let t = parse_real(t)?;
        if t <= 0.0 {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {t}")));
        }
        cfg.tolerance = Some(t);
    }
    let checks = verify::run(&cfg)?;
    out.write_all(verify::table(&checks).as_bytes()).map_err(io)?;
    Ok(if checks.iter().all(verify::Check::pass) { EXIT_OK } else { EXIT_NUMERIC })
}
