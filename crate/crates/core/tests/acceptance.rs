//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed.
//!
//! Criteria listed in `KNOWN_UNATTAINABLE` are reported as FAIL but do not fail
//! the run; the run does fail if one of them starts passing, so the list stays honest.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::Command;
use std::time::Instant;

use caustics::caustic::{caustic_curve, caustic_curve_with, similarity_residual, SimilaritySpec, TiltField};
use caustics::geometry::{scatter, PlanePoint};
use caustics::inclination::{self, Anchor, AngleInterval, InclinationCurve, ReconstructOptions};
use caustics::oracle::{envelope_distance, envelope_numeric, reflect_horizontal, Polyline, CUSP_EXCLUSION};
use caustics::pantograph::{
    mirror_report, parabola_mirror, parabola_point, similarity_factor_exact, solve_series, MirrorReport,
    PantographSolution, SeriesOptions,
};
use caustics::skew::{self, InverseShape, SkewCase, SkewFamilySpec};
use caustics::specfun::{lambert_w, tan_coeffs, zeta_even, TanCoefficients};
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criterion 10 asks for 1e-10 on |θ| ≤ 1.2 with 31 coefficients. The first
/// omitted term alone is about 5e-8 at θ = 1.2, so truncation rules it out.
const KNOWN_UNATTAINABLE: &[u32] = &[10];

struct Outcome {
    id: u32,
    title: &'static str,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new(id: u32, title: &'static str) -> Self {
        Outcome {
            id,
            title,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn below(&mut self, what: &str, value: f64, tol: f64) {
        self.notes.push(format!("{what} = {value:.3e}"));
        if !(value < tol) {
            self.failures.push(format!("{what} = {value:.3e} not < {tol:.1e}"));
        }
    }

    fn above(&mut self, what: &str, value: f64, bound: f64) {
        self.notes.push(format!("{what} = {value:.3e}"));
        if !(value > bound) {
            self.failures.push(format!("{what} = {value:.3e} not > {bound:.3e}"));
        }
    }

    fn holds(&mut self, what: &str, ok: bool) {
        if !ok {
            self.failures.push(format!("{what} does not hold"));
        }
    }

    fn error(&mut self, what: &str, e: impl std::fmt::Display) {
        self.failures.push(format!("{what}: {e}"));
    }

    fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn iv(lo: f64, hi: f64, n: usize) -> AngleInterval {
    AngleInterval::new(lo, hi, n).unwrap()
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new(1, "nephroid caustic radius");
    let cc = caustic_curve(&InclinationCurve::circle(1.0), &TiltField::reflection(), &iv(0.0, PI, 1000)).unwrap();
    o.holds("1000 finite caustic points", cc.samples().count() == 1000);
    let (mut direct, mut incl) = (0.0f64, 0.0f64);
    for s in cc.samples() {
        direct = direct.max((s.caustic_radius - 0.75 * s.source_theta.cos()).abs());
        let theta1 = 2.0 * s.source_theta;
        incl = incl
            .max((s.caustic_theta - theta1).abs())
            .max((s.caustic_radius - 0.75 * (theta1 / 2.0).cos()).abs());
    }
    o.below("max |R1 - 3/4 cos t|", direct, 1e-12);
    o.below("max |R1(t1) - 3/4 cos(t1/2)|", incl, 1e-12);
    o
}

/// Horizontal rays inside the unit circle centred at (0, 1): the classical nephroid.
fn nephroid(n: usize) -> Vec<PlanePoint> {
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

fn envelope_error(n_rays: usize, reference: &[PlanePoint]) -> f64 {
    let mirror = inclination::reconstruct(&InclinationCurve::circle(1.0), &iv(0.0, PI, n_rays)).unwrap();
    let rays = reflect_horizontal(&Polyline::from_samples(&mirror)).unwrap();
    let env = envelope_numeric(&rays).unwrap();
    let cusps = [PlanePoint::new(0.0, 0.0), PlanePoint::new(0.0, 2.0), PlanePoint::new(0.5, 1.0)];
    envelope_distance(&env, reference, &cusps, CUSP_EXCLUSION)
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new(2, "numeric envelope vs closed-form nephroid");
    let reference = nephroid(8001);
    let d1 = envelope_error(2000, &reference);
    let d2 = envelope_error(3999, &reference);
    o.below("Hausdorff distance, 2000 rays", d1, 1e-3);
    o.below("distance ratio at half step", d2 / d1, 0.5 + 1e-12);
    o
}

fn solution(k: i64, exact: bool) -> PantographSolution {
    let series = solve_series(k, 30, &SeriesOptions { exact, ..Default::default() }).unwrap();
    PantographSolution::new(series).unwrap()
}

fn cycloid_report() -> MirrorReport {
    mirror_report(&solution(0, false), &iv(0.0, 4.0 * PI, 800)).unwrap()
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new(3, "cycloid mirror");
    let spec = SimilaritySpec::new(0.5, 0.0, 1).unwrap();
    let res = similarity_residual(&InclinationCurve::cycloid(), &TiltField::reflection(), &spec, &iv(0.0, 2.0 * PI, 1000));
    match res {
        Ok(r) => o.below("similarity residual", r, 1e-10),
        Err(e) => o.error("similarity residual", e),
    }
    let rep = cycloid_report();
    o.holds("R has zeros", !rep.zeros.is_empty());
    o.below("zero deviation", rep.max_zero_deviation, 1e-11);
    o.below("|rho - 1|", (rep.arc_ratio_min - 1.0).abs().max((rep.arc_ratio_max - 1.0).abs()), 1e-10);
    o.below("cusp collinearity", rep.collinearity, 1e-10);
    o
}

fn pantograph_suite(o: &mut Outcome, k: i64, num: i32, den: i32) -> (PantographSolution, MirrorReport) {
    let sol = solution(k, true);
    let series = &sol.series;
    o.holds("a exact", similarity_factor_exact(k) == BigRational::new(num.into(), den.into()));
    o.holds("a in floating point", series.factor_a == num as f64 / den as f64);
    let checks = series.checks();
    o.holds("parity zeros", checks.parity_zero);
    o.holds("uniform sign", checks.sign_coherent);
    o.holds("|a_n| (pi/2)^n <= M", checks.bound_holds);
    match sol.pantograph_residual(&iv(0.01, 2.0 * PI, 600)) {
        Ok(r) => o.below("pantograph residual on [0.01, 2pi]", r, 1e-8),
        Err(e) => o.error("pantograph residual", e),
    }
    let rep = mirror_report(&sol, &iv(0.0, 2.0 * PI, 600)).unwrap();
    (sol, rep)
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new(4, "pantograph m = 2");
    let (sol, rep) = pantograph_suite(&mut o, 1, 5, 16);
    o.below("|a_3 - 1/39|", (sol.series.coeff(3) - 1.0 / 39.0).abs(), 1e-15);
    o.above("|R(pi)| / max|R|", rep.r_at_pi.abs() / rep.max_abs_r, 1e-3);
    o.holds("arc ratio measured on [0.3, pi - 0.3]", rep.arc_ratio_interval == (0.3, PI - 0.3));
    o.above("max rho - min rho", rep.arc_ratio_max - rep.arc_ratio_min, 1e-3);
    o.holds("verticality check fails", !rep.verticality.vertical);
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new(5, "pantograph m = 3");
    let (_, rep) = pantograph_suite(&mut o, 2, 3, 16);
    let cycloid = cycloid_report().collinearity;
    o.above("collinearity over cycloid's", rep.collinearity, cycloid);
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new(6, "parabola caustic collapses to the focus");
    for a in [1.0, 0.35] {
        let curve = parabola_mirror(a).unwrap();
        let opts = ReconstructOptions {
            anchor: Anchor::at(parabola_point(a, 0.2)),
            tolerance: 1e-12,
        };
        let range = iv(0.2, PI - 0.2, 500);
        let mirror = inclination::reconstruct_with(&curve, &range, &opts).unwrap();
        let implicit = mirror
            .iter()
            .map(|s| (s.position.y.powi(2) + 2.0 * a * s.position.x + a * a).abs())
            .fold(0.0, f64::max);
        let cc = caustic_curve_with(&curve, &TiltField::reflection(), &range, &opts).unwrap();
        o.holds("every caustic point finite", cc.failures().count() == 0);
        o.below(&format!("scatter (A = {a})"), scatter(&cc.positions()), 1e-7);
        o.below(&format!("|y^2 + 2Ax + A^2| (A = {a})"), implicit, 1e-8);
    }
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new(7, "skew families");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let range = iv(-1.0, 2.0, 300);
    let (mut pbp, mut inv, mut ode) = (0.0f64, 0.0f64, 0.0f64);
    let (mut degeneration, mut differences) = (true, true);
    for _ in 0..20 {
        let phi0: f64 = rng.gen_range(-1.2..1.2);
        let a: f64 = rng.gen_range(0.1..2.5) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let scale = rng.gen_range(0.5..2.0);
        let curve = skew::point_by_point_curve(scale, a, phi0).unwrap();
        pbp = pbp.max(skew::skew_residual(&curve, phi0, a, SkewCase::PointByPoint, 0.0, &range).unwrap());
    }
    for _ in 0..20 {
        let phi0: f64 = rng.gen_range(-1.2..1.2);
        let a: f64 = rng.gen_range(0.1..2.5) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let alpha = rng.gen_range(-3.0..3.0);
        let (ca, cb) = skew::inverse_position_coefficients(a, phi0, alpha).unwrap();
        let curve = skew::inverse_position_curve(ca, cb, a, phi0).unwrap();
        inv = inv.max(skew::skew_residual(&curve, phi0, a, SkewCase::InversePosition, alpha, &range).unwrap());
        let w2 = (a * a / phi0.cos().powi(2)) - phi0.tan().powi(2);
        // second derivative by central differences of R itself
        let h = 1e-3;
        for t in range.grid() {
            let d2 = (-curve.radius(t + 2.0 * h) + 16.0 * curve.radius(t + h) - 30.0 * curve.radius(t)
                + 16.0 * curve.radius(t - h)
                - curve.radius(t - 2.0 * h))
                / (12.0 * h * h);
            let analytic = curve.radius_second_derivative(t);
            ode = ode.max((analytic + w2 * curve.radius(t)).abs());
            differences &= (d2 - analytic).abs() <= 1e-6 * (1.0 + analytic.abs());
        }
        let s = phi0.sin();
        degeneration &= skew::inverse_shape(s, phi0).unwrap() == InverseShape::Involute
            && skew::inverse_shape(-s, phi0).unwrap() == InverseShape::Involute
            && skew::inverse_shape(s + 1e-6, phi0).unwrap() != InverseShape::Involute
            && skew::inverse_shape(s - 1e-6, phi0).unwrap() != InverseShape::Involute;
    }
    o.below("point-by-point residual (20 draws)", pbp, 1e-9);
    o.below("inverse-position residual (20 draws)", inv, 1e-9);
    o.below("R'' + (a^2/cos^2 - tan^2) R", ode, 1e-9);
    o.holds("analytic R'' agrees with finite differences", differences);
    o.holds("involute exactly at a = +-sin(phi0)", degeneration);
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new(8, "delay roots and Lambert W");
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let range = iv(0.0, 3.0, 300);
    let (mut roots, mut curves, mut count) = (0.0f64, 0.0f64, 0usize);
    for _ in 0..20 {
        let a: f64 = rng.gen_range(0.1..2.5);
        let alpha: f64 = rng.gen_range(0.05..2.5);
        let phi0: f64 = rng.gen_range(-1.2..1.2);
        for r in skew::delay_roots(a, alpha, phi0, &[-3, -2, -1, 0, 1, 2, 3]).unwrap() {
            // λ + tan φ₀ = (a/cos φ₀) e^{−αλ}
            let lhs = r.lambda + Complex64::new(phi0.tan(), 0.0);
            let rhs = (a / phi0.cos()) * (-alpha * r.lambda).exp();
            roots = roots.max((lhs - rhs).norm() / rhs.norm().max(1.0));
            count += 1;
        }
        let spec = SkewFamilySpec {
            case: SkewCase::Delay,
            phi0,
            factor_a: a,
            alpha,
            coefficients: vec![(1.0, 0.0)],
            root_indices: vec![0],
        };
        let family = skew::build_family(&spec).unwrap();
        curves = curves.max(family.residual(&range).unwrap());
    }
    o.below(&format!("characteristic residual ({count} roots)"), roots, 1e-10);
    o.below("delay similarity residual of e^(lambda_0 t)", curves, 1e-9);
    let mut lw = 0.0f64;
    for _ in 0..400 {
        let z = Complex64::from_polar(rng.gen_range(0.1..10.0), rng.gen_range(-PI..PI));
        for k in -3..=3 {
            let w = lambert_w(k, z).unwrap();
            lw = lw.max((w * w.exp() - z).norm() / z.norm());
        }
    }
    o.below("W e^W round trip on 0.1 <= |z| <= 10", lw, 1e-12);
    o
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new(9, "Puiseux cusps on a logarithmic spiral");
    let rep = skew::puiseux_diagnostics(0.2, 3.0, &iv(0.1, 4.0 * PI, 4000)).unwrap();
    o.holds("at least 10 cusps", rep.cusp_angles.len() >= 10);
    o.below("cusp angle error from n pi/3", rep.max_angle_error, 1e-9);
    o.holds("spiral center exists", rep.center.is_some());
    o.holds("expected ratio is e^(0.2 pi/3)", (rep.expected_ratio - (0.2 * PI / 3.0).exp()).abs() < 1e-15);
    o.below("distance ratio error", rep.ratio_error, 1e-6);
    o
}

fn criterion_10() -> Outcome {
    let mut o = Outcome::new(10, "tan coefficients");
    let t = tan_coeffs(30);
    let err = (0..=480)
        .map(|i| -1.2 + 2.4 * i as f64 / 480.0)
        .map(|x| (t.evaluate(x) - x.tan()).abs())
        .fold(0.0, f64::max);
    o.below("series vs tan on |t| <= 1.2", err, 1e-10);
    let inner = (0..=200)
        .map(|i| -0.8 + 1.6 * i as f64 / 200.0)
        .map(|x| (t.evaluate(x) - x.tan()).abs())
        .fold(0.0, f64::max);
    o.notes.push(format!("on |t| <= 0.8 the error is {inner:.3e}"));
    o.holds("bound for every n >= 1", t.bound_violations().is_empty() && (1..=30).all(|n| t.get(n) <= TanCoefficients::bound(n)));
    // the zeta expression taken at face value gives 1 for the θ³ coefficient; tan has 1/3
    let zeta_form = |n: i64| 2.0 * (4f64.powi(n as i32) - 1.0) * zeta_even(2 * n).unwrap() / PI.powi(2 * n as i32);
    o.holds("zeta expression mismatches at n = 1", (zeta_form(1) - 1.0).abs() < 1e-14 && (t.get(1) - 1.0 / 3.0).abs() < 1e-16);
    o.holds("zeta expression shifted by one matches", (1..=12).all(|n| (zeta_form(n as i64 + 1) - t.get(n)).abs() <= 1e-13 * t.get(n)));
    o
}

fn run_cli(args: &[&str], dir: &std::path::Path) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_caustics"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("cli runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_11(started: Instant) -> Outcome {
    let mut o = Outcome::new(11, "determinism and runtime");
    let dir = tempfile::tempdir().unwrap();
    let jobs: [&[&str]; 4] = [
        &["caustic", "--curve", "circle", "--tilt", "reflection", "--interval", "0:pi", "--out-csv", "n.csv", "--out-svg", "n.svg"],
        &["pantograph", "--m", "2", "--out-csv", "p.csv", "--out-svg", "p.svg"],
        &["skew", "--case", "delay", "--phi0", "pi/6", "--alpha", "1", "--roots", "0,-1", "--coefficients", "1:0,0.5:0.5", "--out-csv", "s.csv"],
        &["verify", "--suite", "nephroid,delay,lambert", "--seed", "11"],
    ];
    for job in jobs {
        let files: Vec<&str> = job.iter().copied().filter(|a| a.ends_with(".csv") || a.ends_with(".svg")).collect();
        let (c1, s1) = run_cli(job, dir.path());
        let first: Vec<Vec<u8>> = files.iter().map(|f| std::fs::read(dir.path().join(f)).unwrap_or_default()).collect();
        let (c2, s2) = run_cli(job, dir.path());
        let second: Vec<Vec<u8>> = files.iter().map(|f| std::fs::read(dir.path().join(f)).unwrap_or_default()).collect();
        o.holds(&format!("{} exits 0", job[0]), c1 == 0 && c2 == 0);
        o.holds(&format!("{} output identical", job[0]), s1 == s2 && first == second && first.iter().all(|b| !b.is_empty()));
    }
    let (code, _) = run_cli(&["curve", "--curve", "puiseux:0.2,3", "--out-csv", "c.csv"], dir.path());
    let (code2, _) = run_cli(&["curve", "--from-csv", "c.csv", "--out-csv", "c2.csv"], dir.path());
    o.holds("curve CSV round trip", code == 0 && code2 == 0 && std::fs::read(dir.path().join("c.csv")).unwrap() == std::fs::read(dir.path().join("c2.csv")).unwrap());
    std::fs::write(dir.path().join("empty.cfg"), "").unwrap();
    let (code, _) = run_cli(&["verify", "--suite", "all", "--config", "empty.cfg"], dir.path());
    o.holds("empty suite config exits 2", code == 2);
    o.below("seconds elapsed", started.elapsed().as_secs_f64(), 120.0);
    o
}

fn main() {
    let started = Instant::now();
    let criteria: Vec<fn() -> Outcome> = vec![
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut outcomes: Vec<Outcome> = criteria.into_iter().map(|f| f()).collect();
    outcomes.push(criterion_11(started));

    let mut unexpected = Vec::new();
    for o in &outcomes {
        let known = KNOWN_UNATTAINABLE.contains(&o.id);
        let tag = match (o.passed(), known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known, see README)",
            (false, false) => "FAIL",
        };
        println!("criterion {:>2} {:<42} {tag}", o.id, o.title);
        for n in &o.notes {
            println!("    {n}");
        }
        for f in &o.failures {
            println!("    ! {f}");
        }
        if o.passed() == known {
            unexpected.push(o.id);
        }
    }
    println!("acceptance finished in {:.1} s", started.elapsed().as_secs_f64());
    if !unexpected.is_empty() {
        eprintln!("unexpected acceptance outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
