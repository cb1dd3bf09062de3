use std::path::Path;
use std::process::{Command, Output};

fn caustics(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_caustics"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn nephroid_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let o = caustics(
        dir.path(),
        &["caustic", "--curve", "circle", "--tilt", "reflection", "--interval", "0:pi", "--out-csv", "n.csv", "--out-svg", "n.svg"],
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("n.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("theta,theta1,x,y,R1,ray_length"));
    for line in lines {
        let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!((f[4] - 0.75 * f[0].cos()).abs() < 1e-12);
    }
    let svg = std::fs::read_to_string(dir.path().join("n.svg")).unwrap();
    for group in ["mirror", "caustic", "rays", "cusps", "cuspline"] {
        assert!(svg.contains(&format!("<g id=\"{group}\"")));
    }
    assert!(!svg.contains("fill=\"#"));
}

#[test]
fn pantograph_echoes_the_factor() {
    let dir = tempfile::tempdir().unwrap();
    let o = caustics(dir.path(), &["pantograph", "--m", "2", "--out-csv", "a.csv"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "a = 5/16"), "{out}");
    assert!(out.contains("vertical=false"));
    let csv = std::fs::read_to_string(dir.path().join("a.csv")).unwrap();
    assert!(csv.starts_with("n,a_n\n1,"));
    let o = caustics(dir.path(), &["pantograph", "--a", "3/16"]);
    assert!(stdout(&o).contains("m = 3\na = 3/16\n"));
    let o = caustics(dir.path(), &["pantograph", "--m", "2", "--a", "3/16"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn empty_suite_config_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("suites.cfg"), "# nothing enabled\n").unwrap();
    let o = caustics(dir.path(), &["verify", "--suite", "all", "--config", "suites.cfg"]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains("no suites"));
}

#[test]
fn verify_prints_a_table() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("suites.cfg"), "nephroid\ncycloid\nseed = 5\n").unwrap();
    let o = caustics(dir.path(), &["verify", "--config", "suites.cfg"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() >= 7);
    assert!(out.ends_with("0 failed\n"));
    let o = caustics(dir.path(), &["verify", "--config", "suites.cfg", "--suite", "delay"]);
    assert_eq!(code(&o), 2);
    // a tolerance no residual can meet turns the table red and the exit status numeric
    let o = caustics(dir.path(), &["verify", "--suite", "nephroid", "--tolerance", "1e-30"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn validation_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["caustic", "--curve", "ellipse"][..],
        &["caustic", "--curve", "circle", "--tilt", "refraction"],
        &["caustic", "--curve", "circle", "--interval", "0-pi"],
        &["caustic", "--curve", "circle", "--interval", "pi:0"],
        &["caustic", "--curve", "log_spiral:1"],
        &["skew", "--spec", "missing.txt"],
        &["skew", "--case", "sideways"],
        &["curve", "--from-csv", "missing.csv"],
        &["curve", "--curve", "circle", "--bogus-flag"],
        &["pantograph", "--a", "0.3"],
    ] {
        let o = caustics(dir.path(), args);
        assert_eq!(code(&o), 2, "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn numeric_failures_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    // pole of the parabola inside the interval
    let o = caustics(dir.path(), &["caustic", "--curve", "parabola:1", "--interval", "-1:1"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    // continuation deeper than the jet order allows
    let o = caustics(dir.path(), &["pantograph", "--m", "2", "--jet-order", "2", "--interval", "0:8pi"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    assert!(stderr(&o).contains("jet order"));
}

#[test]
fn skew_spec_file_is_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let spec = "case = delay\nphi0 = pi/6\na = 1\nalpha = 1\nroots = 0,-1\ncoefficients = 1:0, 0.5:0.25\n";
    std::fs::write(dir.path().join("fam.txt"), spec).unwrap();
    let o = caustics(dir.path(), &["skew", "--spec", "fam.txt", "--out-csv", "s.csv", "--out-svg", "s.svg"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("case = delay\n"));
    let residual: f64 = out
        .lines()
        .find_map(|l| l.strip_prefix("# skew residual = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(residual < 1e-9);
    assert!(dir.path().join("s.svg").exists());
}

#[test]
fn pi_literals_in_intervals() {
    let dir = tempfile::tempdir().unwrap();
    let a = caustics(dir.path(), &["curve", "--curve", "cycloid", "--interval", "pi/4:3*pi/4", "--samples", "3"]);
    let b = caustics(dir.path(), &["curve", "--curve", "cycloid", "--interval", "0.7853981633974483:2.356194490192345", "--samples", "3"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn curve_csv_round_trip_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    for curve in ["circle:2", "cycloid", "log_spiral:1,0.1", "parabola:0.5", "puiseux:0.2,3", "series:1,0,-0.5"] {
        let a = caustics(dir.path(), &["curve", "--curve", curve, "--out-csv", "a.csv"]);
        assert_eq!(code(&a), 0, "{curve}: {}", stderr(&a));
        let first = std::fs::read(dir.path().join("a.csv")).unwrap();
        caustics(dir.path(), &["curve", "--curve", curve, "--out-csv", "a.csv"]);
        assert_eq!(first, std::fs::read(dir.path().join("a.csv")).unwrap());
        let b = caustics(dir.path(), &["curve", "--from-csv", "a.csv", "--out-csv", "b.csv"]);
        assert_eq!(code(&b), 0);
        assert_eq!(first, std::fs::read(dir.path().join("b.csv")).unwrap(), "{curve}");
    }
}

#[test]
fn negative_values_are_not_flags() {
    let dir = tempfile::tempdir().unwrap();
    let o = caustics(dir.path(), &["skew", "--case", "delay", "--alpha", "-1", "--phi0", "-pi/8", "--a", "-0.5", "--roots", "0", "--coefficients", "1:0"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("advance problem"));
}
