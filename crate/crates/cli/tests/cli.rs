//! End-to-end runs of the `lctkit` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lctkit::format::{parse_moments, CoefficientFile, WaveFile};
use lctkit_core::numerics::{fidelity, trapezoid_norm, Representation};
use tempfile::TempDir;

fn lctkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lctkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> Output {
    let out = lctkit(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn wave(p: &Path) -> WaveFile {
    WaveFile::parse(&std::fs::read_to_string(p).unwrap(), "test").unwrap()
}

/// Reads `key=value` from the last stderr line starting with `key=`.
fn reported(out: &Output, key: &str) -> f64 {
    stderr(out)
        .split_whitespace()
        .filter_map(|w| w.strip_prefix(&format!("{key}=")))
        .next_back()
        .unwrap_or_else(|| panic!("no {key} in {}", stderr(out)))
        .parse()
        .unwrap()
}

#[test]
fn basis_wave_is_normalized() {
    let dir = TempDir::new().unwrap();
    let f = path(&dir, "g.csv");
    ok(&[
        "basis",
        "--n",
        "0",
        "--X",
        "0",
        "--P",
        "0",
        "--delta-p",
        "0.5",
        "--grid",
        "-8:0.01:8",
        "-o",
        s(&f),
    ]);
    let w = wave(&f).wave;
    assert_eq!(w.len(), 1601);
    assert!((w.norm() - 1.0).abs() < 1e-10);
}

#[test]
fn momentum_basis_matches_fourier_of_coordinate_basis() {
    let dir = TempDir::new().unwrap();
    let (x, p, ft) = (
        path(&dir, "x.csv"),
        path(&dir, "p.json"),
        path(&dir, "ft.json"),
    );
    let state = ["--n", "2", "--X", "0.5", "--P", "-1", "--delta-p", "0.6"];
    ok(&[&["basis"][..], &state, &["-o", s(&x)]].concat());
    ok(&[
        &["basis", "--rep", "momentum", "--format", "json"][..],
        &state,
        &["-o", s(&p)],
    ]
    .concat());
    let pw = wave(&p).wave;
    assert_eq!(pw.representation(), Representation::Momentum);
    let g = pw.grid();
    let spec = format!("{}:{}:{}", g.start(), g.step(), g.end() + 0.5 * g.step());
    ok(&[
        "fourier",
        s(&x),
        "--grid",
        &spec,
        "--format",
        "json",
        "-o",
        s(&ft),
    ]);
    let fw = wave(&ft).wave;
    assert!(fidelity(&fw, &pw).unwrap() > 1.0 - 1e-8);
    let max = fw
        .values()
        .iter()
        .zip(pw.values())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    assert!(max < 1e-7, "{max}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["basis", "--n", "-1", "--delta-p", "0.5"][..],
        &["basis", "--n", "0", "--delta-p", "0.5", "--grid", "1:2"],
        &["basis", "--n", "0", "--delta-p", "-0.5"],
        &["frobnicate"],
        &["verify", "--only", "99"],
    ] {
        let out = lctkit(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
    assert_eq!(ok(&["--help"]).status.code(), Some(0));
}

#[test]
fn moments_of_basis_file() {
    let dir = TempDir::new().unwrap();
    let (f, m, u, mu) = (
        path(&dir, "b.csv"),
        path(&dir, "m.csv"),
        path(&dir, "u.csv"),
        path(&dir, "mu.json"),
    );
    ok(&[
        "basis",
        "--n",
        "1",
        "--X",
        "1",
        "--P",
        "-2",
        "--delta-p",
        "0.5",
        "-o",
        s(&f),
    ]);
    ok(&["moments", s(&f), "-o", s(&m)]);
    let text = std::fs::read_to_string(&m).unwrap();
    assert!(text.contains("normalized,false"));
    let got = parse_moments(&text, "m").unwrap();
    let dx = 1.0;
    assert!((got.mean_x - 1.0).abs() < 1e-7);
    assert!((got.mean_p + 2.0).abs() < 1e-7);
    assert!((got.var_x - 3.0 * dx * dx).abs() < 1e-7);
    assert!((got.var_p - 3.0 * 0.25).abs() < 1e-7);
    assert!((got.codisp_xp.im - 0.5).abs() < 1e-7);

    // scale the samples by 3: same moments, flagged as normalized
    let mut w = wave(&f);
    w.wave.values_mut().iter_mut().for_each(|v| *v *= 3.0);
    std::fs::write(&u, w.render(lctkit::format::OutputFormat::Csv)).unwrap();
    let out = ok(&["moments", s(&u), "--format", "json", "-o", s(&mu)]);
    assert!(stderr(&out).contains("renormalized"));
    let text = std::fs::read_to_string(&mu).unwrap();
    assert!(text.contains("\"normalized\": true"));
    let scaled = parse_moments(&text, "mu").unwrap();
    assert!((scaled.var_x - got.var_x).abs() < 1e-10);
    assert!((scaled.mean_p - got.mean_p).abs() < 1e-10);
}

#[test]
fn quarter_turn_matches_fourier_output() {
    let dir = TempDir::new().unwrap();
    let (b, ft, out) = (
        path(&dir, "b.csv"),
        path(&dir, "ft.csv"),
        path(&dir, "out.csv"),
    );
    // Δp = ħ/√2 makes Δx = Δp, so the rotated variable is the momentum itself
    let dp = std::f64::consts::FRAC_1_SQRT_2.to_string();
    ok(&[
        "basis",
        "--n",
        "1",
        "--X",
        "0.3",
        "--P",
        "0.2",
        "--delta-p",
        &dp,
        "-o",
        s(&b),
    ]);
    ok(&["fourier", s(&b), "-o", s(&ft)]);
    let run = ok(&[
        "lct",
        s(&b),
        "--iso-alpha",
        "1.5707963",
        "--delta-p",
        &dp,
        "--compare",
        s(&ft),
        "-o",
        s(&out),
    ]);
    assert!(reported(&run, "fidelity") >= 1.0 - 1e-8, "{}", stderr(&run));
    let run = ok(&[
        "frft",
        s(&b),
        "--alpha",
        "1.5707963",
        "--delta-p",
        &dp,
        "--compare",
        s(&ft),
    ]);
    assert!(reported(&run, "fidelity") >= 1.0 - 1e-8);
}

#[test]
fn degenerate_params_take_the_scaling_path() {
    let dir = TempDir::new().unwrap();
    let (b, p, out) = (
        path(&dir, "b.csv"),
        path(&dir, "p.txt"),
        path(&dir, "out.csv"),
    );
    ok(&[
        "basis",
        "--n",
        "0",
        "--X",
        "0.5",
        "--delta-p",
        "0.5",
        "-o",
        s(&b),
    ]);
    std::fs::write(&p, "a=2\nb=0\nc=0.3\nd=0.5\ndelta_p=0.5\n").unwrap();
    let run = ok(&["lct", s(&b), "--params", s(&p), "-o", s(&out)]);
    assert!(stderr(&run).contains("scaling path"), "{}", stderr(&run));
    let w = wave(&out).wave;
    assert!((w.norm() - 1.0).abs() < 1e-8);
}

#[test]
fn undersampled_input_reports_required_step() {
    let dir = TempDir::new().unwrap();
    let (b, p) = (path(&dir, "b.csv"), path(&dir, "p.txt"));
    ok(&[
        "basis",
        "--n",
        "0",
        "--delta-p",
        "0.5",
        "--grid",
        "-10:0.2:10",
        "-o",
        s(&b),
    ]);
    std::fs::write(&p, "a=1\nb=0.01\nc=0\nd=1\ndelta_p=0.5\n").unwrap();
    let out = lctkit(&["lct", s(&b), "--params", s(&p), "--grid", "-10:0.2:10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("required step"), "{}", stderr(&out));
}

#[test]
fn bad_param_file_is_rejected() {
    let dir = TempDir::new().unwrap();
    let (b, p) = (path(&dir, "b.csv"), path(&dir, "p.txt"));
    ok(&["basis", "--n", "0", "--delta-p", "0.5", "-o", s(&b)]);
    std::fs::write(&p, "a=1\nb=1\nc=1\nd=1\ndelta_p=0.5\n").unwrap();
    let out = lctkit(&["lct", s(&b), "--params", s(&p)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not symplectic"));
    let out = lctkit(&["lct", s(&b), "--params", s(&p), "--hbar", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_synthesize_round_trip() {
    let dir = TempDir::new().unwrap();
    let (b, c, out) = (
        path(&dir, "b.csv"),
        path(&dir, "c.csv"),
        path(&dir, "out.csv"),
    );
    ok(&[
        "basis",
        "--n",
        "0",
        "--X",
        "0.6",
        "--P",
        "-0.4",
        "--delta-p",
        "0.7",
        "--grid",
        "-12:0.05:12",
        "-o",
        s(&b),
    ]);
    // 64 points over ±40 widths of the Δp = 0.5 probe (Δx = 1)
    let step_x = 80.0 / 63.0;
    let step_p = 40.0 / 63.0;
    let xg = format!("{}:{step_x}:{}", 0.6 - 40.0, 0.6 + 40.0 + 0.5 * step_x);
    let pg = format!("{}:{step_p}:{}", -0.4 - 20.0, -0.4 + 20.0 + 0.5 * step_p);
    ok(&[
        "analyze",
        s(&b),
        "--n",
        "0",
        "--delta-p",
        "0.5",
        "--x-grid",
        &xg,
        "--p-grid",
        &pg,
        "-o",
        s(&c),
    ]);
    let coeffs = CoefficientFile::parse(&std::fs::read_to_string(&c).unwrap(), "c").unwrap();
    assert_eq!(coeffs.coefficients.x_grid().count(), 64);
    assert_eq!(coeffs.coefficients.p_grid().count(), 64);
    let run = ok(&[
        "synthesize",
        s(&c),
        "--grid",
        "-12:0.05:12",
        "--compare",
        s(&b),
        "-o",
        s(&out),
    ]);
    assert!(
        reported(&run, "relative_l2_error") < 1e-3,
        "{}",
        stderr(&run)
    );
}

#[test]
fn analysis_at_the_centre_is_unimodular() {
    let dir = TempDir::new().unwrap();
    let (b, c) = (path(&dir, "b.csv"), path(&dir, "c.json"));
    ok(&[
        "basis",
        "--n",
        "3",
        "--X",
        "0.5",
        "--P",
        "1",
        "--delta-p",
        "0.4",
        "-o",
        s(&b),
    ]);
    ok(&[
        "analyze",
        s(&b),
        "--n",
        "3",
        "--delta-p",
        "0.4",
        "--x-grid",
        "0.5:1:1.5",
        "--p-grid",
        "0:1:2",
        "--format",
        "json",
        "-o",
        s(&c),
    ]);
    let coeffs = CoefficientFile::parse(&std::fs::read_to_string(&c).unwrap(), "c")
        .unwrap()
        .coefficients;
    assert!((coeffs.get(0, 1).norm() - 1.0).abs() < 1e-8);
}

#[test]
fn synthesis_of_zero_coefficients_is_zero() {
    let dir = TempDir::new().unwrap();
    let (c, out, series) = (
        path(&dir, "c.csv"),
        path(&dir, "out.csv"),
        path(&dir, "n.csv"),
    );
    let mut text = String::from("#n=0\n#delta_p=0.5\n#hbar=1\n#x_start=-1\n#x_step=1\n#x_count=3\n#p_start=-1\n#p_step=1\n#p_count=2\n");
    for x in [-1, 0, 1] {
        for p in [-1, 0] {
            text.push_str(&format!("{x},{p},0,0\n"));
        }
    }
    std::fs::write(&c, text).unwrap();
    ok(&["synthesize", s(&c), "--grid", "-5:0.1:5", "-o", s(&out)]);
    let w = wave(&out).wave;
    assert!(w.values().iter().all(|v| v.norm() == 0.0));

    std::fs::write(&series, "0,1,0\n").unwrap();
    ok(&[
        "synthesize",
        s(&series),
        "--series",
        "--delta-p",
        "0.5",
        "--grid",
        "-8:0.01:8",
        "-o",
        s(&out),
    ]);
    let w = wave(&out).wave;
    assert!((trapezoid_norm(w.grid(), w.values()) - 1.0).abs() < 1e-10);
    std::fs::write(&series, "1,1,0\n1,0,1\n").unwrap();
    let out = lctkit(&[
        "synthesize",
        s(&series),
        "--series",
        "--delta-p",
        "0.5",
        "--grid",
        "-8:0.01:8",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("duplicate"));
}

#[test]
fn dispersion_reports_the_eigenvalue() {
    let dir = TempDir::new().unwrap();
    let b = path(&dir, "b.csv");
    ok(&[
        "basis",
        "--n",
        "2",
        "--X",
        "0.1",
        "--P",
        "0.3",
        "--delta-p",
        "0.5",
        "-o",
        s(&b),
    ]);
    let run = ok(&[
        "dispersion",
        s(&b),
        "--kind",
        "sigma-p",
        "--X",
        "0.1",
        "--P",
        "0.3",
        "--delta-p",
        "0.5",
    ]);
    assert!((reported(&run, "expectation") - 5.0 * 0.25).abs() < 1e-8);
    assert!(reported(&run, "eigen_residual") < 1e-6);
}

#[test]
fn transform_moments_uses_the_moment_table() {
    let dir = TempDir::new().unwrap();
    let (b, m, t) = (
        path(&dir, "b.csv"),
        path(&dir, "m.csv"),
        path(&dir, "t.csv"),
    );
    ok(&[
        "basis",
        "--n",
        "1",
        "--X",
        "0.4",
        "--P",
        "-0.2",
        "--delta-p",
        "0.5",
        "-o",
        s(&b),
    ]);
    ok(&["moments", s(&b), "-o", s(&m)]);
    ok(&[
        "transform-moments",
        s(&m),
        "--iso-alpha",
        "0.8",
        "--delta-p",
        "0.5",
        "-o",
        s(&t),
    ]);
    let got = parse_moments(&std::fs::read_to_string(&t).unwrap(), "t").unwrap();
    // a rotation preserves the variances of a basis state of matching width
    assert!((got.var_x - 3.0).abs() < 1e-7);
    assert!((got.var_p - 0.75).abs() < 1e-7);
}

#[test]
fn verify_is_deterministic_and_fails_on_perturbation() {
    let a = ok(&[
        "verify", "--seed", "7", "--only", "4", "--only", "5", "--format", "json",
    ]);
    let b = ok(&[
        "verify", "--seed", "7", "--only", "4", "--only", "5", "--format", "json",
    ]);
    let strip = |o: &Output| -> Vec<String> {
        String::from_utf8_lossy(&o.stdout)
            .lines()
            .filter(|l| !l.contains("\"seconds\""))
            .map(str::to_string)
            .collect()
    };
    assert_eq!(strip(&a), strip(&b));
    let out = lctkit(&["verify", "--only", "7", "--perturb-symplectic", "1e-6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}
