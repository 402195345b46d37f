//! Argument parsing and subcommand dispatch.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use lctkit_core::isodispersion::{iso_params, IsoAngle};
use lctkit_core::lct::{
    apply_lct, plan_p, plan_x, transform_moments, LctParams, DEGENERATE_THRESHOLD, PLAN_COVERAGE,
    PLAN_MIN_POINTS,
};
use lctkit_core::numerics::{
    dft_unitary, dft_unitary_onto, fidelity, relative_l2_error, trapezoid_inner, Representation,
    SampledWave, Units,
};
use lctkit_core::phasespace::{
    analyze, apply_dispersion, eval_basis_p, eval_basis_x, moments, synthesize_over_n,
    synthesize_over_xp, DispersionKind, DispersionOperatorSpec, PhaseSpaceState,
    COVERAGE_THRESHOLD,
};
use lctkit_core::Complex64;

use crate::error::{CliError, CliResult};
use crate::format::{
    parse_moments, parse_params, render_moments, CoefficientFile, OutputFormat, WaveFile,
};
use crate::gridspec::parse_grid;
use crate::verify::{self, VerifyOptions};

#[derive(Debug, Parser)]
#[command(
    name = "lctkit",
    version,
    about = "Phase-space states and linear canonical transforms of 1-D wavefunctions"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Reduced Planck constant [default: 1, or the value stored in input files]
    #[arg(long, global = true)]
    pub hbar: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Write the result here instead of standard output
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RepArg {
    Coordinate,
    Momentum,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    SigmaX,
    SigmaP,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    #[arg(long)]
    pub n: usize,
    /// Coordinate centre
    #[arg(long = "X", allow_hyphen_values = true, default_value_t = 0.0)]
    pub center_x: f64,
    /// Momentum centre
    #[arg(long = "P", allow_hyphen_values = true, default_value_t = 0.0)]
    pub center_p: f64,
    #[arg(long)]
    pub delta_p: f64,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    /// Input wave file
    pub input: PathBuf,
    /// Parameter file with a, b, c, d, delta_p, epsilon, hbar
    #[arg(
        long,
        conflicts_with = "iso_alpha",
        required_unless_present = "iso_alpha"
    )]
    pub params: Option<PathBuf>,
    /// Isodispersion rotation angle in radians
    #[arg(long, allow_hyphen_values = true)]
    pub iso_alpha: Option<f64>,
    /// Reference momentum width for `--iso-alpha`
    #[arg(long, requires = "iso_alpha")]
    pub delta_p: Option<f64>,
    /// Output grid start:step:end [default: planned from the input moments]
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Print the fidelity against this wave file
    #[arg(long)]
    pub compare: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a harmonic Gaussian basis state
    Basis {
        #[command(flatten)]
        state: StateArgs,
        /// Grid start:step:end [default: the state's recommended grid]
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long, value_enum, default_value_t = RepArg::Coordinate)]
        rep: RepArg,
    },
    /// Means, variances and codispersions of a wave
    Moments { input: PathBuf },
    /// Unitary Fourier transform between the coordinate and momentum pictures
    Fourier {
        input: PathBuf,
        /// Output grid start:step:end [default: the conjugate lattice]
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// Linear canonical transform of a wave
    Lct(TransformArgs),
    /// Fractional Fourier transform; shorthand for `lct --iso-alpha`
    Frft {
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long)]
        delta_p: f64,
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long)]
        compare: Option<PathBuf>,
    },
    /// Phase-space coefficients of a wave on an (X, P) grid
    Analyze {
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta_p: f64,
        #[arg(long, allow_hyphen_values = true)]
        x_grid: String,
        #[arg(long, allow_hyphen_values = true)]
        p_grid: String,
    },
    /// Rebuild a coordinate wave from phase-space coefficients
    ///
    /// The input is a coefficient file from `analyze`, or with `--series` a
    /// list of `n,re,im` rows summed at a fixed centre.
    Synthesize {
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long)]
        series: bool,
        #[arg(long = "X", allow_hyphen_values = true, default_value_t = 0.0)]
        center_x: f64,
        #[arg(long = "P", allow_hyphen_values = true, default_value_t = 0.0)]
        center_p: f64,
        /// Momentum width for `--series`
        #[arg(long)]
        delta_p: Option<f64>,
        /// Print the relative L2 error against this wave file
        #[arg(long)]
        compare: Option<PathBuf>,
    },
    /// Apply a dispersion operator
    Dispersion {
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long = "X", allow_hyphen_values = true, default_value_t = 0.0)]
        center_x: f64,
        #[arg(long = "P", allow_hyphen_values = true, default_value_t = 0.0)]
        center_p: f64,
        #[arg(long)]
        delta_p: f64,
    },
    /// Push a moment table through a transform
    TransformMoments {
        /// Moment table as written by `moments`
        input: PathBuf,
        #[arg(
            long,
            conflicts_with = "iso_alpha",
            required_unless_present = "iso_alpha"
        )]
        params: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        iso_alpha: Option<f64>,
        #[arg(long, requires = "iso_alpha")]
        delta_p: Option<f64>,
    },
    /// Run the property suite and print a pass/fail table
    Verify(VerifyOptions),
}

/// Where a command's primary output and notices go.
pub struct Io<'a> {
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn notice(&mut self, message: impl AsRef<str>) {
        let _ = writeln!(self.stderr, "{}", message.as_ref());
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_wave(path: &Path) -> CliResult<WaveFile> {
    WaveFile::parse(&read(path)?, &path.display().to_string())
}

fn emit(global: &GlobalArgs, io: &mut Io, text: &str) -> CliResult<()> {
    match &global.output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => io
            .stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn units_flag(global: &GlobalArgs) -> CliResult<Units> {
    Units::new(global.hbar.unwrap_or(1.0)).map_err(|e| CliError::usage(format!("--hbar: {e}")))
}

/// ħ stored in a file; an explicit `--hbar` must agree with it.
fn file_units(global: &GlobalArgs, hbar: f64, source: &Path) -> CliResult<Units> {
    if let Some(flag) = global.hbar {
        if flag != hbar {
            return Err(CliError::usage(format!(
                "--hbar {flag} conflicts with hbar={hbar} in {}",
                source.display()
            )));
        }
    }
    Ok(Units::new(hbar)?)
}

fn positive(name: &str, v: f64) -> CliResult<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(CliError::usage(format!(
            "--{name} must be positive, got {v}"
        )))
    }
}

fn grid_arg(spec: Option<&str>) -> CliResult<Option<lctkit_core::numerics::UniformGrid>> {
    spec.map(parse_grid).transpose()
}

pub fn run(cli: &Cli, io: &mut Io) -> CliResult<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Basis { state, grid, rep } => {
            let units = units_flag(g)?;
            let s = PhaseSpaceState::new(
                state.n,
                state.center_x,
                state.center_p,
                positive("delta-p", state.delta_p)?,
                units,
            )
            .map_err(|e| CliError::usage(e.to_string()))?;
            let grid = grid_arg(grid.as_deref())?;
            let wave = match rep {
                RepArg::Coordinate => eval_basis_x(&s, &grid.unwrap_or_else(|| s.default_grid_x())),
                RepArg::Momentum => eval_basis_p(&s, &grid.unwrap_or_else(|| s.default_grid_p())),
            };
            emit(g, io, &WaveFile::new(wave, units).render(g.format))
        }
        Command::Moments { input } => {
            let file = read_wave(input)?;
            let units = file_units(g, file.hbar, input)?;
            let est = moments(&file.wave, units)?;
            for w in &est.warnings {
                io.notice(format!("warning: {w}"));
            }
            emit(
                g,
                io,
                &render_moments(&est.moments, Some(est.normalized), g.format),
            )
        }
        Command::Fourier { input, grid } => {
            let file = read_wave(input)?;
            let units = file_units(g, file.hbar, input)?;
            let out = match grid_arg(grid.as_deref())? {
                Some(grid) => dft_unitary_onto(&file.wave, units, &grid)?,
                None => dft_unitary(&file.wave, units)?,
            };
            emit(g, io, &WaveFile::new(out, units).render(g.format))
        }
        Command::Lct(args) => {
            let file = read_wave(&args.input)?;
            let units = file_units(g, file.hbar, &args.input)?;
            let params = match (&args.params, args.iso_alpha) {
                (Some(path), _) => {
                    let p = parse_params(&read(path)?, &path.display().to_string())?;
                    if p.units() != units {
                        return Err(CliError::usage(format!(
                            "hbar={} in {} differs from hbar={} in {}",
                            p.units().hbar(),
                            path.display(),
                            units.hbar(),
                            args.input.display()
                        )));
                    }
                    p
                }
                (None, Some(alpha)) => {
                    let dp = args
                        .delta_p
                        .ok_or_else(|| CliError::usage("--iso-alpha needs --delta-p"))?;
                    iso_params(IsoAngle::new(alpha), positive("delta-p", dp)?, units)?
                }
                (None, None) => return Err(CliError::usage("give --params or --iso-alpha")),
            };
            transform(
                g,
                io,
                &params,
                file,
                args.grid.as_deref(),
                args.compare.as_deref(),
            )
        }
        Command::Frft {
            input,
            alpha,
            delta_p,
            grid,
            compare,
        } => {
            let file = read_wave(input)?;
            let units = file_units(g, file.hbar, input)?;
            let params = iso_params(IsoAngle::new(*alpha), positive("delta-p", *delta_p)?, units)?;
            transform(g, io, &params, file, grid.as_deref(), compare.as_deref())
        }
        Command::Analyze {
            input,
            n,
            delta_p,
            x_grid,
            p_grid,
        } => {
            let file = read_wave(input)?;
            let units = file_units(g, file.hbar, input)?;
            let (xg, pg) = (parse_grid(x_grid)?, parse_grid(p_grid)?);
            let coeffs = analyze(
                &file.wave,
                *n,
                positive("delta-p", *delta_p)?,
                &xg,
                &pg,
                units,
            )?;
            let mut warnings = Vec::new();
            let edge = coeffs.edge_ratio();
            if edge > COVERAGE_THRESHOLD {
                let w = format!(
                    "coefficient edge magnitude {edge:.3e} exceeds coverage threshold {COVERAGE_THRESHOLD:.1e}"
                );
                io.notice(format!("warning: {w}"));
                warnings.push(w);
            }
            let out = CoefficientFile {
                coefficients: coeffs,
                hbar: units.hbar(),
            };
            emit(g, io, &out.render(g.format, &warnings))
        }
        Command::Synthesize {
            input,
            grid,
            series,
            center_x,
            center_p,
            delta_p,
            compare,
        } => {
            let grid = parse_grid(grid)?;
            let text = read(input)?;
            let context = input.display().to_string();
            let (wave, units) = if *series {
                let dp = delta_p.ok_or_else(|| CliError::usage("--series needs --delta-p"))?;
                let units = units_flag(g)?;
                let terms = parse_series(&text, &context)?;
                let wave = synthesize_over_n(
                    &terms,
                    *center_x,
                    *center_p,
                    positive("delta-p", dp)?,
                    &grid,
                    units,
                )?;
                (wave, units)
            } else {
                let file = CoefficientFile::parse(&text, &context)?;
                let units = file_units(g, file.hbar, input)?;
                (synthesize_over_xp(&file.coefficients, &grid, units)?, units)
            };
            for w in wave.warnings() {
                io.notice(format!("warning: {w}"));
            }
            if let Some(path) = compare {
                let reference = read_wave(path)?.wave;
                let reference =
                    resample_for_compare(io, &reference, Representation::Coordinate, units, &grid)?;
                io.notice(format!(
                    "relative_l2_error={:.6e}",
                    relative_l2_error(&wave, &reference)?
                ));
            }
            emit(g, io, &WaveFile::new(wave, units).render(g.format))
        }
        Command::Dispersion {
            input,
            kind,
            center_x,
            center_p,
            delta_p,
        } => {
            let file = read_wave(input)?;
            let units = file_units(g, file.hbar, input)?;
            let kind = match kind {
                KindArg::SigmaX => DispersionKind::SigmaX,
                KindArg::SigmaP => DispersionKind::SigmaP,
            };
            let op = DispersionOperatorSpec::new(
                kind,
                *center_x,
                *center_p,
                positive("delta-p", *delta_p)?,
                units,
            )?;
            let out = apply_dispersion(&op, &file.wave, units)?;
            let grid = *file.wave.grid();
            let norm2 = file.wave.norm().powi(2);
            if norm2 > 0.0 {
                let lambda = trapezoid_inner(&grid, file.wave.values(), out.values()).re / norm2;
                let resid: Vec<Complex64> = out
                    .values()
                    .iter()
                    .zip(file.wave.values())
                    .map(|(s, v)| s - v * lambda)
                    .collect();
                let r = lctkit_core::numerics::trapezoid_norm(&grid, &resid) / norm2.sqrt();
                io.notice(format!("expectation={lambda:.12e} eigen_residual={r:.3e}"));
            }
            for w in out.warnings() {
                io.notice(format!("warning: {w}"));
            }
            emit(g, io, &WaveFile::new(out, units).render(g.format))
        }
        Command::TransformMoments {
            input,
            params,
            iso_alpha,
            delta_p,
        } => {
            let m = parse_moments(&read(input)?, &input.display().to_string())?;
            let params = match (params, iso_alpha) {
                (Some(path), _) => parse_params(&read(path)?, &path.display().to_string())?,
                (None, Some(alpha)) => {
                    let dp =
                        delta_p.ok_or_else(|| CliError::usage("--iso-alpha needs --delta-p"))?;
                    iso_params(
                        IsoAngle::new(*alpha),
                        positive("delta-p", dp)?,
                        units_flag(g)?,
                    )?
                }
                (None, None) => return Err(CliError::usage("give --params or --iso-alpha")),
            };
            emit(
                g,
                io,
                &render_moments(&transform_moments(&params, &m), None, g.format),
            )
        }
        Command::Verify(opts) => {
            let report = verify::run(opts)?;
            emit(g, io, &report.render(g.format))?;
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Failed(format!(
                    "{} of {} checks failed",
                    report.failures(),
                    report.outcomes.len()
                )))
            }
        }
    }
}

fn transform(
    g: &GlobalArgs,
    io: &mut Io,
    params: &LctParams,
    file: WaveFile,
    grid: Option<&str>,
    compare: Option<&Path>,
) -> CliResult<()> {
    let units = params.units();
    let wave = file.wave;
    let coordinate = wave.representation() == Representation::Coordinate;
    let (name, kernel) = if coordinate {
        ("b", params.b())
    } else {
        ("c", params.c())
    };
    let degenerate = kernel.abs() < DEGENERATE_THRESHOLD;
    let out_grid = match grid_arg(grid)? {
        Some(grid) => Some(grid),
        None if degenerate => None,
        None => {
            let m = moments(&wave, units)?.moments;
            let plan = if coordinate {
                plan_x(params, &m, PLAN_COVERAGE, PLAN_MIN_POINTS)?
            } else {
                plan_p(params, &m, PLAN_COVERAGE, PLAN_MIN_POINTS)?
            };
            Some(plan.output)
        }
    };
    if degenerate {
        io.notice(format!(
            "notice: |{name}| = {:.3e} is below {DEGENERATE_THRESHOLD:.0e}; using the scaling path",
            kernel.abs()
        ));
    }
    let out = apply_lct(params, &wave, out_grid.as_ref())?;
    for w in out.warnings() {
        io.notice(format!("warning: {w}"));
    }
    if let Some(path) = compare {
        let reference = read_wave(path)?.wave;
        let reference =
            resample_for_compare(io, &reference, out.representation(), units, out.grid())?;
        io.notice(format!("fidelity={:.15}", fidelity(&out, &reference)?));
    }
    emit(g, io, &WaveFile::new(out, units).render(g.format))
}

/// Moves a reference wave onto `grid` when the lattices differ. A reference
/// in the other representation is compared sample by sample at equal
/// numeric abscissae.
fn resample_for_compare(
    io: &mut Io,
    reference: &SampledWave,
    representation: Representation,
    units: Units,
    grid: &lctkit_core::numerics::UniformGrid,
) -> CliResult<SampledWave> {
    let reference = if reference.representation() == representation {
        reference.clone()
    } else {
        io.notice(format!(
            "notice: comparing a {} reference against {} output by abscissa value",
            reference.representation().name(),
            representation.name()
        ));
        SampledWave::new(
            *reference.grid(),
            reference.values().to_vec(),
            representation,
        )?
    };
    if reference.grid().approx_eq(grid) {
        Ok(reference)
    } else {
        Ok(lctkit_core::numerics::resample(&reference, units, grid)?)
    }
}

/// `n,re,im` rows, `#` lines ignored.
fn parse_series(text: &str, context: &str) -> CliResult<Vec<(usize, Complex64)>> {
    let mut terms = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        let bad = || CliError::format(context, format!("line {}: expected n,re,im", i + 1));
        let [n, re, im] = cells.as_slice() else {
            return Err(bad());
        };
        let n: usize = n.parse().map_err(|_| bad())?;
        let re: f64 = re.parse().map_err(|_| bad())?;
        let im: f64 = im.parse().map_err(|_| bad())?;
        terms.push((n, Complex64::new(re, im)));
    }
    Ok(terms)
}
