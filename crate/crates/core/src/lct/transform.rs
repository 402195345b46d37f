use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::kernel::{check_b, check_c, coordinate_constant, h_p, h_x, momentum_constant};
use super::{LctParams, DEGENERATE_THRESHOLD};
use crate::error::{Error, Result};
use crate::numerics::{
    fourier_sum, resample, Representation, SampledWave, UniformGrid, Warning,
    FOURIER_DECAY_THRESHOLD,
};

/// Largest input step that resolves the kernel chirp for a transform from
/// `input` onto `output`: `πħ|b|(Δx/Δp) / (|a|·x_max + y_max)`.
pub fn max_step_x(params: &LctParams, input: &UniformGrid, output: &UniformGrid) -> f64 {
    let reach = params.a().abs() * input.max_abs() + output.max_abs();
    core::f64::consts::PI * h_x(params) * params.b().abs() / reach
}

/// Momentum-side mirror of [`max_step_x`]: `πħ|c|(Δp/Δx) / (|d|·p_max + k_max)`.
pub fn max_step_p(params: &LctParams, input: &UniformGrid, output: &UniformGrid) -> f64 {
    let reach = params.d().abs() * input.max_abs() + output.max_abs();
    core::f64::consts::PI * h_p(params) * params.c().abs() / reach
}

fn check_step(step: f64, required: f64) -> Result<()> {
    if step > required * (1.0 + 1e-12) {
        Err(Error::ChirpUndersampled { step, required })
    } else {
        Ok(())
    }
}

fn finish(
    values: Vec<Complex64>,
    output: &UniformGrid,
    representation: Representation,
    input: &SampledWave,
) -> Result<SampledWave> {
    let mut out =
        SampledWave::new(*output, values, representation)?.with_warnings(input.warnings());
    if let Some(w) = input.decay_warning(FOURIER_DECAY_THRESHOLD) {
        out.push_warning(w);
    }
    Ok(out)
}

/// `⟨y|ψ⟩ = ∫ ⟨y|x⟩ψ(x) dx` on `out_grid`.
///
/// The quadratic-phase integral is split as chirp × Fourier sum × chirp and
/// evaluated with the trapezoid rule, which is spectrally accurate once the
/// input step satisfies [`max_step_x`].
pub fn apply_lct_x(
    params: &LctParams,
    wave: &SampledWave,
    out_grid: &UniformGrid,
) -> Result<SampledWave> {
    wave.require(Representation::Coordinate)?;
    check_b(params)?;
    let grid = *wave.grid();
    check_step(grid.step(), max_step_x(params, &grid, out_grid))?;
    let hb = h_x(params) * params.b();
    let (a, d) = (params.a(), params.d());
    let pre: Vec<Complex64> = wave
        .values()
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let x = grid.point(j);
            v * Complex64::from_polar(grid.trapezoid_weight(j), a * x * x / (2.0 * hb))
        })
        .collect();
    let mut values = fourier_sum(&pre, &grid, out_grid, -1.0 / hb);
    let constant = coordinate_constant(params);
    for (m, v) in values.iter_mut().enumerate() {
        let y = out_grid.point(m);
        *v *= constant * Complex64::from_polar(1.0, d * y * y / (2.0 * hb));
    }
    finish(values, out_grid, Representation::Coordinate, wave)
}

/// `⟨k|ψ⟩ = ∫ ⟨k|p⟩ψ̃(p) dp` on `out_grid`, the momentum-side mirror of
/// [`apply_lct_x`].
pub fn apply_lct_p(
    params: &LctParams,
    wave: &SampledWave,
    out_grid: &UniformGrid,
) -> Result<SampledWave> {
    wave.require(Representation::Momentum)?;
    check_c(params)?;
    let grid = *wave.grid();
    check_step(grid.step(), max_step_p(params, &grid, out_grid))?;
    let hc = h_p(params) * params.c();
    let (a, d) = (params.a(), params.d());
    let pre: Vec<Complex64> = wave
        .values()
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let p = grid.point(j);
            v * Complex64::from_polar(grid.trapezoid_weight(j), -d * p * p / (2.0 * hc))
        })
        .collect();
    let mut values = fourier_sum(&pre, &grid, out_grid, 1.0 / hc);
    let constant = momentum_constant(params);
    for (m, v) in values.iter_mut().enumerate() {
        let k = out_grid.point(m);
        *v *= constant * Complex64::from_polar(1.0, -a * k * k / (2.0 * hc));
    }
    finish(values, out_grid, Representation::Momentum, wave)
}

/// Samples `values` (on `grid`) re-labelled by `y = factor·x`: the output
/// lattice is `grid` scaled by `factor`, reversed when `factor < 0`.
fn relabel(
    values: &[Complex64],
    grid: &UniformGrid,
    factor: f64,
) -> Result<(UniformGrid, Vec<Complex64>)> {
    let out = grid.scaled(factor)?;
    let vals = if factor > 0.0 {
        values.to_vec()
    } else {
        values.iter().rev().copied().collect()
    };
    Ok((out, vals))
}

/// The `b → 0⁺` limit of [`apply_lct_x`]:
/// `ψ'(y) = e^{iε + iπ sgn(a)/4} |a|^{-1/2} e^{icy²/(2ħa·Δx/Δp)} ψ(y/a)`,
/// sampled on the input grid scaled by `a`.
pub fn apply_lct_degenerate(params: &LctParams, wave: &SampledWave) -> Result<SampledWave> {
    wave.require(Representation::Coordinate)?;
    if params.b().abs() >= DEGENERATE_THRESHOLD {
        return Err(Error::NotDegenerate {
            parameter: "b",
            value: params.b(),
        });
    }
    let a = params.a();
    if a.abs() < DEGENERATE_THRESHOLD {
        return Err(Error::FullyDegenerate);
    }
    let (grid, mut values) = relabel(wave.values(), wave.grid(), a)?;
    let h = h_x(params);
    let global = Complex64::from_polar(
        a.abs().powf(-0.5),
        params.epsilon() + FRAC_PI_4 * a.signum(),
    );
    for (m, v) in values.iter_mut().enumerate() {
        let y = grid.point(m);
        *v *= global * Complex64::from_polar(1.0, params.c() * y * y / (2.0 * h * a));
    }
    let mut out =
        SampledWave::new(grid, values, Representation::Coordinate)?.with_warnings(wave.warnings());
    if a != 1.0 {
        out.push_warning(Warning::Resampled);
    }
    Ok(out)
}

/// The `c → 0⁺` limit of [`apply_lct_p`]:
/// `ψ̃'(k) = -i e^{iε - iπ sgn(d)/4} |d|^{-1/2} e^{-ibk²/(2ħd·Δp/Δx)} ψ̃(k/d)`.
pub fn apply_lct_degenerate_p(params: &LctParams, wave: &SampledWave) -> Result<SampledWave> {
    wave.require(Representation::Momentum)?;
    if params.c().abs() >= DEGENERATE_THRESHOLD {
        return Err(Error::NotDegenerate {
            parameter: "c",
            value: params.c(),
        });
    }
    let d = params.d();
    if d.abs() < DEGENERATE_THRESHOLD {
        return Err(Error::FullyDegenerate);
    }
    let (grid, mut values) = relabel(wave.values(), wave.grid(), d)?;
    let h = h_p(params);
    let global = Complex64::new(0.0, -1.0)
        * Complex64::from_polar(
            d.abs().powf(-0.5),
            params.epsilon() - FRAC_PI_4 * d.signum(),
        );
    for (m, v) in values.iter_mut().enumerate() {
        let k = grid.point(m);
        *v *= global * Complex64::from_polar(1.0, -params.b() * k * k / (2.0 * h * d));
    }
    let mut out =
        SampledWave::new(grid, values, Representation::Momentum)?.with_warnings(wave.warnings());
    if d != 1.0 {
        out.push_warning(Warning::Resampled);
    }
    Ok(out)
}

/// Applies the transform in the wave's own representation, routing to the
/// scaling limit when the relevant parameter is degenerate.
///
/// Degenerate results live on a rescaled copy of the input grid; when
/// `out_grid` is given they are moved onto it by band-limited interpolation.
pub fn apply_lct(
    params: &LctParams,
    wave: &SampledWave,
    out_grid: Option<&UniformGrid>,
) -> Result<SampledWave> {
    let coordinate = wave.representation() == Representation::Coordinate;
    let kernel = if coordinate { params.b() } else { params.c() };
    if kernel.abs() >= DEGENERATE_THRESHOLD {
        let out = out_grid.copied().unwrap_or(*wave.grid());
        return if coordinate {
            apply_lct_x(params, wave, &out)
        } else {
            apply_lct_p(params, wave, &out)
        };
    }
    let scaled = if coordinate {
        apply_lct_degenerate(params, wave)?
    } else {
        apply_lct_degenerate_p(params, wave)?
    };
    match out_grid {
        Some(g) if !g.approx_eq(scaled.grid()) => {
            let mut out = resample(&scaled, params.units(), g)?;
            out.push_warning(Warning::Resampled);
            Ok(out)
        }
        _ => Ok(scaled),
    }
}
