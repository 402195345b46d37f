//! Unitary Fourier transforms between coordinate and momentum samples.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::fft::chirp_z;
use super::grid::UniformGrid;
use super::wave::{Representation, SampledWave};
use super::{Units, FOURIER_DECAY_THRESHOLD};
use crate::error::Result;

/// `out_m = Σ_l v_l e^{iκ u_m t_l}` for input lattice `t` and output
/// lattice `u`, in `O((N+M) log(N+M))`.
pub fn fourier_sum(
    values: &[Complex64],
    input: &UniformGrid,
    output: &UniformGrid,
    kappa: f64,
) -> Vec<Complex64> {
    let (t0, dt) = (input.start(), input.step());
    let (u0, du) = (output.start(), output.step());
    let pre: Vec<Complex64> = values
        .iter()
        .enumerate()
        .map(|(l, &v)| v * Complex64::from_polar(1.0, kappa * u0 * l as f64 * dt))
        .collect();
    let mut out = chirp_z(&pre, output.count(), -kappa * du * dt);
    for (m, v) in out.iter_mut().enumerate() {
        *v *= Complex64::from_polar(1.0, kappa * output.point(m) * t0);
    }
    out
}

/// Reciprocal lattice of `grid`: step `2πħ/(N·step)`, centred on zero.
pub fn conjugate_grid(grid: &UniformGrid, units: Units) -> UniformGrid {
    let n = grid.count();
    let step = 2.0 * PI * units.hbar() / (n as f64 * grid.step());
    let start = -0.5 * (n as f64 - 1.0) * step;
    UniformGrid::new(start, step, n).expect("reciprocal of a valid grid is valid")
}

/// Unitary discrete Fourier transform onto the [`conjugate_grid`].
///
/// Coordinate samples map to momentum with `ψ̃(p) = (2πħ)^{-1/2} ∫ ψ(x)
/// e^{-ipx/ħ} dx`; momentum samples map back with the opposite sign. The
/// sampled map is exactly unitary, so a forward transform followed by
/// [`dft_unitary_onto`] the original grid reproduces the input.
pub fn dft_unitary(wave: &SampledWave, units: Units) -> Result<SampledWave> {
    let out = conjugate_grid(wave.grid(), units);
    dft_unitary_onto(wave, units, &out)
}

/// Fourier transform evaluated on an arbitrary output lattice.
pub fn dft_unitary_onto(
    wave: &SampledWave,
    units: Units,
    output: &UniformGrid,
) -> Result<SampledWave> {
    let hbar = units.hbar();
    let kappa = match wave.representation() {
        Representation::Coordinate => -1.0 / hbar,
        Representation::Momentum => 1.0 / hbar,
    };
    let scale = wave.grid().step() / (2.0 * PI * hbar).sqrt();
    let mut values = fourier_sum(wave.values(), wave.grid(), output, kappa);
    for v in &mut values {
        *v *= scale;
    }
    let mut result = SampledWave::new(*output, values, wave.representation().conjugate())?
        .with_warnings(wave.warnings());
    if let Some(w) = wave.decay_warning(FOURIER_DECAY_THRESHOLD) {
        result.push_warning(w);
    }
    Ok(result)
}

/// Multiplies a coordinate wave by `f(p̂)`, returning samples on the
/// original grid.
pub fn apply_momentum_multiplier(
    wave: &SampledWave,
    units: Units,
    mut f: impl FnMut(f64) -> Complex64,
) -> Result<SampledWave> {
    wave.require(Representation::Coordinate)?;
    let mut spectrum = dft_unitary(wave, units)?;
    let grid = *spectrum.grid();
    for (i, v) in spectrum.values_mut().iter_mut().enumerate() {
        *v *= f(grid.point(i));
    }
    dft_unitary_onto(&spectrum, units, wave.grid())
}

/// Band-limited interpolation of `wave` onto `output`. Points outside the
/// sampled span are set to zero rather than wrapped periodically.
pub fn resample(wave: &SampledWave, units: Units, output: &UniformGrid) -> Result<SampledWave> {
    if wave.grid().approx_eq(output) {
        return Ok(wave.clone());
    }
    let spectrum = dft_unitary(wave, units)?;
    let mut out = dft_unitary_onto(&spectrum, units, output)?;
    let half = 0.5 * wave.grid().step();
    let (lo, hi) = (wave.grid().start() - half, wave.grid().end() + half);
    for (i, v) in out.values_mut().iter_mut().enumerate() {
        let x = output.point(i);
        if x < lo || x > hi {
            *v = Complex64::new(0.0, 0.0);
        }
    }
    Ok(out)
}
