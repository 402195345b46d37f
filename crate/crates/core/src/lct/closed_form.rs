use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::kernel::{check_b, check_c, sqrt_real};
use super::{transformed_frame, LctParams, TransformedFrame};
use crate::error::Result;
use crate::numerics::{Representation, SampledWave, UniformGrid};
use crate::phasespace::PhaseSpaceState;

fn complex_pow(z: Complex64, n: usize) -> Complex64 {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, _| acc * z)
}

/// Constant phase shared by both closed forms,
/// `bcKY/ħ - cd(a²+b²)Y²/(4Δy²) - ab(c²+d²)K²/(4Δk²)`.
pub(crate) fn constant_phase(params: &LctParams, frame: &TransformedFrame) -> f64 {
    let (a, b, c, d) = (params.a(), params.b(), params.c(), params.d());
    let rho2 = a * a + b * b;
    let sigma2 = c * c + d * d;
    let (y, k) = (frame.y, frame.k);
    b * c * k * y / params.units().hbar()
        - c * d * rho2 * y * y / (4.0 * frame.delta_y * frame.delta_y)
        - a * b * sigma2 * k * k / (4.0 * frame.delta_k * frame.delta_k)
}

/// `⟨y|n, X, P, Δp⟩` for the transformed basis state, sampled on `grid`.
///
/// The result is a harmonic Gaussian centred on the image `(Y, K)` with
/// coordinate width `Δy = √(a²+b²)Δx`, dressed by the chirp
/// `((a²+b²)d - a)/b · (y-Y)²/(4Δy²)` and the unimodular prefactor
/// `√((b+ia)/ρ)((a-ib)/ρ)ⁿe^{iε}`, `ρ = √(a²+b²)`.
///
/// The square root takes the principal branch, so for `b < 0` the result
/// differs from [`apply_lct_x`](super::apply_lct_x) by an overall sign.
pub fn closed_form_transform_x(
    params: &LctParams,
    state: &PhaseSpaceState,
    grid: &UniformGrid,
) -> Result<SampledWave> {
    check_b(params)?;
    let frame = transformed_frame(params, state)?;
    let (a, b, d) = (params.a(), params.b(), params.d());
    let rho = a.hypot(b);
    let n = state.n();
    let prefactor = (Complex64::new(b, a) / rho).sqrt()
        * complex_pow(Complex64::new(a, -b) / rho, n)
        * Complex64::from_polar(1.0, params.epsilon());
    let image = PhaseSpaceState::with_delta_x(n, frame.y, frame.k, frame.delta_y, params.units())?;
    let chirp = (rho * rho * d - a) / b / (4.0 * frame.delta_y * frame.delta_y);
    let global = prefactor * Complex64::from_polar(1.0, constant_phase(params, &frame));
    let values: Vec<Complex64> = grid
        .points()
        .map(|y| {
            let u = y - frame.y;
            global * Complex64::from_polar(1.0, chirp * u * u) * image.eval_x(y)
        })
        .collect();
    SampledWave::new(*grid, values, Representation::Coordinate)
}

/// `⟨k|n, X, P, Δp⟩`, the momentum-side mirror of [`closed_form_transform_x`]
/// with prefactor `√((-c+id)/σ)((d+ic)/σ)ⁿe^{iε}`, `σ = √(c²+d²)`, and the
/// image state of momentum width `Δk`.
pub fn closed_form_transform_p(
    params: &LctParams,
    state: &PhaseSpaceState,
    grid: &UniformGrid,
) -> Result<SampledWave> {
    check_c(params)?;
    let frame = transformed_frame(params, state)?;
    let (a, c, d) = (params.a(), params.c(), params.d());
    let sigma = c.hypot(d);
    let n = state.n();
    let prefactor = (Complex64::new(-c, d) / sigma).sqrt()
        * complex_pow(Complex64::new(d, c) / sigma, n)
        * Complex64::from_polar(1.0, params.epsilon());
    let image = PhaseSpaceState::new(n, frame.y, frame.k, frame.delta_k, params.units())?;
    let chirp = -(sigma * sigma * a - d) / c / (4.0 * frame.delta_k * frame.delta_k);
    let global = prefactor * Complex64::from_polar(1.0, constant_phase(params, &frame));
    let values: Vec<Complex64> = grid
        .points()
        .map(|k| {
            let u = k - frame.k;
            global * Complex64::from_polar(1.0, chirp * u * u) * image.eval_p(k)
        })
        .collect();
    SampledWave::new(*grid, values, Representation::Momentum)
}

/// Prefactor of the coordinate-side closed form on the branch the integral
/// transform actually produces, for any sign of `b`.
pub(crate) fn integral_prefactor_x(params: &LctParams, n: usize) -> Complex64 {
    let (a, b) = (params.a(), params.b());
    let rho = a.hypot(b);
    let gaussian = (Complex64::from(2.0 * PI * b) / Complex64::new(b, -a)).sqrt();
    Complex64::from_polar(1.0, params.epsilon())
        * sqrt_real(1.0 / (2.0 * PI * b))
        * gaussian
        * rho.sqrt()
        * complex_pow(Complex64::new(a, -b) / rho, n)
}
