use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::{LctParams, DEGENERATE_THRESHOLD};
use crate::error::{Error, Result};

/// Principal square root of a real number, `i√|v|` for negative `v`.
pub(crate) fn sqrt_real(v: f64) -> Complex64 {
    if v >= 0.0 {
        Complex64::new(v.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-v).sqrt())
    }
}

pub(crate) fn check_b(params: &LctParams) -> Result<()> {
    if params.b().abs() < DEGENERATE_THRESHOLD {
        return Err(Error::Degenerate {
            parameter: "b",
            value: params.b(),
            threshold: DEGENERATE_THRESHOLD,
        });
    }
    Ok(())
}

pub(crate) fn check_c(params: &LctParams) -> Result<()> {
    if params.c().abs() < DEGENERATE_THRESHOLD {
        return Err(Error::Degenerate {
            parameter: "c",
            value: params.c(),
            threshold: DEGENERATE_THRESHOLD,
        });
    }
    Ok(())
}

/// `ħΔx/Δp = 2Δx²`, the action unit of the coordinate-side kernel.
#[inline]
pub(crate) fn h_x(params: &LctParams) -> f64 {
    params.units().hbar() * params.scale()
}

/// `ħΔp/Δx = 2Δp²`, the action unit of the momentum-side kernel.
#[inline]
pub(crate) fn h_p(params: &LctParams) -> f64 {
    params.units().hbar() / params.scale()
}

/// Prefactors `(C, C')` of the kernels `⟨x|y⟩` and `⟨p|k⟩`.
///
/// Square roots of negative radicands take the principal branch.
pub fn kernel_constants(params: &LctParams) -> Result<(Complex64, Complex64)> {
    check_b(params)?;
    check_c(params)?;
    Ok((coordinate_constant(params), momentum_constant(params)))
}

pub(crate) fn coordinate_constant(params: &LctParams) -> Complex64 {
    let phase = Complex64::from_polar(1.0, params.epsilon());
    sqrt_real(1.0 / (2.0 * PI * h_x(params) * params.b())) * phase
}

pub(crate) fn momentum_constant(params: &LctParams) -> Complex64 {
    let phase = Complex64::from_polar(1.0, params.epsilon());
    Complex64::new(0.0, -1.0) * sqrt_real(1.0 / (2.0 * PI * h_p(params) * params.c())) * phase
}

/// `⟨x|y⟩ = C·exp[i(yx - (ax² + dy²)/2)/(ħb·Δx/Δp)]`.
pub fn kernel_xy(params: &LctParams, x: f64, y: f64) -> Result<Complex64> {
    check_b(params)?;
    let (a, d) = (params.a(), params.d());
    let arg = (y * x - 0.5 * (a * x * x + d * y * y)) / (h_x(params) * params.b());
    Ok(coordinate_constant(params) * Complex64::from_polar(1.0, arg))
}

/// `⟨p|k⟩ = C'·exp[-i(pk - (dp² + ak²)/2)/(ħc·Δp/Δx)]`.
pub fn kernel_pk(params: &LctParams, p: f64, k: f64) -> Result<Complex64> {
    check_c(params)?;
    let (a, d) = (params.a(), params.d());
    let arg = -(p * k - 0.5 * (d * p * p + a * k * k)) / (h_p(params) * params.c());
    Ok(momentum_constant(params) * Complex64::from_polar(1.0, arg))
}
