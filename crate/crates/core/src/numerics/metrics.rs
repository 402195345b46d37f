use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::grid::UniformGrid;
use super::wave::SampledWave;
use crate::error::{Error, Result};

/// Trapezoid approximation of `∫ conj(a) b`.
pub fn trapezoid_inner(grid: &UniformGrid, a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter()
        .zip(b)
        .enumerate()
        .map(|(i, (x, y))| x.conj() * y * grid.trapezoid_weight(i))
        .sum()
}

pub fn trapezoid_norm(grid: &UniformGrid, a: &[Complex64]) -> f64 {
    a.iter()
        .enumerate()
        .map(|(i, x)| x.norm_sqr() * grid.trapezoid_weight(i))
        .sum::<f64>()
        .sqrt()
}

fn check_same_grid(a: &SampledWave, b: &SampledWave) -> Result<()> {
    if a.representation() != b.representation() {
        return Err(Error::RepresentationMismatch {
            expected: a.representation().name(),
        });
    }
    if !a.grid().approx_eq(b.grid()) {
        return Err(Error::GridMismatch);
    }
    Ok(())
}

/// `|⟨a|b⟩| / (‖a‖‖b‖)`, insensitive to global phase and scale.
pub fn fidelity(a: &SampledWave, b: &SampledWave) -> Result<f64> {
    check_same_grid(a, b)?;
    let na = a.norm();
    let nb = b.norm();
    if na == 0.0 || nb == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let overlap = trapezoid_inner(a.grid(), a.values(), b.values());
    Ok((overlap.norm() / (na * nb)).min(1.0))
}

/// `‖a - reference‖ / ‖reference‖`.
pub fn relative_l2_error(a: &SampledWave, reference: &SampledWave) -> Result<f64> {
    check_same_grid(a, reference)?;
    let nr = reference.norm();
    if nr == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let diff: alloc::vec::Vec<Complex64> = a
        .values()
        .iter()
        .zip(reference.values())
        .map(|(x, y)| x - y)
        .collect();
    Ok(trapezoid_norm(a.grid(), &diff) / nr)
}
