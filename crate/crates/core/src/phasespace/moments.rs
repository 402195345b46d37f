use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::numerics::{
    apply_momentum_multiplier, dft_unitary, trapezoid_inner, Representation, SampledWave, Units,
    Warning, MOMENT_DECAY_THRESHOLD,
};

/// Tolerance on `|‖ψ‖² - 1|` before moments renormalize the input.
pub const NORM_TOLERANCE: f64 = 1e-6;

/// First and second moments of a state.
///
/// `codisp_xp = ⟨(x-⟨x⟩)(p-⟨p⟩)⟩` and `codisp_px = ⟨(p-⟨p⟩)(x-⟨x⟩)⟩`; their
/// difference is `iħ` for any state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet {
    pub mean_x: f64,
    pub mean_p: f64,
    pub var_x: f64,
    pub var_p: f64,
    pub codisp_xp: Complex64,
    pub codisp_px: Complex64,
}

impl MomentSet {
    pub fn uncertainty_product(&self) -> f64 {
        self.var_x * self.var_p
    }

    /// Symmetrized covariance `Re σ_xp = (σ_xp + σ_px)/2`.
    pub fn covariance(&self) -> f64 {
        0.5 * (self.codisp_xp + self.codisp_px).re
    }
}

/// Moments estimated from samples, with the numerical caveats that apply.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentEstimate {
    pub moments: MomentSet,
    /// The input norm was off by more than [`NORM_TOLERANCE`] and was rescaled.
    pub normalized: bool,
    pub warnings: Vec<Warning>,
}

/// Moments of a sampled wave in either representation.
///
/// Coordinate moments come from the coordinate samples, momentum moments from
/// the unitary Fourier image, and the codispersions from applying `p̂`
/// spectrally.
pub fn moments(wave: &SampledWave, units: Units) -> Result<MomentEstimate> {
    let mut warnings: Vec<Warning> = wave.warnings().to_vec();
    if let Some(w) = wave.decay_warning(MOMENT_DECAY_THRESHOLD) {
        warnings.push(w);
    }
    let coordinate = match wave.representation() {
        Representation::Coordinate => wave.clone(),
        Representation::Momentum => dft_unitary(wave, units)?,
    };
    let norm = coordinate.norm();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::ZeroNorm);
    }
    let normalized = (norm * norm - 1.0).abs() > NORM_TOLERANCE;
    let psi = if normalized {
        warnings.push(Warning::Renormalized { norm });
        coordinate.normalized()?
    } else {
        coordinate
    };
    let grid = *psi.grid();
    let values = psi.values();
    let norm2 = psi.norm().powi(2);

    let weighted = |f: &dyn Fn(f64) -> f64| -> f64 {
        values
            .iter()
            .enumerate()
            .map(|(i, v)| grid.trapezoid_weight(i) * v.norm_sqr() * f(grid.point(i)))
            .sum::<f64>()
            / norm2
    };
    let mean_x = weighted(&|x| x);
    let var_x = weighted(&|x| (x - mean_x) * (x - mean_x));

    let spectrum = dft_unitary(&psi, units)?;
    let pgrid = *spectrum.grid();
    let pnorm2 = spectrum.norm().powi(2);
    let pweighted = |f: &dyn Fn(f64) -> f64| -> f64 {
        spectrum
            .values()
            .iter()
            .enumerate()
            .map(|(i, v)| pgrid.trapezoid_weight(i) * v.norm_sqr() * f(pgrid.point(i)))
            .sum::<f64>()
            / pnorm2
    };
    let mean_p = pweighted(&|p| p);
    let var_p = pweighted(&|p| (p - mean_p) * (p - mean_p));

    // χ = (p̂ - ⟨p⟩)ψ, ξ = (x - ⟨x⟩)ψ; σ_xp = ⟨ξ|χ⟩ and σ_px = conj(σ_xp).
    let chi = apply_momentum_multiplier(&psi, units, |p| Complex64::new(p - mean_p, 0.0))?;
    let xi: Vec<Complex64> = values
        .iter()
        .enumerate()
        .map(|(i, v)| v * (grid.point(i) - mean_x))
        .collect();
    let codisp_xp = trapezoid_inner(&grid, &xi, chi.values()) / norm2;

    let mut unique = Vec::with_capacity(warnings.len());
    for w in warnings {
        if !unique.contains(&w) {
            unique.push(w);
        }
    }
    Ok(MomentEstimate {
        moments: MomentSet {
            mean_x,
            mean_p,
            var_x,
            var_p,
            codisp_xp,
            codisp_px: codisp_xp.conj(),
        },
        normalized,
        warnings: unique,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phasespace::{eval_basis_p, eval_basis_x, PhaseSpaceState};

    #[test]
    fn basis_state_moments_are_exact() {
        for &hbar in &[1.0, 0.5] {
            let units = Units::new(hbar).unwrap();
            for n in [0usize, 1, 5] {
                let s = PhaseSpaceState::new(n, 1.0, -2.0, 0.5, units).unwrap();
                let est = moments(&eval_basis_x(&s, &s.default_grid_x()), units).unwrap();
                assert!(!est.normalized);
                assert!(est.warnings.is_empty(), "{:?}", est.warnings);
                let m = est.moments;
                let e = s.moments();
                assert!((m.mean_x - e.mean_x).abs() < 1e-8);
                assert!((m.mean_p - e.mean_p).abs() < 1e-8);
                assert!((m.var_x / e.var_x - 1.0).abs() < 1e-8);
                assert!((m.var_p / e.var_p - 1.0).abs() < 1e-8);
                assert!((m.codisp_xp - e.codisp_xp).norm() < 1e-8);
                assert!((m.codisp_px - e.codisp_px).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn momentum_input_gives_same_moments() {
        let units = Units::default();
        let s = PhaseSpaceState::new(2, -0.7, 0.9, 1.3, units).unwrap();
        let m = moments(&eval_basis_p(&s, &s.default_grid_p()), units)
            .unwrap()
            .moments;
        let e = s.moments();
        assert!((m.mean_x - e.mean_x).abs() < 1e-8);
        assert!((m.var_p / e.var_p - 1.0).abs() < 1e-8);
        assert!((m.codisp_xp - e.codisp_xp).norm() < 1e-8);
    }

    #[test]
    fn unnormalized_input_is_flagged_not_rejected() {
        let units = Units::default();
        let s = PhaseSpaceState::new(1, 0.0, 0.0, 0.5, units).unwrap();
        let mut w = eval_basis_x(&s, &s.default_grid_x());
        for v in w.values_mut() {
            *v *= 3.0;
        }
        let est = moments(&w, units).unwrap();
        assert!(est.normalized);
        assert!((est.moments.var_x / s.moments().var_x - 1.0).abs() < 1e-8);
        let zero = SampledWave::new(
            *w.grid(),
            alloc::vec![Complex64::new(0.0, 0.0); w.len()],
            Representation::Coordinate,
        )
        .unwrap();
        assert_eq!(moments(&zero, units), Err(Error::ZeroNorm));
    }
}
