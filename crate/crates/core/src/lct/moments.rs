use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::params::scales_match;
use super::LctParams;
use crate::error::{Error, Result};
use crate::phasespace::{MomentSet, PhaseSpaceState};

/// Moments of the transformed state, computed from the input moments alone.
pub fn transform_moments(params: &LctParams, m: &MomentSet) -> MomentSet {
    let (a, b, c, d) = (params.a(), params.b(), params.c(), params.d());
    let s = params.scale();
    let sym = (m.codisp_xp + m.codisp_px).re;
    MomentSet {
        mean_x: a * m.mean_x + b * s * m.mean_p,
        mean_p: c / s * m.mean_x + d * m.mean_p,
        var_x: a * a * m.var_x + a * b * s * sym + b * b * s * s * m.var_p,
        var_p: (c / s) * (c / s) * m.var_x + c * d / s * sym + d * d * m.var_p,
        codisp_xp: Complex64::from(a * c / s * m.var_x + b * d * s * m.var_p)
            + m.codisp_xp * (a * d)
            + m.codisp_px * (b * c),
        codisp_px: Complex64::from(a * c / s * m.var_x + b * d * s * m.var_p)
            + m.codisp_xp * (b * c)
            + m.codisp_px * (a * d),
    }
}

/// Closed-form moments of a transformed basis state: centre `(Y, K)`,
/// variances `(2n+1)(a²+b²)Δx²`, `(2n+1)(c²+d²)Δp²` and codispersions
/// `(2n+1)(ac+bd)ħ/2 ± iħ/2`.
pub fn basis_state_transformed_moments(
    params: &LctParams,
    state: &PhaseSpaceState,
) -> Result<MomentSet> {
    let frame = transformed_frame(params, state)?;
    let (a, b, c, d) = (params.a(), params.b(), params.c(), params.d());
    let m = (2 * state.n() + 1) as f64;
    let half = 0.5 * params.units().hbar();
    let cov = m * (a * c + b * d) * half;
    Ok(MomentSet {
        mean_x: frame.y,
        mean_p: frame.k,
        var_x: m * (a * a + b * b) * params.delta_x() * params.delta_x(),
        var_p: m * (c * c + d * d) * params.delta_p() * params.delta_p(),
        codisp_xp: Complex64::new(cov, half),
        codisp_px: Complex64::new(cov, -half),
    })
}

/// Image centre and widths of a basis state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformedFrame {
    pub y: f64,
    pub k: f64,
    pub delta_y: f64,
    pub delta_k: f64,
}

pub fn transformed_frame(params: &LctParams, state: &PhaseSpaceState) -> Result<TransformedFrame> {
    if state.units() != params.units() || !scales_match(state.delta_p(), params.delta_p()) {
        return Err(Error::ScaleMismatch);
    }
    let (a, b, c, d) = (params.a(), params.b(), params.c(), params.d());
    let s = params.scale();
    Ok(TransformedFrame {
        y: a * state.center_x() + b * s * state.center_p(),
        k: c / s * state.center_x() + d * state.center_p(),
        delta_y: a.hypot(b) * params.delta_x(),
        delta_k: c.hypot(d) * params.delta_p(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Units;

    fn sample_params() -> LctParams {
        // ad - bc = 1.5·1.2 - 0.4·2 = 1
        LctParams::new(1.5, 0.4, 2.0, 1.2, 0.6, 0.0, Units::new(0.8).unwrap()).unwrap()
    }

    #[test]
    fn identity_leaves_moments_unchanged() {
        let u = Units::default();
        let id = LctParams::identity(0.5, u).unwrap();
        let m = PhaseSpaceState::new(3, 0.2, -0.4, 0.5, u)
            .unwrap()
            .moments();
        assert_eq!(transform_moments(&id, &m), m);
    }

    #[test]
    fn basis_state_transport_matches_closed_form() {
        let p = sample_params();
        for n in 0..4 {
            let s = PhaseSpaceState::new(n, 0.7, -0.3, 0.6, p.units()).unwrap();
            let got = transform_moments(&p, &s.moments());
            let want = basis_state_transformed_moments(&p, &s).unwrap();
            assert!((got.mean_x - want.mean_x).abs() < 1e-14);
            assert!((got.mean_p - want.mean_p).abs() < 1e-14);
            assert!((got.var_x / want.var_x - 1.0).abs() < 1e-14);
            assert!((got.var_p / want.var_p - 1.0).abs() < 1e-14);
            assert!((got.codisp_xp - want.codisp_xp).norm() < 1e-14);
            assert!((got.codisp_px - want.codisp_px).norm() < 1e-14);
        }
    }

    #[test]
    fn commutator_is_preserved() {
        let p = sample_params();
        let m = MomentSet {
            mean_x: 0.1,
            mean_p: 0.2,
            var_x: 1.3,
            var_p: 0.9,
            codisp_xp: Complex64::new(0.25, 0.4),
            codisp_px: Complex64::new(0.25, -0.4),
        };
        let t = transform_moments(&p, &m);
        assert!((t.codisp_xp - t.codisp_px - Complex64::new(0.0, 0.8)).norm() < 1e-14);
    }

    #[test]
    fn frame_of_fourier_rotation() {
        let u = Units::default();
        let p = LctParams::new(0.0, 1.0, -1.0, 0.0, 0.5, 0.0, u).unwrap();
        let s = PhaseSpaceState::new(0, 0.3, 0.9, 0.5, u).unwrap();
        let f = transformed_frame(&p, &s).unwrap();
        // Δx/Δp = 2
        assert!((f.y - 1.8).abs() < 1e-15);
        assert!((f.k + 0.15).abs() < 1e-15);
        assert_eq!((f.delta_y, f.delta_k), (1.0, 0.5));
        let other = PhaseSpaceState::new(0, 0.3, 0.9, 0.6, u).unwrap();
        assert_eq!(transformed_frame(&p, &other), Err(Error::ScaleMismatch));
    }
}
