//! The rotation subfamily `(cos α, sin α, -sin α, cos α)`, which leaves both
//! dispersion operators invariant, and its fractional Fourier transform.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Result;
use crate::lct::{
    apply_lct, constant_phase, integral_prefactor_x, plan_x, transformed_frame, LctParams,
    DEGENERATE_THRESHOLD, PLAN_COVERAGE, PLAN_MIN_POINTS,
};
use crate::numerics::{relative_l2_error, SampledWave, UniformGrid, Units};
use crate::phasespace::{
    apply_dispersion, eval_basis_x, moments, DispersionKind, DispersionOperatorSpec,
    PhaseSpaceState,
};

/// Rotation angle `α` in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsoAngle {
    pub alpha: f64,
}

impl IsoAngle {
    pub fn new(alpha: f64) -> Self {
        Self { alpha }
    }

    /// `(α - π/2)/2`, the kernel phase that makes the transform a fractional
    /// Fourier transform.
    pub fn epsilon(&self) -> f64 {
        0.5 * (self.alpha - FRAC_PI_2)
    }

    fn degenerate(&self) -> bool {
        self.alpha.sin().abs() < DEGENERATE_THRESHOLD
    }
}

/// `(cos α, sin α, -sin α, cos α)` with `ε = (α - π/2)/2`.
pub fn iso_params(angle: IsoAngle, delta_p: f64, units: Units) -> Result<LctParams> {
    let (s, c) = angle.alpha.sin_cos();
    LctParams::new(c, s, -s, c, delta_p, angle.epsilon(), units)
}

/// Fractional Fourier transform of order `α` in the `Δx/Δp`-scaled variables.
///
/// Angles with `|sin α|` below the degenerate threshold reduce to the
/// identity or the parity map, whose output is moved onto `out_grid`.
pub fn frft(
    angle: IsoAngle,
    delta_p: f64,
    units: Units,
    wave: &SampledWave,
    out_grid: &UniformGrid,
) -> Result<SampledWave> {
    let params = iso_params(angle, delta_p, units)?;
    apply_lct(&params, wave, Some(out_grid))
}

/// Image of `|n, X, P, Δp⟩` under the rotation: the target state
/// `|n, Y, K, Δp⟩` and the unimodular factor `u` with
/// `frft(α)|n, X, P, Δp⟩ = u·|n, Y, K, Δp⟩`.
///
/// `u = e^{-inα} e^{i sin α [sin α·PX/ħ + cos α (X²/4Δx² - P²/4Δp²)]}` up to
/// the branch of the kernel square root, which is resolved to match
/// [`frft`].
pub fn transform_basis_state(
    angle: IsoAngle,
    state: &PhaseSpaceState,
) -> Result<(PhaseSpaceState, Complex64)> {
    let params = iso_params(angle, state.delta_p(), state.units())?;
    let frame = transformed_frame(&params, state)?;
    let n = state.n();
    let target = PhaseSpaceState::new(n, frame.y, frame.k, state.delta_p(), state.units())?;
    let phase = if angle.degenerate() {
        let a = params.a();
        let parity = if a < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
        Complex64::from_polar(parity, params.epsilon() + FRAC_PI_4 * a.signum())
    } else {
        integral_prefactor_x(&params, n)
            * Complex64::from_polar(1.0, constant_phase(&params, &frame))
    };
    Ok((target, phase / phase.norm()))
}

/// One numerical check inside an [`InvarianceReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceCheck {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Outcome of [`check_isodispersion_invariance`].
#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceReport {
    pub checks: Vec<InvarianceCheck>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&InvarianceCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &'static str, residual: f64, tolerance: f64) {
        self.checks.push(InvarianceCheck {
            name,
            residual,
            tolerance,
            passed: residual.is_finite() && residual < tolerance,
        });
    }
}

/// Tolerance on the algebraic width ratios.
pub const WIDTH_TOLERANCE: f64 = 1e-14;
/// Tolerance on the relative variance error of the transformed wave.
pub const VARIANCE_TOLERANCE: f64 = 1e-6;
/// Tolerance on the relative eigen-equation residual.
pub const EIGEN_TOLERANCE: f64 = 1e-5;

/// Transforms `state` numerically and checks that the widths, variances and
/// dispersion eigen-equations survive unchanged.
///
/// Numerical failures are reported as entries with an infinite residual.
pub fn check_isodispersion_invariance(
    angle: IsoAngle,
    state: &PhaseSpaceState,
) -> Result<InvarianceReport> {
    let units = state.units();
    let params = iso_params(angle, state.delta_p(), units)?;
    let frame = transformed_frame(&params, state)?;
    let mut report = InvarianceReport { checks: Vec::new() };
    report.push(
        "delta_y/delta_x",
        (frame.delta_y / state.delta_x() - 1.0).abs(),
        WIDTH_TOLERANCE,
    );
    report.push(
        "delta_k/delta_p",
        (frame.delta_k / state.delta_p() - 1.0).abs(),
        WIDTH_TOLERANCE,
    );

    let plan = plan_x(&params, &state.moments(), PLAN_COVERAGE, PLAN_MIN_POINTS)?;
    let input = eval_basis_x(state, &plan.input);
    let out = frft(angle, state.delta_p(), units, &input, &plan.output)?;
    let m = (2 * state.n() + 1) as f64;
    let (var_y, var_k) = match moments(&out, units) {
        Ok(est) => (est.moments.var_x, est.moments.var_p),
        Err(_) => (f64::INFINITY, f64::INFINITY),
    };
    let want_y = m * frame.delta_y * frame.delta_y;
    let want_k = m * frame.delta_k * frame.delta_k;
    report.push("var_y", (var_y / want_y - 1.0).abs(), VARIANCE_TOLERANCE);
    report.push("var_k", (var_k / want_k - 1.0).abs(), VARIANCE_TOLERANCE);

    for (name, kind) in [
        ("sigma_y", DispersionKind::SigmaX),
        ("sigma_k", DispersionKind::SigmaP),
    ] {
        let residual = DispersionOperatorSpec::new(kind, frame.y, frame.k, frame.delta_k, units)
            .and_then(|op| {
                let applied = apply_dispersion(&op, &out, units)?;
                let mut expected = out.clone();
                let lambda = op.eigenvalue(state.n());
                expected.values_mut().iter_mut().for_each(|v| *v *= lambda);
                relative_l2_error(&applied, &expected)
            })
            .unwrap_or(f64::INFINITY);
        report.push(name, residual, EIGEN_TOLERANCE);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lct::{apply_lct_x, PLAN_COVERAGE};
    use crate::numerics::{dft_unitary_onto, fidelity, trapezoid_inner, Representation};
    use core::f64::consts::PI;

    fn units() -> Units {
        Units::new(0.7).unwrap()
    }

    #[test]
    fn params_satisfy_constraints() {
        for i in 0..256 {
            let alpha = -2.0 * PI + 4.0 * PI * (i as f64 + 0.5) / 256.0;
            let p = iso_params(IsoAngle::new(alpha), 0.4, units()).unwrap();
            let (a, b, c, d) = (p.a(), p.b(), p.c(), p.d());
            assert!((a * d - b * c - 1.0).abs() <= 1e-14);
            assert!((a * a + b * b - 1.0).abs() <= 1e-14);
            assert!((c * c + d * d - 1.0).abs() <= 1e-14);
            assert!((a * c + b * d).abs() <= 1e-14);
        }
        let q = iso_params(IsoAngle::new(FRAC_PI_2), 0.4, units()).unwrap();
        assert_eq!(q.epsilon(), 0.0);
        assert!(q.a().abs() < 1e-16 && q.b() == 1.0 && q.c() == -1.0);
        let id = iso_params(IsoAngle::new(0.0), 0.4, units()).unwrap();
        assert_eq!(id.matrix(), [[1.0, 0.0], [-0.0, 1.0]]);
    }

    fn grids(state: &PhaseSpaceState, alpha: f64) -> (UniformGrid, UniformGrid) {
        let p = iso_params(IsoAngle::new(alpha), state.delta_p(), state.units()).unwrap();
        let plan = plan_x(&p, &state.moments(), PLAN_COVERAGE, PLAN_MIN_POINTS).unwrap();
        (plan.input, plan.output)
    }

    #[test]
    fn quarter_turn_is_fourier_transform() {
        let s = PhaseSpaceState::new(1, 0.3, -0.8, 0.4, units()).unwrap();
        let (input, output) = grids(&s, FRAC_PI_2);
        let wave = eval_basis_x(&s, &input);
        let out = frft(IsoAngle::new(FRAC_PI_2), 0.4, units(), &wave, &output).unwrap();
        let scale = s.delta_x() / s.delta_p();
        let ft = dft_unitary_onto(&wave, units(), &output.scaled(1.0 / scale).unwrap()).unwrap();
        for (o, f) in out.values().iter().zip(ft.values()) {
            assert!((o - f / scale.sqrt()).norm() < 1e-10);
        }
    }

    #[test]
    fn basis_states_follow_the_closed_law() {
        for &alpha in &[0.3, 1.0, 2.5, -2.0, 4.0, 0.0, PI] {
            for n in 0..4 {
                let s = PhaseSpaceState::new(n, 0.3, -0.8, 0.4, units()).unwrap();
                let (input, output) = grids(&s, alpha);
                let out = frft(
                    IsoAngle::new(alpha),
                    0.4,
                    units(),
                    &eval_basis_x(&s, &input),
                    &output,
                )
                .unwrap();
                let (target, phase) = transform_basis_state(IsoAngle::new(alpha), &s).unwrap();
                assert!((phase.norm() - 1.0).abs() < 1e-15);
                let want = eval_basis_x(&target, &output);
                let overlap = trapezoid_inner(&output, want.values(), out.values());
                assert!(
                    (overlap - phase).norm() < 1e-8,
                    "{alpha} {n} {overlap} {phase}"
                );
            }
        }
    }

    #[test]
    fn centred_states_are_eigenfunctions() {
        for &alpha in &[0.3, 1.0, 2.5] {
            for n in 0..=5 {
                let s = PhaseSpaceState::new(n, 0.0, 0.0, 0.4, units()).unwrap();
                let (_, phase) = transform_basis_state(IsoAngle::new(alpha), &s).unwrap();
                let want = Complex64::from_polar(1.0, -(n as f64) * alpha);
                assert!((phase - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn additivity_up_to_phase() {
        let s = PhaseSpaceState::new(2, 0.5, 0.2, 0.4, units()).unwrap();
        let (a1, a2) = (0.7, 1.9);
        let (input, _) = grids(&s, a1);
        let p1 = iso_params(IsoAngle::new(a1), 0.4, units()).unwrap();
        let m1 = crate::lct::transform_moments(&p1, &s.moments());
        let p2 = iso_params(IsoAngle::new(a2), 0.4, units()).unwrap();
        let plan2 = plan_x(&p2, &m1, PLAN_COVERAGE, PLAN_MIN_POINTS).unwrap();
        let (input12, _) = grids(&s, a1 + a2);
        let once = frft(
            IsoAngle::new(a1),
            0.4,
            units(),
            &eval_basis_x(&s, &input),
            &plan2.input,
        )
        .unwrap();
        let twice = frft(IsoAngle::new(a2), 0.4, units(), &once, &plan2.output).unwrap();
        let direct = frft(
            IsoAngle::new(a1 + a2),
            0.4,
            units(),
            &eval_basis_x(&s, &input12),
            &plan2.output,
        )
        .unwrap();
        assert!(fidelity(&twice, &direct).unwrap() > 1.0 - 1e-9);
        assert!((twice.norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn small_angle_is_near_identity() {
        let s = PhaseSpaceState::new(0, 0.2, 0.1, 0.4, units()).unwrap();
        let g = s.default_grid_x();
        let wave = eval_basis_x(&s, &g);
        let p = iso_params(IsoAngle::new(1e-3), 0.4, units()).unwrap();
        let plan = plan_x(&p, &s.moments(), PLAN_COVERAGE, PLAN_MIN_POINTS).unwrap();
        let fine = eval_basis_x(&s, &plan.input);
        let out = apply_lct_x(&p, &fine, &g).unwrap();
        assert_eq!(out.representation(), Representation::Coordinate);
        assert!(fidelity(&out, &wave).unwrap() > 1.0 - 1e-4);
    }

    #[test]
    fn invariance_report() {
        let s = PhaseSpaceState::new(2, 0.4, -0.3, 0.4, units()).unwrap();
        let r = check_isodispersion_invariance(IsoAngle::new(0.7), &s).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.get("var_y").unwrap().residual < 1e-8);
        assert!(r.get("delta_y/delta_x").unwrap().residual <= 1e-14);
        let r = check_isodispersion_invariance(IsoAngle::new(0.0), &s).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
