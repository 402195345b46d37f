use proptest::prelude::*;

use lctkit_core::isodispersion::{iso_params, IsoAngle};
use lctkit_core::lct::{
    apply_lct_x, plan_x, transform_moments, LctParams, PLAN_COVERAGE, PLAN_MIN_POINTS,
    SYMPLECTIC_TOLERANCE,
};
use lctkit_core::numerics::{
    dft_unitary, dft_unitary_onto, fidelity, hermite_weighted, Representation, SampledWave,
    UniformGrid, Units,
};
use lctkit_core::phasespace::{eval_basis_x, MomentSet, PhaseSpaceState};
use lctkit_core::Complex64;

fn symplectic(min_b: f64) -> impl Strategy<Value = LctParams> {
    (
        0.3f64..2.0,
        prop::bool::ANY,
        min_b..2.0,
        prop::bool::ANY,
        -2.0f64..2.0,
        0.2f64..1.5,
        0.3f64..2.0,
    )
        .prop_map(|(a, neg_a, b, neg_b, c, dp, hbar)| {
            let a = if neg_a { -a } else { a };
            let b = if neg_b { -b } else { b };
            let d = (1.0 + b * c) / a;
            LctParams::new(a, b, c, d, dp, 0.0, Units::new(hbar).unwrap()).unwrap()
        })
}

fn moment_set() -> impl Strategy<Value = MomentSet> {
    (
        -2.0f64..2.0,
        -2.0f64..2.0,
        0.1f64..3.0,
        0.1f64..3.0,
        -1.0f64..1.0,
        0.3f64..2.0,
    )
        .prop_map(|(mx, mp, vx, vp, rho, hbar)| {
            // a valid state: covariance bounded so that vx·vp - cov² ≥ ħ²/4
            let vx = vx.max(hbar * hbar / (4.0 * vp)) * 1.5;
            let cov = rho * ((vx * vp - hbar * hbar / 4.0).max(0.0)).sqrt();
            MomentSet {
                mean_x: mx,
                mean_p: mp,
                var_x: vx,
                var_p: vp,
                codisp_xp: Complex64::new(cov, hbar / 2.0),
                codisp_px: Complex64::new(cov, -hbar / 2.0),
            }
        })
}

proptest! {
    #[test]
    fn compose_and_inverse_stay_symplectic(s in symplectic(0.0), t in symplectic(0.0)) {
        let t = LctParams::new(t.a(), t.b(), t.c(), t.d(), s.delta_p(), 0.0, s.units()).unwrap();
        let both = LctParams::compose(&t, &s).unwrap();
        prop_assert!(both.symplectic_residual().abs() <= SYMPLECTIC_TOLERANCE);
        prop_assert!(s.inverse().symplectic_residual().abs() <= SYMPLECTIC_TOLERANCE);
        prop_assert_eq!(s.inverse().inverse(), s);
    }

    #[test]
    fn commutator_and_uncertainty_are_transported(p in symplectic(0.0), m in moment_set()) {
        let hbar = (m.codisp_xp - m.codisp_px).im;
        let p = LctParams::new(p.a(), p.b(), p.c(), p.d(), p.delta_p(), 0.0, Units::new(hbar).unwrap()).unwrap();
        let t = transform_moments(&p, &m);
        prop_assert!((t.codisp_xp - t.codisp_px - Complex64::new(0.0, hbar)).norm() < 1e-8 * (1.0 + m.var_x + m.var_p));
        prop_assert!(t.var_x * t.var_p >= 0.25 * hbar * hbar * (1.0 - 1e-9));
    }

    #[test]
    fn iso_params_are_rotations(alpha in -10.0f64..10.0) {
        let p = iso_params(IsoAngle::new(alpha), 0.5, Units::default()).unwrap();
        prop_assert!((p.a() * p.a() + p.b() * p.b() - 1.0).abs() <= 1e-14);
        prop_assert!((p.a() * p.c() + p.b() * p.d()).abs() <= 1e-14);
    }

    #[test]
    fn hermite_functions_are_bounded(n in 0usize..200, t in -60.0f64..60.0) {
        // |hₙ(t)| ≤ π^{-1/4} for the normalized Hermite functions
        let v = hermite_weighted(n, t);
        prop_assert!(v.is_finite() && v.abs() <= 0.7511255444649425 * (1.0 + 1e-12));
    }

    #[test]
    fn dft_round_trip(values in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 8..200), hbar in 0.2f64..3.0) {
        let units = Units::new(hbar).unwrap();
        let grid = UniformGrid::new(-1.3, 0.07, values.len()).unwrap();
        let values: Vec<Complex64> = values.into_iter().map(|(r, i)| Complex64::new(r, i)).collect();
        let wave = SampledWave::new(grid, values.clone(), Representation::Coordinate).unwrap();
        let back = dft_unitary_onto(&dft_unitary(&wave, units).unwrap(), units, &grid).unwrap();
        let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        for (b, v) in back.values().iter().zip(&values) {
            prop_assert!((b - v).norm() <= 1e-11 * scale.max(1e-300));
        }
        let f = fidelity(&wave, &back).unwrap_or(1.0);
        prop_assert!((0.0..=1.0).contains(&f));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn lct_preserves_norm_and_moments(p in symplectic(0.1), n in 0usize..3, x0 in -1.0f64..1.0, p0 in -1.0f64..1.0) {
        let s = PhaseSpaceState::new(n, x0, p0, p.delta_p(), p.units()).unwrap();
        let plan = plan_x(&p, &s.moments(), PLAN_COVERAGE, PLAN_MIN_POINTS).unwrap();
        let out = apply_lct_x(&p, &eval_basis_x(&s, &plan.input), &plan.output).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-7);
        let got = lctkit_core::phasespace::moments(&out, p.units()).unwrap().moments;
        let want = transform_moments(&p, &s.moments());
        prop_assert!((got.mean_x - want.mean_x).abs() < 1e-6);
        prop_assert!((got.var_p - want.var_p).abs() < 1e-6 * want.var_p.max(1.0));
        prop_assert!((got.codisp_xp - want.codisp_xp).norm() < 1e-6 * (1.0 + want.var_x + want.var_p));
    }
}
