use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use super::kernel::{h_p, h_x};
use super::{transform_moments, LctParams, DEGENERATE_THRESHOLD};
use crate::error::{Error, Result};
use crate::numerics::UniformGrid;
use crate::phasespace::MomentSet;

/// Default half-width of planned grids, in standard deviations.
pub const PLAN_COVERAGE: f64 = 12.0;

/// Default minimum point count of planned grids.
pub const PLAN_MIN_POINTS: usize = 1024;

/// Input and output grids for one transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPlan {
    pub input: UniformGrid,
    pub output: UniformGrid,
}

fn build(center: f64, half: f64, step: f64, min_count: usize) -> Result<UniformGrid> {
    if !(step.is_finite() && step > 0.0 && half.is_finite()) {
        return Err(Error::InvalidGrid {
            reason: "planned step or width is not finite",
        });
    }
    let count = ((2.0 * half / step).ceil() as usize + 1).max(min_count.max(2));
    UniformGrid::centered(center, half, count)
}

fn check_coverage(coverage: f64) -> Result<()> {
    if !(coverage.is_finite() && coverage > 0.0) {
        return Err(Error::InvalidParameter {
            name: "coverage",
            value: coverage,
        });
    }
    Ok(())
}

/// Coordinate grids for transforming a state with moments `m`.
///
/// Both grids span `coverage` standard deviations about the respective
/// means. The input step resolves both the state's own momentum content and
/// the kernel chirp (with 20% headroom), and the output step resolves the
/// transformed momentum content.
pub fn plan_x(
    params: &LctParams,
    m: &MomentSet,
    coverage: f64,
    min_count: usize,
) -> Result<GridPlan> {
    check_coverage(coverage)?;
    let t = transform_moments(params, m);
    let hbar = params.units().hbar();
    let in_half = coverage * m.var_x.sqrt();
    let out_half = coverage * t.var_x.sqrt();
    let x_max = m.mean_x.abs() + in_half;
    let y_max = t.mean_x.abs() + out_half;
    let mut rate = (m.mean_p.abs() + coverage * m.var_p.sqrt()) / hbar;
    if params.b().abs() >= DEGENERATE_THRESHOLD {
        rate += (params.a().abs() * x_max + y_max) / (h_x(params) * params.b().abs());
    }
    let input = build(m.mean_x, in_half, 0.8 * PI / rate, min_count)?;
    let out_rate = (t.mean_p.abs() + coverage * t.var_p.sqrt()) / hbar;
    let output = build(t.mean_x, out_half, 0.8 * PI / out_rate, min_count)?;
    Ok(GridPlan { input, output })
}

/// Momentum grids for transforming a state with moments `m`, the mirror of
/// [`plan_x`].
pub fn plan_p(
    params: &LctParams,
    m: &MomentSet,
    coverage: f64,
    min_count: usize,
) -> Result<GridPlan> {
    check_coverage(coverage)?;
    let t = transform_moments(params, m);
    let hbar = params.units().hbar();
    let in_half = coverage * m.var_p.sqrt();
    let out_half = coverage * t.var_p.sqrt();
    let p_max = m.mean_p.abs() + in_half;
    let k_max = t.mean_p.abs() + out_half;
    let mut rate = (m.mean_x.abs() + coverage * m.var_x.sqrt()) / hbar;
    if params.c().abs() >= DEGENERATE_THRESHOLD {
        rate += (params.d().abs() * p_max + k_max) / (h_p(params) * params.c().abs());
    }
    let input = build(m.mean_p, in_half, 0.8 * PI / rate, min_count)?;
    let out_rate = (t.mean_x.abs() + coverage * t.var_x.sqrt()) / hbar;
    let output = build(t.mean_p, out_half, 0.8 * PI / out_rate, min_count)?;
    Ok(GridPlan { input, output })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lct::{max_step_p, max_step_x};
    use crate::numerics::Units;
    use crate::phasespace::PhaseSpaceState;

    #[test]
    fn planned_grids_satisfy_chirp_limit() {
        let u = Units::new(1.2).unwrap();
        let p = LctParams::new(1.5, -0.4, 2.0, (1.0 - 0.8) / 1.5, 0.6, 0.0, u).unwrap();
        let m = PhaseSpaceState::new(3, 0.5, -1.0, 0.6, u)
            .unwrap()
            .moments();
        let x = plan_x(&p, &m, PLAN_COVERAGE, PLAN_MIN_POINTS).unwrap();
        assert!(x.input.step() <= max_step_x(&p, &x.input, &x.output));
        assert!(x.input.count() >= PLAN_MIN_POINTS);
        let q = plan_p(&p, &m, PLAN_COVERAGE, PLAN_MIN_POINTS).unwrap();
        assert!(q.input.step() <= max_step_p(&p, &q.input, &q.output));
        assert!(plan_x(&p, &m, 0.0, 16).is_err());
    }
}
