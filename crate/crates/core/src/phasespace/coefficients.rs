use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::state::minus_i_pow;
use super::PhaseSpaceState;
use crate::error::{Error, Result};
use crate::numerics::{
    fourier_sum, hermite_weighted, Representation, SampledWave, UniformGrid, Units, Warning,
};

/// Relative coefficient magnitude at the edge of the `(X, P)` grid above
/// which synthesis warns about truncated coverage (`e^{-18}`, six widths of
/// a Gaussian).
pub const COVERAGE_THRESHOLD: f64 = 1.522_997_974_471_263e-8;

/// `Ψⁿ(X, P, Δp) = ⟨n, X, P, Δp|ψ⟩` on a rectangular grid of centres.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpaceCoefficients {
    n: usize,
    delta_p: f64,
    x_grid: UniformGrid,
    p_grid: UniformGrid,
    values: Vec<Complex64>,
}

impl PhaseSpaceCoefficients {
    /// `values` is row-major: index `i·p_count + j` holds `Ψ(Xᵢ, Pⱼ)`.
    pub fn new(
        n: usize,
        delta_p: f64,
        x_grid: UniformGrid,
        p_grid: UniformGrid,
        values: Vec<Complex64>,
    ) -> Result<Self> {
        if !(delta_p.is_finite() && delta_p > 0.0) {
            return Err(Error::InvalidParameter {
                name: "delta_p",
                value: delta_p,
            });
        }
        let expected = x_grid.count() * p_grid.count();
        if values.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: values.len(),
            });
        }
        Ok(Self {
            n,
            delta_p,
            x_grid,
            p_grid,
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta_p(&self) -> f64 {
        self.delta_p
    }

    pub fn x_grid(&self) -> &UniformGrid {
        &self.x_grid
    }

    pub fn p_grid(&self) -> &UniformGrid {
        &self.p_grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.p_grid.count() + j]
    }

    /// Largest modulus on the grid boundary relative to the overall peak.
    pub fn edge_ratio(&self) -> f64 {
        let (nx, np) = (self.x_grid.count(), self.p_grid.count());
        let peak = self.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if peak == 0.0 {
            return 0.0;
        }
        let mut edge = 0.0f64;
        for i in 0..nx {
            for j in 0..np {
                if i == 0 || j == 0 || i + 1 == nx || j + 1 == np {
                    edge = edge.max(self.get(i, j).norm());
                }
            }
        }
        edge / peak
    }
}

/// Projects `wave` onto `|n, X, P, Δp⟩` for every `(X, P)` on the two grids.
///
/// Coordinate input integrates `φₙ*ψ` over `x`; momentum input integrates
/// `φ̃ₙ*ψ̃` over `p`. Both use the trapezoid rule.
pub fn analyze(
    wave: &SampledWave,
    n: usize,
    delta_p: f64,
    x_grid: &UniformGrid,
    p_grid: &UniformGrid,
    units: Units,
) -> Result<PhaseSpaceCoefficients> {
    let probe = PhaseSpaceState::new(n, 0.0, 0.0, delta_p, units)?;
    let hbar = units.hbar();
    let grid = *wave.grid();
    let (nx, np) = (x_grid.count(), p_grid.count());
    let mut values = vec![Complex64::new(0.0, 0.0); nx * np];
    match wave.representation() {
        Representation::Coordinate => {
            // Ψ(X, P) = Σ_l w_l u_n((x_l - X)/√2Δx) c ψ_l e^{-iPx_l/ħ}
            let dx = probe.delta_x();
            let c = 1.0 / ((2.0 * PI).powf(0.25) * dx.sqrt());
            for i in 0..nx {
                let big_x = x_grid.point(i);
                let row: Vec<Complex64> = wave
                    .values()
                    .iter()
                    .enumerate()
                    .map(|(l, v)| {
                        let t = (grid.point(l) - big_x) / (SQRT_2 * dx);
                        v * (grid.trapezoid_weight(l) * c * hermite_weighted(n, t))
                    })
                    .collect();
                let out = fourier_sum(&row, &grid, p_grid, -1.0 / hbar);
                values[i * np..(i + 1) * np].copy_from_slice(&out);
            }
        }
        Representation::Momentum => {
            // Ψ(X, P) = iⁿ e^{-iXP/ħ} Σ_l w_l u_n((p_l - P)/√2Δp) c ψ̃_l e^{iXp_l/ħ}
            let c = 1.0 / ((2.0 * PI).powf(0.25) * delta_p.sqrt());
            let phase_n = minus_i_pow(n).conj();
            for j in 0..np {
                let big_p = p_grid.point(j);
                let row: Vec<Complex64> = wave
                    .values()
                    .iter()
                    .enumerate()
                    .map(|(l, v)| {
                        let t = (grid.point(l) - big_p) / (SQRT_2 * delta_p);
                        v * (grid.trapezoid_weight(l) * c * hermite_weighted(n, t))
                    })
                    .collect();
                let out = fourier_sum(&row, &grid, x_grid, 1.0 / hbar);
                for (i, v) in out.into_iter().enumerate() {
                    let big_x = x_grid.point(i);
                    values[i * np + j] =
                        phase_n * v * Complex64::from_polar(1.0, -big_x * big_p / hbar);
                }
            }
        }
    }
    PhaseSpaceCoefficients::new(n, delta_p, *x_grid, *p_grid, values)
}

/// `ψ(x) = (2πħ)⁻¹ ∬ Ψⁿ(X, P) φₙ(x; X, P, Δp) dX dP` by the trapezoid rule
/// over the coefficient grid.
pub fn synthesize_over_xp(
    coeffs: &PhaseSpaceCoefficients,
    out_grid: &UniformGrid,
    units: Units,
) -> Result<SampledWave> {
    let hbar = units.hbar();
    let probe = PhaseSpaceState::new(coeffs.n, 0.0, 0.0, coeffs.delta_p, units)?;
    let dx = probe.delta_x();
    let c = 1.0 / ((2.0 * PI).powf(0.25) * dx.sqrt());
    let (xg, pg) = (coeffs.x_grid, coeffs.p_grid);
    let np = pg.count();
    let mut acc = vec![Complex64::new(0.0, 0.0); out_grid.count()];
    let mut row = vec![Complex64::new(0.0, 0.0); np];
    for i in 0..xg.count() {
        let big_x = xg.point(i);
        for (j, r) in row.iter_mut().enumerate() {
            *r = coeffs.get(i, j) * pg.trapezoid_weight(j);
        }
        // Σ_j w_j Ψ_ij e^{iP_j x/ħ}
        let waves = fourier_sum(&row, &pg, out_grid, 1.0 / hbar);
        let wx = xg.trapezoid_weight(i) * c / (2.0 * PI * hbar);
        for (m, (a, v)) in acc.iter_mut().zip(waves).enumerate() {
            let t = (out_grid.point(m) - big_x) / (SQRT_2 * dx);
            let h = hermite_weighted(coeffs.n, t);
            if h != 0.0 {
                *a += v * (wx * h);
            }
        }
    }
    let mut wave = SampledWave::new(*out_grid, acc, Representation::Coordinate)?;
    let edge = coeffs.edge_ratio();
    if edge > COVERAGE_THRESHOLD {
        wave.push_warning(Warning::Coverage {
            edge,
            threshold: COVERAGE_THRESHOLD,
        });
    }
    Ok(wave)
}

/// `Σₙ cₙ φₙ(x; X, P, Δp)` for terms sorted by strictly increasing `n`.
pub fn synthesize_over_n(
    terms: &[(usize, Complex64)],
    center_x: f64,
    center_p: f64,
    delta_p: f64,
    out_grid: &UniformGrid,
    units: Units,
) -> Result<SampledWave> {
    for pair in terms.windows(2) {
        let (previous, n) = (pair[0].0, pair[1].0);
        if n == previous {
            return Err(Error::DuplicateIndex { n });
        }
        if n < previous {
            return Err(Error::UnsortedIndex { previous, n });
        }
    }
    let base = PhaseSpaceState::new(0, center_x, center_p, delta_p, units)?;
    let states: Vec<(PhaseSpaceState, Complex64)> =
        terms.iter().map(|&(n, c)| (base.with_n(n), c)).collect();
    Ok(SampledWave::from_fn(
        *out_grid,
        Representation::Coordinate,
        |x| states.iter().map(|(s, c)| c * s.eval_x(x)).sum(),
    ))
}
