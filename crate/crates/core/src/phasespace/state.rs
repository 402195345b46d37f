use core::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::MomentSet;
use crate::error::{Error, Result};
use crate::numerics::{hermite_weighted, Representation, SampledWave, UniformGrid, Units, Warning};

/// Number of widths `√(2n+1)·Δ` a basis-state grid must span on each side
/// before sampling warns about coverage.
pub const BASIS_COVERAGE: f64 = 8.0;

/// Widths `√(2n+1)·Δ` spanned by default grids; the ground-state envelope
/// `e^{-(x-X)²/4Δx²}` is below `1e-15` there.
pub const DEFAULT_GRID_COVERAGE: f64 = 12.0;

/// Minimum point count of default basis grids.
pub const BASIS_MIN_POINTS: usize = 1024;

/// The basis state `|n, X, P, Δp⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpaceState {
    n: usize,
    center_x: f64,
    center_p: f64,
    delta_p: f64,
    units: Units,
}

impl PhaseSpaceState {
    pub fn new(n: usize, center_x: f64, center_p: f64, delta_p: f64, units: Units) -> Result<Self> {
        if !center_x.is_finite() {
            return Err(Error::InvalidParameter {
                name: "X",
                value: center_x,
            });
        }
        if !center_p.is_finite() {
            return Err(Error::InvalidParameter {
                name: "P",
                value: center_p,
            });
        }
        if !(delta_p.is_finite() && delta_p > 0.0) {
            return Err(Error::InvalidParameter {
                name: "delta_p",
                value: delta_p,
            });
        }
        Ok(Self {
            n,
            center_x,
            center_p,
            delta_p,
            units,
        })
    }

    /// State of order `n` with coordinate width `delta_x` (so that
    /// `Δp = ħ/(2Δx)`).
    pub fn with_delta_x(
        n: usize,
        center_x: f64,
        center_p: f64,
        delta_x: f64,
        units: Units,
    ) -> Result<Self> {
        if !(delta_x.is_finite() && delta_x > 0.0) {
            return Err(Error::InvalidParameter {
                name: "delta_x",
                value: delta_x,
            });
        }
        Self::new(n, center_x, center_p, units.hbar() / (2.0 * delta_x), units)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn center_x(&self) -> f64 {
        self.center_x
    }

    #[inline]
    pub fn center_p(&self) -> f64 {
        self.center_p
    }

    #[inline]
    pub fn delta_p(&self) -> f64 {
        self.delta_p
    }

    #[inline]
    pub fn delta_x(&self) -> f64 {
        self.units.hbar() / (2.0 * self.delta_p)
    }

    #[inline]
    pub fn units(&self) -> Units {
        self.units
    }

    pub fn with_n(&self, n: usize) -> Self {
        Self { n, ..*self }
    }

    /// `φₙ(x; X, P, Δp)`.
    pub fn eval_x(&self, x: f64) -> Complex64 {
        let dx = self.delta_x();
        let t = (x - self.center_x) / (SQRT_2 * dx);
        let amp = hermite_weighted(self.n, t) / ((2.0 * PI).powf(0.25) * dx.sqrt());
        Complex64::from_polar(amp, self.center_p * x / self.units.hbar())
    }

    /// `φ̃ₙ(p; X, P, Δp)`, the unitary Fourier transform of [`eval_x`](Self::eval_x).
    pub fn eval_p(&self, p: f64) -> Complex64 {
        let dp = self.delta_p;
        let t = (p - self.center_p) / (SQRT_2 * dp);
        let amp = hermite_weighted(self.n, t) / ((2.0 * PI).powf(0.25) * dp.sqrt());
        let phase = -self.center_x * (p - self.center_p) / self.units.hbar();
        minus_i_pow(self.n) * Complex64::from_polar(amp, phase)
    }

    /// Exact moments of the state.
    pub fn moments(&self) -> MomentSet {
        let m = (2 * self.n + 1) as f64;
        let half = 0.5 * self.units.hbar();
        MomentSet {
            mean_x: self.center_x,
            mean_p: self.center_p,
            var_x: m * self.delta_x() * self.delta_x(),
            var_p: m * self.delta_p * self.delta_p,
            codisp_xp: Complex64::new(0.0, half),
            codisp_px: Complex64::new(0.0, -half),
        }
    }

    /// Smallest coordinate half-width around `X` accepted without a warning.
    pub fn coverage_x(&self) -> f64 {
        BASIS_COVERAGE * ((2 * self.n + 1) as f64).sqrt() * self.delta_x()
    }

    /// Smallest momentum half-width around `P` accepted without a warning.
    pub fn coverage_p(&self) -> f64 {
        BASIS_COVERAGE * ((2 * self.n + 1) as f64).sqrt() * self.delta_p
    }

    /// Default coordinate grid: centred on `X`, [`DEFAULT_GRID_COVERAGE`]
    /// widths on each side, at least [`BASIS_MIN_POINTS`] points and fine
    /// enough to resolve momenta out to the same number of widths.
    pub fn default_grid_x(&self) -> UniformGrid {
        let k = DEFAULT_GRID_COVERAGE / BASIS_COVERAGE;
        let half = k * self.coverage_x();
        let p_max = self.center_p.abs() + k * self.coverage_p();
        default_grid(self.center_x, half, p_max, self.units)
    }

    /// Default momentum grid, the mirror of [`default_grid_x`](Self::default_grid_x).
    pub fn default_grid_p(&self) -> UniformGrid {
        let k = DEFAULT_GRID_COVERAGE / BASIS_COVERAGE;
        let half = k * self.coverage_p();
        let x_max = self.center_x.abs() + k * self.coverage_x();
        default_grid(self.center_p, half, x_max, self.units)
    }
}

fn default_grid(center: f64, half: f64, conjugate_max: f64, units: Units) -> UniformGrid {
    let step = 0.8 * PI * units.hbar() / conjugate_max;
    let needed = (2.0 * half / step).ceil() as usize + 1;
    UniformGrid::centered(center, half, needed.max(BASIS_MIN_POINTS))
        .expect("positive widths give a valid grid")
}

/// `(-i)ⁿ`.
pub(crate) fn minus_i_pow(n: usize) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

fn coverage_warning(center: f64, required: f64, grid: &UniformGrid) -> Option<Warning> {
    let actual = (center - grid.start()).min(grid.end() - center);
    (actual < required).then_some(Warning::NarrowGrid { required, actual })
}

/// Samples of `φₙ(x; X, P, Δp)` on `grid`.
pub fn eval_basis_x(state: &PhaseSpaceState, grid: &UniformGrid) -> SampledWave {
    let mut wave = SampledWave::from_fn(*grid, Representation::Coordinate, |x| state.eval_x(x));
    if let Some(w) = coverage_warning(state.center_x, state.coverage_x(), grid) {
        wave.push_warning(w);
    }
    wave
}

/// Samples of `φ̃ₙ(p; X, P, Δp)` on `grid`.
pub fn eval_basis_p(state: &PhaseSpaceState, grid: &UniformGrid) -> SampledWave {
    let mut wave = SampledWave::from_fn(*grid, Representation::Momentum, |p| state.eval_p(p));
    if let Some(w) = coverage_warning(state.center_p, state.coverage_p(), grid) {
        wave.push_warning(w);
    }
    wave
}
