use num_complex::Complex64;

use super::PhaseSpaceState;
use crate::error::{Error, Result};
use crate::numerics::{apply_momentum_multiplier, SampledWave, Units, MOMENT_DECAY_THRESHOLD};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DispersionKind {
    SigmaX,
    SigmaP,
}

/// `Σ_x = ½[(x-X)² + (Δx/Δp)²(p-P)²]` or `Σ_p = (Δp/Δx)² Σ_x`.
///
/// Eigenstates are `|n, X, P, Δp⟩` with eigenvalues `(2n+1)Δx²` and
/// `(2n+1)Δp²` respectively.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionOperatorSpec {
    kind: DispersionKind,
    center_x: f64,
    center_p: f64,
    delta_p: f64,
    units: Units,
}

impl DispersionOperatorSpec {
    pub fn new(
        kind: DispersionKind,
        center_x: f64,
        center_p: f64,
        delta_p: f64,
        units: Units,
    ) -> Result<Self> {
        if !(delta_p.is_finite() && delta_p > 0.0) {
            return Err(Error::InvalidParameter {
                name: "delta_p",
                value: delta_p,
            });
        }
        Ok(Self {
            kind,
            center_x,
            center_p,
            delta_p,
            units,
        })
    }

    /// The operator whose eigenstates share `state`'s centre and widths.
    pub fn for_state(kind: DispersionKind, state: &PhaseSpaceState) -> Self {
        Self {
            kind,
            center_x: state.center_x(),
            center_p: state.center_p(),
            delta_p: state.delta_p(),
            units: state.units(),
        }
    }

    pub fn kind(&self) -> DispersionKind {
        self.kind
    }

    pub fn center_x(&self) -> f64 {
        self.center_x
    }

    pub fn center_p(&self) -> f64 {
        self.center_p
    }

    pub fn delta_p(&self) -> f64 {
        self.delta_p
    }

    pub fn delta_x(&self) -> f64 {
        self.units.hbar() / (2.0 * self.delta_p)
    }

    /// Eigenvalue on the `n`-th eigenstate.
    pub fn eigenvalue(&self, n: usize) -> f64 {
        let width = match self.kind {
            DispersionKind::SigmaX => self.delta_x(),
            DispersionKind::SigmaP => self.delta_p,
        };
        (2 * n + 1) as f64 * width * width
    }
}

/// `Σψ` for a coordinate wave; `(p-P)²` acts through the discrete Fourier
/// transform.
pub fn apply_dispersion(
    op: &DispersionOperatorSpec,
    wave: &SampledWave,
    units: Units,
) -> Result<SampledWave> {
    let ratio = op.delta_x() / op.delta_p;
    let p0 = op.center_p;
    let mut out = apply_momentum_multiplier(wave, units, |p| {
        Complex64::new(ratio * ratio * (p - p0) * (p - p0), 0.0)
    })?;
    let scale = match op.kind {
        DispersionKind::SigmaX => 0.5,
        DispersionKind::SigmaP => 0.5 / (ratio * ratio),
    };
    let grid = *wave.grid();
    for (i, (o, v)) in out.values_mut().iter_mut().zip(wave.values()).enumerate() {
        let d = grid.point(i) - op.center_x;
        *o = (*o + v * (d * d)) * scale;
    }
    if let Some(w) = wave.decay_warning(MOMENT_DECAY_THRESHOLD) {
        out.push_warning(w);
    }
    Ok(out)
}
