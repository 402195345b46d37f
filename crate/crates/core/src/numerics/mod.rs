//! Foundational numerical machinery shared by every other module.

mod fft;
mod grid;
mod hermite;
mod metrics;
mod quadrature;
mod transform;
mod wave;

pub use fft::{chirp_z, dft, fft_pow2};
pub use grid::UniformGrid;
pub use hermite::{hermite, hermite_bounded, hermite_weighted, DEFAULT_MAX_HERMITE_ORDER};
pub use metrics::{fidelity, relative_l2_error, trapezoid_inner, trapezoid_norm};
pub use quadrature::{gauss_hermite_nodes, GaussHermiteRule, MAX_GAUSS_HERMITE_NODES};
pub use transform::{
    apply_momentum_multiplier, conjugate_grid, dft_unitary, dft_unitary_onto, fourier_sum, resample,
};
pub use wave::{Representation, SampledWave, Warning};

use crate::error::{Error, Result};

/// Physical constants in the unit system of a computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Units {
    hbar: f64,
}

impl Units {
    pub fn new(hbar: f64) -> Result<Self> {
        if hbar.is_finite() && hbar > 0.0 {
            Ok(Self { hbar })
        } else {
            Err(Error::InvalidParameter {
                name: "hbar",
                value: hbar,
            })
        }
    }

    #[inline]
    pub fn hbar(&self) -> f64 {
        self.hbar
    }
}

impl Default for Units {
    fn default() -> Self {
        Self { hbar: 1.0 }
    }
}

/// Edge magnitude (relative to the peak) above which a signal counts as
/// not decayed for the Fourier transform.
pub const FOURIER_DECAY_THRESHOLD: f64 = 1e-12;

/// Edge magnitude (relative to the peak) above which moment estimates
/// carry a decay warning.
pub const MOMENT_DECAY_THRESHOLD: f64 = 1e-10;
