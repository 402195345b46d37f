//! Harmonic Gaussian basis states and the maps between wavefunctions and
//! phase-space coefficients.

mod coefficients;
mod dispersion;
mod moments;
mod state;

pub use coefficients::{
    analyze, synthesize_over_n, synthesize_over_xp, PhaseSpaceCoefficients, COVERAGE_THRESHOLD,
};
pub use dispersion::{apply_dispersion, DispersionKind, DispersionOperatorSpec};
pub use moments::{moments, MomentEstimate, MomentSet, NORM_TOLERANCE};
pub use state::{
    eval_basis_p, eval_basis_x, PhaseSpaceState, BASIS_COVERAGE, BASIS_MIN_POINTS,
    DEFAULT_GRID_COVERAGE,
};
