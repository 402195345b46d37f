//! Linear canonical transformations: parameters, moment transport, integral
//! kernels, numerical wavefunction transforms and closed forms for basis
//! states.

mod closed_form;
mod kernel;
mod moments;
mod params;
mod plan;
mod transform;

pub use closed_form::{closed_form_transform_p, closed_form_transform_x};
pub(crate) use closed_form::{constant_phase, integral_prefactor_x};
pub use kernel::{kernel_constants, kernel_pk, kernel_xy};
pub use moments::{
    basis_state_transformed_moments, transform_moments, transformed_frame, TransformedFrame,
};
pub use params::{LctParams, SYMPLECTIC_TOLERANCE};
pub use plan::{plan_p, plan_x, GridPlan, PLAN_COVERAGE, PLAN_MIN_POINTS};
pub use transform::{
    apply_lct, apply_lct_degenerate, apply_lct_degenerate_p, apply_lct_p, apply_lct_x, max_step_p,
    max_step_x,
};

/// `|b|` (coordinate side) or `|c|` (momentum side) below which the kernel is
/// treated as singular and the scaling limit is used instead.
pub const DEGENERATE_THRESHOLD: f64 = 1e-8;
