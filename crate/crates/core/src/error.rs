use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Hermite order {order} exceeds the configured maximum {max}")]
    HermiteOrder { order: usize, max: usize },

    #[error("Gauss-Hermite rule size {count} outside [1, {max}]")]
    QuadratureSize { count: usize, max: usize },

    #[error("invalid grid: {reason}")]
    InvalidGrid { reason: &'static str },

    #[error("waves are sampled on different grids")]
    GridMismatch,

    #[error("expected a {expected} representation")]
    RepresentationMismatch { expected: &'static str },

    #[error("expected {expected} samples, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("wave has zero norm")]
    ZeroNorm,

    #[error("invalid value {value} for `{name}`")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("parameters are not symplectic: ad - bc - 1 = {residual:e}")]
    NotSymplectic { residual: f64 },

    #[error("transform parameters use different reference scales")]
    ScaleMismatch,

    #[error(
        "parameter `{parameter}` = {value:e} is below the degenerate threshold {threshold:e}; \
         use the degenerate (scaling) path"
    )]
    Degenerate {
        parameter: &'static str,
        value: f64,
        threshold: f64,
    },

    #[error("parameter `{parameter}` = {value:e} is not degenerate; use the integral transform")]
    NotDegenerate { parameter: &'static str, value: f64 },

    #[error("both a and b vanish; no scaling limit exists")]
    FullyDegenerate,

    #[error("input step {step:e} undersamples the kernel chirp; required step <= {required:e}")]
    ChirpUndersampled { step: f64, required: f64 },

    #[error("duplicate basis index n = {n}")]
    DuplicateIndex { n: usize },

    #[error("basis indices must be sorted ascending (saw {n} after {previous})")]
    UnsortedIndex { previous: usize, n: usize },
}
