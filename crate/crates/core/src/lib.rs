//! Harmonic Gaussian phase-space states and linear canonical transforms.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: grids, sampled waves, Hermite functions, Gauss–Hermite
//!   rules, the unitary Fourier transform and the chirp-z machinery that
//!   evaluates quadratic-phase integrals.
//! * [`phasespace`]: the basis states `|n, X, P, Δp⟩`, their moments,
//!   dispersion operators and the analysis/synthesis maps.
//! * [`lct`]: symplectic parameters, moment transport, integral kernels,
//!   numerical wavefunction transforms and closed-form basis transforms.
//! * [`isodispersion`]: the rotation subfamily and its fractional Fourier
//!   transform.
//!
//! Everything is `no_std` with `alloc`; file formats and the command line
//! live in the `lctkit` companion crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod isodispersion;
pub mod lct;
pub mod numerics;
pub mod phasespace;

pub use error::{Error, Result};
pub use num_complex::Complex64;
