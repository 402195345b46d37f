//! Command-line front end and file formats for `lctkit-core`.

pub mod commands;
pub mod error;
pub mod format;
pub mod gridspec;
pub mod verify;

pub use error::{CliError, CliResult};
