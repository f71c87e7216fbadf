//! Command-line front end for `mapcount-core`: coefficient files, parallel
//! sweeps and cross-method verification.

pub mod coeff_file;
pub mod counting;
pub mod error;
pub mod sweep;
pub mod verify;

pub use error::{CliError, Result};
