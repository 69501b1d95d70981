//! Scenario-driven front end: config parsing, scenario execution, CSV and
//! SVG emission. The binary in `main.rs` is a thin dispatcher over
//! [`runner`].

pub mod config;
pub mod runner;
pub mod svg;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Config could not be parsed or failed validation. Exit code 2.
    #[error("{0}")]
    Validation(String),

    /// A computed quantity failed a module validator. Exit code 3.
    #[error("numerical integrity: {0}")]
    Integrity(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<ckncs::Error> for CliError {
    fn from(err: ckncs::Error) -> Self {
        match err {
            ckncs::Error::Domain(msg) => CliError::Validation(msg),
            ckncs::Error::Integrity(msg) => CliError::Integrity(msg),
            ckncs::Error::QuadratureNonConvergence { achieved, target } => {
                CliError::Integrity(format!(
                    "quadrature did not converge (achieved {achieved:.3e}, target {target:.3e})"
                ))
            }
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Integrity(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
