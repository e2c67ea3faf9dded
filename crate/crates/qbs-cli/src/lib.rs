//! IO, file formats, reports, and command plumbing for the `qbs` binary.
//!
//! Everything that talks to the filesystem or renders bytes lives here;
//! the algorithmic core stays in `qbs-core`.

pub mod commands;
pub mod differential;
pub mod error;
pub mod oracle_file;
pub mod report;

pub use error::{CliError, Result};

/// Environment variable overriding the dense-simulation qubit cap.
pub const MAX_QUBITS_ENV: &str = "QBS_MAX_QUBITS";

/// Resolves the qubit cap from the environment, defaulting to the core cap.
pub fn max_qubits_from_env() -> Result<usize> {
    match std::env::var(MAX_QUBITS_ENV) {
        Ok(value) => value.trim().parse::<usize>().map_err(|_| {
            CliError::Invalid(format!(
                "{MAX_QUBITS_ENV} must be a positive integer, got \"{value}\""
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(qbs_core::qsim::DEFAULT_MAX_QUBITS),
        Err(e) => Err(CliError::Invalid(format!("{MAX_QUBITS_ENV}: {e}"))),
    }
}
