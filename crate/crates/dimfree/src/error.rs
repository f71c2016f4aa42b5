//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Quadrature failed to reach the requested tolerance within the panel cap.
    /// Carries the best error estimate achieved.
    #[error("quadrature did not converge: achieved error estimate {achieved:e}")]
    Convergence { achieved: f64 },

    /// A run parameter is invalid (grid sizes, sample counts, ...).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// Input data is unusable (e.g. non-positive sup-norms passed to a log-log fit).
    #[error("data error: {0}")]
    Data(String),
}

pub type Result<T> = std::result::Result<T, Error>;
