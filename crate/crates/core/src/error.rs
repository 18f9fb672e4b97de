use thiserror::Error;

/// Error type shared by the whole crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside a function's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Requested work exceeds a configured budget.
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// Problem with an external dataset (zeros file, grid, cache).
    #[error("dataset error: {0}")]
    Dataset(String),
    /// An iterative solver failed to converge.
    #[error("no convergence: {0}")]
    NoConvergence(String),
    /// Evaluation too close to a pole.
    #[error("singularity: {0}")]
    Singularity(String),
    /// Result would leave f64 range.
    #[error("overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
