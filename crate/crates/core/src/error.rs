use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("eigenvalue {index} did not converge within {iterations} iterations")]
    ConvergenceFailure { index: usize, iterations: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized (norm = {0})")]
    NotNormalized(f64),

    #[error("charge-basis truncation did not converge up to n_max = {n_max}")]
    TruncationFailure { n_max: usize },

    #[error("invalid condensate configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid single-particle amplitudes: {0}")]
    InvalidAmps(String),

    #[error("particle number {n} exceeds the supported limit {limit}")]
    SizeLimit { n: u64, limit: u64 },
}

impl Error {
    /// True for failures of an iterative numerical method, as opposed to
    /// rejected inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::ConvergenceFailure { .. } | Error::TruncationFailure { .. }
        )
    }
}
