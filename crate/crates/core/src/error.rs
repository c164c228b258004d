use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("critical point: 1 - eB*theta = {gap:e} is below 1e-12")]
    CriticalPoint { gap: f64 },

    #[error("truncation too small: tail mass {tail:e} exceeds tolerance, need n_max >= {required}")]
    Truncation { tail: f64, required: usize },

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("shape mismatch: expected {expected}, got {got}")]
    Shape { expected: usize, got: usize },

    #[error("index {index} exceeds cutoff {max}")]
    Index { index: usize, max: usize },

    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
