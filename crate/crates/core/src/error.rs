use thiserror::Error;

pub type Result<T> = std::result::Result<T, FockError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FockError {
    #[error("occupations {occupations:?} exceed the total-photon cutoff {cutoff}")]
    CutoffExceeded { occupations: Vec<usize>, cutoff: usize },

    #[error("truncation tail mass {tail:e} exceeds the allowed {limit:e}; raise the cutoff above {cutoff}")]
    Truncation { tail: f64, limit: f64, cutoff: usize },

    #[error("mode index {mode} out of range for {num_modes} modes")]
    InvalidMode { mode: usize, num_modes: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("cannot combine a pure state with a density matrix")]
    MixedKinds,

    #[error("state has no photons")]
    Vacuum,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("state fails invariant check: {0}")]
    Invariant(String),

    #[error("serialization error: {0}")]
    Serde(String),
}

impl From<serde_json::Error> for FockError {
    fn from(e: serde_json::Error) -> Self {
        FockError::Serde(e.to_string())
    }
}
