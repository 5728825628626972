use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("vector {0:#x} is not in the subspace")]
    NotInSubspace(u64),

    #[error("subspace is not contained in the ambient subspace (witness {0:#x})")]
    NotSubspace(u64),

    #[error("{what} exceeded cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("inconsistent module action: {0}")]
    InconsistentAction(String),

    #[error("2^{0}-1 is not a prime")]
    NotMersenne(usize),

    #[error("no candidate found: {0}")]
    NoCandidate(String),

    #[error("constituent {index} is not pure: {detail}")]
    NotPure { index: usize, detail: String },

    #[error("vectors disagree on dropped coordinate {coord} (vector {witness})")]
    ReductionMismatch { coord: usize, witness: usize },

    #[error("coordinate value {value} is not +-1 (vector {vector})")]
    NotSignVector { vector: usize, value: i64 },

    #[error("invalid spherical code: {0}")]
    InvalidCode(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the `forge` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 3,
            Error::OutOfRange(_) | Error::Io(_) | Error::Json(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
