use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("qubit index {index} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("trace is {0} (expected 1)")]
    BadTrace(f64),

    #[error("non-finite matrix entry")]
    NonFinite,

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("state norm vanished under non-unitary evolution (trace {0:e})")]
    VanishingNorm(f64),

    #[error("postselection success probability {0:e} is below threshold")]
    PostselectionFailed(f64),

    #[error("malformed Pauli label {0:?}")]
    MalformedLabel(String),

    #[error("measurement record is not informationally complete: {0}")]
    Underdetermined(String),

    #[error("reconstruction did not converge after {0} iterations")]
    ReconstructionDiverged(usize),

    #[error("invalid JSON document: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
