use thiserror::Error;

/// Errors surfaced by the compiler library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular over F2")]
    Singular,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("gate axes do not match")]
    AxisMismatch,
    #[error("symplectic parts differ: {0}")]
    SymplecticMismatch(String),
    #[error("malformed layer: {0}")]
    MalformedLayer(String),
    #[error("qubit count {n} exceeds dense-oracle limit {max}")]
    TooManyQubits { n: usize, max: usize },
    #[error("need at least {need} data points with distinct n, got {got}")]
    InsufficientData { need: usize, got: usize },
    #[error("fit requires strictly positive values")]
    NonPositiveData,
}

pub type Result<T> = std::result::Result<T, Error>;
