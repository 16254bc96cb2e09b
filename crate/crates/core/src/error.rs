use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("bilinear form is not invariant")]
    NotInvariant,
    #[error("Jacobi identity fails: [d,d] = {0}")]
    Jacobi(String),
    #[error("cochain is not cyclic")]
    NotCyclic,
    #[error("{0}")]
    Unsupported(String),
    #[error("denominator vanishes at the given point")]
    VanishingDenominator,
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("catalog entry {id}: {msg}")]
    Catalog { id: String, msg: String },
    #[error("linear system has no solution: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
