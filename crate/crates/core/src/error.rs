use thiserror::Error;

use crate::scalar::ExtScalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("`{lhs} - {rhs}` is not defined in the extended max-plus arithmetic")]
    UndefinedExtOp { lhs: ExtScalar, rhs: ExtScalar },

    #[error("NaN is not a valid scalar")]
    NotANumber,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("every row of the objective matrix is eps; the objective is identically eps")]
    EmptyObjective,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn dims(rows: usize, cols: usize) -> String {
    format!("{rows}x{cols}")
}
