use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operand shapes do not conform.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Leading dimension smaller than the number of rows.
    #[error("leading dimension {ld} is smaller than {rows}")]
    LeadingDimension { ld: usize, rows: usize },

    /// Buffer too short for the requested view.
    #[error("buffer of length {len} cannot hold a {rows}x{cols} view with ld {ld}")]
    BufferTooSmall { len: usize, rows: usize, cols: usize, ld: usize },

    /// 1-based element outside the stored triangle or the matrix.
    #[error("element ({i}, {j}) is outside the stored triangle of order {n}")]
    OutOfTriangle { i: usize, j: usize, n: usize },

    /// Leading minor of this 1-based order is not positive definite.
    #[error("leading minor of order {index} is not positive definite")]
    NotPositiveDefinite { index: usize },

    /// Diagonal entry at this 1-based index is exactly zero.
    #[error("triangular matrix is singular: diagonal entry {index} is zero")]
    Singular { index: usize },

    /// The routine was called on data in the wrong factorization state.
    #[error("invalid factorization state: expected {expected}, found {found}")]
    State { expected: &'static str, found: &'static str },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// LAPACK-style INFO value for numerical failures, `None` otherwise.
    pub fn failure_index(&self) -> Option<usize> {
        match *self {
            Error::NotPositiveDefinite { index } | Error::Singular { index } => Some(index),
            _ => None,
        }
    }
}
