//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("rank error: {0}")]
    Rank(String),

    #[error("basis cannot be completed to a unimodular matrix: {0}")]
    NotCompletable(String),

    #[error("invalid grid: distinct nonzero points required on axis {axis}")]
    InvalidGrid { axis: usize },

    #[error("not a real root: {0}")]
    NotARealRoot(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("system mismatch: {0}")]
    SystemMismatch(String),

    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(String),

    #[error("degenerate functional: all highest weights are zero")]
    DegenerateSpec,

    #[error("precondition violated: {0}")]
    Precondition(String),
}
