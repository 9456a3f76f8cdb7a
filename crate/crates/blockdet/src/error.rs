//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input matrix is not square, or dimensions disagree.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A vertex id, index or assignment is outside its valid range.
    #[error("domain error: {0}")]
    Domain(String),

    /// A caller broke an API contract (missing inverse, mixed arithmetic
    /// modes, coefficient over a zero-loop vertex, ...).
    #[error("contract error: {0}")]
    Contract(String),

    /// Work size exceeds a configured cap.
    #[error("resource error: {what} requires n = {n} but the cap is {cap}")]
    Resource { what: &'static str, n: usize, cap: usize },

    /// A generator spec is infeasible.
    #[error("spec error: {0}")]
    Spec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
