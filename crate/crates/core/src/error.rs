use thiserror::Error;

/// Errors produced by construction and numerical evaluation.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter fell outside its mathematical domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A function evaluated to NaN (or infinity where finiteness is required).
    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    /// A self-consistency check between two quadrature resolutions failed.
    #[error("quadrature did not converge: {0}")]
    Unconverged(String),
}

pub type Result<T> = std::result::Result<T, Error>;
