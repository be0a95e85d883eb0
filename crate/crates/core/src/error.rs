use thiserror::Error;

use crate::interference::Representation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("wave leaks through the grid boundary (relative edge amplitude {edge:.3e})")]
    BoundaryLeakage { edge: f64 },

    #[error("matrix is not hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("{0} did not converge")]
    Convergence(&'static str),

    #[error("operation requires the {expected} representation")]
    WrongRepresentation { expected: Representation },

    #[error("fringes are not resolved: {0:.1} samples per period, need at least 16")]
    UnresolvedFringes(f64),

    #[error("degenerate double well: {0}")]
    DegenerateWell(String),

    #[error("no root in bracket [{lo}, {hi}]")]
    NoRootInBracket { lo: f64, hi: f64 },

    #[error("two-level approximation invalid: overlap {0:.3e} is not small")]
    ValidityViolation(f64),

    #[error("measurement data are inadequate (residual {0:.3e})")]
    Inadequate(f64),

    #[error("regularized factor vector has zero norm, K_max undefined")]
    ZeroFactorNorm,

    #[error("{0} undefined real dimensions exceed the completion scan limit")]
    ScanDimension(usize),

    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),

    #[error("grid too coarse or too narrow: {0}")]
    InsufficientGrid(String),
}

pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidArgument(msg()))
    }
}
