use thiserror::Error;

/// Errors raised by constructions and verification routines.
///
/// `Falsified` is reserved for a structural claim that a computation has
/// contradicted; every other variant is a usage or input problem.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid simple type: {0}")]
    InvalidType(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("construction bug: {0}")]
    ConstructionBug(String),

    #[error("falsified: {0}")]
    Falsified(String),

    #[error("element is not ad-nilpotent")]
    NotNilpotent,

    #[error("action is not diagonalizable over the rationals: {0}")]
    NotDiagonalizable(String),

    #[error("degree {degree} leaves the window [{lo}, {hi}]")]
    WindowOverflow { degree: i64, lo: i64, hi: i64 },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("size limit exceeded: dimension {dim} > cap {cap}")]
    TooLarge { dim: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
