use thiserror::Error;

use crate::report::VerificationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("linear system has no solution")]
    NoSolution,

    #[error("linear system has a {0}-dimensional solution space")]
    NonUnique(usize),

    #[error("left and right inverses disagree")]
    LeftRightMismatch,

    #[error("structure map is not invertible")]
    AlphaNotInvertible,

    #[error("alpha power {power} lies outside the cached window -{window}..{window}")]
    WindowExceeded { power: i32, window: i32 },

    #[error("missing structure: {0}")]
    MissingStructure(String),

    #[error("flavor mismatch: {0}")]
    FlavorMismatch(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A candidate (twist, R-matrix, module) failed its defining conditions.
    #[error("candidate rejected: {}", .0.summary())]
    Rejected(Box<VerificationReport>),

    /// A statement that must follow from validated inputs did not hold.
    #[error("theorem check failed: {}", .0.summary())]
    TheoremViolation(Box<VerificationReport>),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),
}

impl Error {
    pub fn mismatch(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn missing(msg: impl Into<String>) -> Self {
        Error::MissingStructure(msg.into())
    }
}
