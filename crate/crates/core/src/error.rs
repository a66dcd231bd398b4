use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid ring declaration: {0}")]
    InvalidRing(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("operands live in different rings")]
    ContextMismatch,

    #[error("degree windows differ: {left} vs {right}")]
    WindowMismatch { left: String, right: String },

    #[error("non-homogeneous input in graded mode: {0}")]
    NotHomogeneous(String),

    #[error("annihilator is the unit ideal: {0}")]
    UnitIdeal(String),

    #[error("quotient is not Artinian")]
    NotArtinian,

    #[error("inverse system is not cyclic: {0}")]
    NotCyclic(String),

    #[error("no lift exists: {0}")]
    InfeasibleLift(String),

    #[error("invalid family: {0}")]
    Family(String),

    #[error("diagonal decomposition does not reassemble at t = {0}")]
    DecompositionResidual(u32),

    #[error("family file, line {line}: {msg}")]
    FamilyFile { line: usize, msg: String },

    #[error("{0}")]
    Precondition(String),
}

impl Error {
    /// Syntax-level failures, as opposed to mathematical precondition failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::InvalidRing(_) | Error::InvalidField(_) | Error::FamilyFile { .. }
        )
    }
}
