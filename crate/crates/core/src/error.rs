use thiserror::Error;

/// Errors raised by the arithmetic, module and Hecke layers.
///
/// The variants are grouped so that a driver can triage: bad input,
/// exhausted budgets, and violated mathematical expectations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("size budget exceeded: {0}")]
    Budget(String),
    #[error("objects live over different fields")]
    TowerMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported coefficient ring: {0}")]
    Unsupported(String),
    /// A checked mathematical expectation failed. This signals either an
    /// implementation bug or a genuine counterexample, never bad input.
    #[error("theory violation: {0}")]
    TheoryViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn theory(msg: impl Into<String>) -> Self {
        Error::TheoryViolation(msg.into())
    }
}
