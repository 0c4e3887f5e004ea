use thiserror::Error;

/// Failure modes shared by every evaluation pathway.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("precision of {digits} digits unreachable: {what}")]
    PrecisionUnreachable { what: String, digits: u32 },
    #[error("divergent: {0}")]
    Divergent(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("non-finite value produced by {0}")]
    NonFinite(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("branch jump unresolved: {0}")]
    BranchJump(String),
    #[error("quadrature did not converge: {0}")]
    NoConvergence(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("division by zero")]
    DivisionByZero,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn unreachable(what: impl Into<String>, digits: u32) -> Self {
        Error::PrecisionUnreachable {
            what: what.into(),
            digits,
        }
    }
}
