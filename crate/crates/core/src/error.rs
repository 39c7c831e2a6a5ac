use thiserror::Error;

use crate::verify::Witness;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A value lies outside the parameter space (cell out of range, wrong weight, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An operation was applied outside the domain where it is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The parameters are legal but no construction or formula covers them.
    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    /// An input failed a structural precondition of a construction.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A constructed code did not pass verification. Carries the collision witnesses.
    #[error("verification failed for {branch}: {detail}")]
    VerificationFailed {
        branch: String,
        detail: String,
        witnesses: Vec<Witness>,
    },

    /// A search ran out of its node or time budget before reaching an answer.
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("malformed document: {0}")]
    Parse(String),
}
