use alloc::string::String;

/// Errors raised by the core library.
///
/// The categories line up with command-line exit codes: input errors,
/// resource exhaustion, and violated invariants of computed objects.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("enumeration budget exceeded: need {needed} points, budget {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("p-adic precision exhausted: {0}")]
    Precision(String),
    #[error("iteration did not converge: {0}")]
    Convergence(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}

pub type Result<T> = core::result::Result<T, Error>;
