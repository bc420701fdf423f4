use thiserror::Error;

use crate::textio::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    /// The input polynomial (or formula) does not have the shape an algorithm requires.
    #[error("shape error: {0}")]
    Shape(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A search visited more nodes than its configured budget allows.
    #[error("budget exceeded: more than {limit} {what}")]
    BudgetExceeded { what: &'static str, limit: u64 },
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn invalid_witness(msg: impl Into<String>) -> Self {
        Error::InvalidWitness(msg.into())
    }

    pub(crate) fn invalid_argument(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn is_budget_exceeded(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub(crate) fn check_c(c: u32) -> Result<()> {
    if c < 2 {
        Err(Error::invalid_argument(format!("c must be at least 2, got {c}")))
    } else {
        Ok(())
    }
}
