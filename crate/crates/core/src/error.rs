use thiserror::Error;

use crate::interface::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by group construction, number theory and search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A table realization would exceed the configured maximum order.
    #[error("{what} has order {needed}, above the realization bound of {bound} elements")]
    OrderBound {
        what: String,
        needed: String,
        bound: usize,
    },
    /// Input outside the range supported by deterministic primality testing.
    #[error("{0} exceeds the 64-bit range supported by primality testing and factorization")]
    TooLarge(String),
    /// A fixed-width scalar overflowed.
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
    /// Violated precondition on a mathematically meaningful input.
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Coarse classification used by the command line for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Domain,
    Resource,
    Syntax,
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::OrderBound { .. } | Error::TooLarge(_) | Error::Overflow(_) => {
                ErrorKind::Resource
            }
            Error::Domain(_) => ErrorKind::Domain,
            Error::Parse(e) if e.is_syntax() => ErrorKind::Syntax,
            Error::Parse(_) => ErrorKind::Domain,
        }
    }
}
