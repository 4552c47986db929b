use std::fmt;

/// Error type shared by every module in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument fell outside an operation's domain.
    Domain(String),
    /// An iterative scheme failed to reach its target within its budget.
    Convergence(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Convergence(msg) => write!(f, "convergence error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
