use thiserror::Error;

/// Errors produced by family construction and the algorithms in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The caller passed arguments that do not fit together, such as a set
    /// that is not a member of the family it is looked up in.
    #[error("usage error: {0}")]
    Usage(String),

    /// An input violates a structural requirement (duplicate sets, bad
    /// element names, malformed paths or clauses).
    #[error("invalid input: {0}")]
    Validation(String),

    /// The input is well formed but outside the operation's domain, e.g.
    /// asking for the atoms of a family that is not closed under union.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured size or work limit would be exceeded.
    #[error("capacity exceeded: {what} (limit {limit})")]
    Capacity { what: String, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn capacity(what: impl Into<String>, limit: usize) -> Self {
        Error::Capacity {
            what: what.into(),
            limit,
        }
    }
}
