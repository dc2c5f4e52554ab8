use thiserror::Error;

/// Error type shared by every module in the crate.
///
/// The variants mirror the distinct failure classes of the library:
/// bad arguments, mathematically undefined requests, explicit size caps,
/// malformed circuits/files, and internal contradictions detected while
/// post-checking a construction.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// An argument violates a precondition (wrong length, index out of
    /// range, overlapping blocks, ...).
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The requested value is undefined for this input (e.g. the jump
    /// statistic of a constant profile).
    #[error("domain error: {0}")]
    Domain(String),

    /// The input is valid but exceeds an explicit size cap of the
    /// operation. Exponential blowups fail loudly, not slowly.
    #[error("capability limit exceeded: {0}")]
    Capability(String),

    /// A circuit or serialized artifact failed structural validation.
    #[error("validation error: {0}")]
    Validation(String),

    /// A precondition that was supposed to be established by an earlier
    /// check turned out not to hold.
    #[error("inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
