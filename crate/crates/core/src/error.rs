use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An instance or document violates a structural invariant.
    #[error("invalid {entity}: {reason}")]
    Validation { entity: String, reason: String },

    /// A matching is not feasible for the instance it is used with.
    #[error("infeasible matching: {0}")]
    InfeasibleMatching(String),

    /// An operation was called outside the capacity regime it supports.
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(&'static str),

    #[error("instance too large for enumeration (limit {limit})")]
    TooLargeForEnumeration { limit: u64 },

    #[error("instance too large for exact search ({candidates} candidates, ceiling {ceiling})")]
    TooLargeForExactSearch { candidates: u128, ceiling: u128 },

    /// The requested object does not exist (no perfect matching at any capacity, ...).
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// A self-check failed. Never expected; reported instead of a silent answer.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub(crate) fn validation(entity: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            entity: entity.into(),
            reason: reason.into(),
        }
    }
}
