use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// `v_p(0)` was requested.
    #[error("valuation of zero is undefined")]
    UndefinedValuation,

    #[error("domain error: {0}")]
    Domain(String),

    /// A mathematical statement that must hold for every admissible input
    /// was found to fail. Carries a description of the failing instance.
    #[error("invariant failure: {0}")]
    InvariantFailure(String),

    #[error("degree {requested} exceeds the series cap {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("element {0} is not in the ring")]
    NotInRing(String),

    #[error("ring mismatch between operands")]
    RingMismatch,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unsupported model: {0}")]
    Unsupported(String),

    #[error("not an sl2-representation: {0}")]
    NotARepresentation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("input too large: {0}")]
    TooLarge(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn invariant(msg: impl Into<String>) -> Error {
    Error::InvariantFailure(msg.into())
}
