use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("empty generator list")]
    EmptyInput,

    #[error("zero vector is not allowed as a generator")]
    ZeroGenerator,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("generators of a one-dimensional monoid have gcd {0}; not a numerical semigroup")]
    NotNumerical(u64),

    #[error("generators are linearly dependent")]
    DependentGenerators,

    #[error("integer overflow")]
    Overflow,

    #[error("semigroup is not simplicial")]
    NotSimplicial,

    #[error("semigroup is not Cohen-Macaulay")]
    NotCohenMacaulay,

    #[error("Apery set is infinite or unsupported for this base: {0}")]
    InfiniteApery(String),

    #[error("set is infinite: {0}")]
    Infinite(String),

    #[error("{0} is not an element of the semigroup")]
    NotInSemigroup(String),

    #[error("fiber exceeds the cap of {cap} factorizations")]
    FiberTooLarge { cap: usize },

    #[error("Betti profile is incomplete (bounded sweep to total degree {bound})")]
    IncompleteBetti { bound: u64 },

    #[error("a degree bound is required: {0}")]
    DegreeBoundRequired(String),

    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),

    #[error("invalid gluing: {0}")]
    InvalidGluing(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("genus {requested} exceeds the cap {cap}")]
    GenusCapExceeded { requested: u32, cap: u32 },

    #[error("no semigroup found in the search region")]
    EmptySearch,

    #[error("internal invariant breached: {0}")]
    Invariant(String),
}

impl Error {
    /// Broad category used by front ends to choose an exit status.
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Parse(_)
            | Error::EmptyInput
            | Error::ZeroGenerator
            | Error::DimensionMismatch { .. }
            | Error::NotNumerical(_)
            | Error::InvalidArrangement(_)
            | Error::InvalidGluing(_)
            | Error::InvalidParams(_) => ErrorCategory::Input,
            Error::Invariant(_) => ErrorCategory::Invariant,
            _ => ErrorCategory::Infeasible,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Input,
    Infeasible,
    Invariant,
}
