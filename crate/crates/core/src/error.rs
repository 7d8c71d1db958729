use thiserror::Error;

/// Errors raised by the algebra kernel and the calculus built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: [{left}] vs [{right}]")]
    RingMismatch { left: String, right: String },

    #[error("Groebner basis computation exceeded the step limit of {limit} reductions")]
    StepLimit { limit: u64 },

    #[error("the variety {side} is empty (its ideal contains 1)")]
    EmptyVariety { side: &'static str },

    #[error("the variety W has no point with all coordinates nonzero")]
    EmptyTorusPart,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    /// Two independent computations of the same quantity disagreed.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("reduction failed: {0}")]
    ReductionFailed(String),

    #[error("degenerate hyperplane cut: {0}")]
    DegenerateCut(String),
}

pub type Result<T> = std::result::Result<T, Error>;
