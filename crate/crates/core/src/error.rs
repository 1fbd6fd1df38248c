use thiserror::Error;

/// Errors raised across the engine.
#[derive(Debug, Error)]
pub enum EngineError {
    /// Malformed or out-of-domain input.
    #[error("input error: {0}")]
    Input(String),

    /// Vector/matrix dimension mismatch.
    #[error("shape error: {0}")]
    Shape(String),

    /// A structural precondition failed (not a subalgebra, not reductive, ...).
    #[error("structural error: {0}")]
    Structure(String),

    /// An exact invariant that must hold was violated.
    #[error("invariant failure: {0}")]
    Invariant(String),

    /// A hinted decomposition failed verification.
    #[error("decomposition invalid: {0}")]
    DecompositionInvalid(String),

    /// The hint-free decomposition search exhausted its retry budget.
    #[error("undetermined decomposition: {0}")]
    UndeterminedDecomposition(String),

    /// Degenerate input where a nonzero object was required.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// The M-space classifier hypotheses do not hold.
    #[error("not applicable: {0}")]
    NotApplicable(String),
}
