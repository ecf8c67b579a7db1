use thiserror::Error;

/// Every failure the engine can report. Oracles refuse rather than guess, so
/// most variants carry the query or hypothesis that blocked the computation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GwError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("space mismatch: {0} vs {1}")]
    SpaceMismatch(String, String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("inapplicable: {0}")]
    Inapplicable(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = GwError> = std::result::Result<T, E>;
