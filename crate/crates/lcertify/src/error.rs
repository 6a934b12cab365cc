use thiserror::Error;

/// Crate-wide error type. Variant names follow the failure modes of the
/// individual operations; `PreconditionViolated` carries the verbatim
/// condition text so callers can surface it in audit trails.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("operation requires class {expected}, descriptor has {got}")]
    WrongClass { expected: &'static str, got: &'static str },
    #[error("branch cut hit: {0}")]
    BranchCutHit(String),
    #[error("pole of a gamma factor hit at {0}")]
    PoleHit(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("precondition violated: {condition}{}", detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default())]
    PreconditionViolated { condition: String, detail: Option<String> },
    #[error("missing attestation: {0}")]
    MissingAttestation(String),
    #[error("not a pole: {0}")]
    NotAPole(String),
    #[error("pole order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("gamma factors must share a single lambda, found {0}")]
    UnequalLambdas(String),
    #[error("residue chain did not satisfy the truncation condition within {0} steps")]
    NonConvergent(usize),
    #[error("pole too close to the evaluation point: {0}")]
    PoleProximity(String),
    #[error("singular D term: 1 - sigma + eps' vanished")]
    SingularD,
    #[error("error budget not achievable: {0}")]
    BudgetExceeded(String),
    #[error("scan is not certified complete below t = {0}")]
    IncompleteBelow(f64),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn precondition(condition: impl Into<String>) -> Self {
        Error::PreconditionViolated { condition: condition.into(), detail: None }
    }

    pub fn precondition_at(condition: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::PreconditionViolated { condition: condition.into(), detail: Some(detail.into()) }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
