use thiserror::Error;

/// Errors raised by the algebra, geometry and generation routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("variable `{0}` has no assigned image")]
    UnboundVariable(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("resource budget of {budget} reduction steps exhausted")]
    ResourceLimit { budget: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),

    #[error("variable collision between factors: {0}")]
    VariableCollision(String),

    #[error("invalid partition: {0}")]
    PartitionInvalid(String),

    #[error("dropped coordinate `{0}` does not have a constant exponent")]
    NonconstantDroppedExponent(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("normalized volume {0} is not an integer")]
    NonIntegerResult(String),

    #[error("subduction failed to decrease the leading term at step {step}")]
    NonTermination { step: usize },

    #[error("generic count disagrees between seeds: {first} (seed {seed_a}) vs {second} (seed {seed_b})")]
    GenericityFailure {
        first: String,
        second: String,
        seed_a: u64,
        seed_b: u64,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
