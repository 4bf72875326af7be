use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A space configuration violates its structural invariants.
    #[error("invalid space: {0}")]
    InvalidSpace(String),

    /// Two hypervectors from different spaces were combined.
    #[error("space mismatch between operands")]
    SpaceMismatch,

    /// An argument failed validation (empty operand list, bad weights, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Members of a nearly orthogonal set are too similar to each other.
    #[error("correlated members: {0}")]
    CorrelatedMembers(String),

    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("empty codebook")]
    EmptyCodebook,

    #[error("unknown word {0:?}")]
    UnknownWord(String),

    /// A context query addressed a position outside the model's window.
    #[error("context position {position} is outside the ±{window} window")]
    PositionOutOfWindow { position: i64, window: u16 },

    /// The learner has absorbed no experiences, so it has no snapshot yet.
    #[error("learner has no experiences yet")]
    UnseededLearner,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// A persisted file does not follow its declared format.
    #[error("malformed file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
