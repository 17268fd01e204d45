use thiserror::Error;

/// Errors raised by construction and validation routines.
///
/// Obstructed lifts are *not* errors; they are regular outcomes carried by
/// [`crate::lifting::LiftReport`].
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("field error: {0}")]
    Field(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("presentation error: {0}")]
    Presentation(String),

    #[error("algebra invariant violated: {0}")]
    AlgebraInvariant(String),

    #[error("complex invalid at degree {degree}, entry ({row},{col}): {reason}")]
    ComplexInvalid { degree: i64, row: usize, col: usize, reason: String },

    #[error("chain map does not commute with differentials at degree {0}")]
    NotChainMap(i64),

    #[error("algebra mismatch between operands")]
    AlgebraMismatch,

    #[error("mutation postcondition failed: {0}")]
    MutationPostcondition(String),

    #[error("endomorphism splitting failed: {0}")]
    Splitting(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
