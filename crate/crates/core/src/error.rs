use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HornError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("column {column} of B sums to {sum}, expected 0")]
    ZeroColumnSums { column: usize, sum: String },

    #[error("B has rank {rank}, expected 2")]
    RankDeficient { rank: usize },

    #[error("Gale dual is inconsistent with B: {0}")]
    InconsistentGale(String),

    #[error("vector is not in the column lattice of B")]
    NotInColumnSpace,

    #[error("volume {numerator}/{denominator} is not a positive integer")]
    NonIntegralVolume { numerator: String, denominator: String },

    #[error("genericity failure: {0}")]
    GenericityFailure(String),

    #[error("resource limit reached in {stage}: {detail}")]
    ResourceExhausted { stage: String, detail: String },

    #[error("identity violated: {0}")]
    IdentityViolation(String),

    #[error("operator does not annihilate the candidate: {0}")]
    Violation(String),

    #[error("unsupported operator shape: {0}")]
    UnsupportedShape(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl HornError {
    pub fn exhausted(stage: &str, detail: impl Into<String>) -> Self {
        HornError::ResourceExhausted {
            stage: stage.to_string(),
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, HornError>;
