use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid D number: {0}")]
    InvalidDNumber(String),

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    /// A D number without exactly one component of full mass was asked for a crisp value.
    #[error("D number is not reducible to a crisp preference value")]
    NotReducible,

    /// Cell indices are 1-based, matching the alternative numbering A1..An.
    #[error("entry ({row}, {col}) is not reducible to a crisp preference value")]
    NotReducibleCell { row: usize, col: usize },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("matrix must be square and non-empty: {0}")]
    Shape(String),

    #[error("exact triangulation supports at most {max} alternatives, got {n}")]
    SizeLimit { n: usize, max: usize },

    #[error("credibility parameter must be positive and finite, got {0}")]
    InvalidLambda(f64),

    #[error("credibility parameter {lambda} is below the minimum feasible value {lambda_min}")]
    LambdaTooSmall { lambda: f64, lambda_min: f64 },
}
