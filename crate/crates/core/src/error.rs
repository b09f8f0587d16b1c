use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix is singular: {0}")]
    Singular(String),

    #[error("missing generator matrix {0}")]
    MissingGenerator(String),

    #[error("module fails relation {relation}")]
    RelationFailed { relation: String },

    #[error("operator does not descend to the balanced quotient: {witness}")]
    DescentFailure { witness: String },

    #[error("vector is not in the image of m -> m (x) v: {witness}")]
    NotInImage { witness: String },

    #[error("action is not of the required weight-shifted form: {witness}")]
    WeightForm { witness: String },

    #[error("loops {first} and {second} do not commute: {witness}")]
    NonCommuting {
        first: usize,
        second: usize,
        witness: String,
    },

    #[error("gluing condition failed: {0}")]
    Condition(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("outside the range ℓ ≤ n: {0}")]
    Hypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;
