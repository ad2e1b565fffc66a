use crate::exactla::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("matrix mixes scalars from different fields")]
    MixedFields,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("cells are not composable: {0}")]
    NotComposable(String),
    #[error("ill-defined map: {0}")]
    IllDefined(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("solution is not unique (solution space dimension {0})")]
    NonUnique(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("generation failed: {0}")]
    Generation(String),
}
