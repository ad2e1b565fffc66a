//! Exact linear algebra over Q and prime fields.

mod matrix;
mod quotient;
mod scalar;

pub use matrix::{Echelon, Matrix, RowReducer, Solution};
pub use quotient::QuotientSpace;
pub use scalar::{Field, Scalar};
