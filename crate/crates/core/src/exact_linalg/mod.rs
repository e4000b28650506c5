//! Exact linear algebra over the rationals and prime fields.

mod echelon;
mod matrix;
mod scalar;

pub use echelon::{RowReducer, SparseRow};
pub use matrix::{dot, AffineSolution, ExactMatrix, Rref};
pub use scalar::{FieldSpec, Scalar, MAX_PRIME};
