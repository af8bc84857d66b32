//! Exact linear algebra over ℚ and prime fields.

mod complex;
mod matrix;
mod scalar;

pub use complex::{GradedDims, VectorSpaceComplex};
pub use matrix::ExactMatrix;
pub use scalar::{Field, Scalar};
