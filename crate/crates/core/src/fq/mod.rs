//! Finite fields and dense linear algebra over them.

mod field;
mod matrix;

pub use field::{prime_power, Fq, GaloisField, MAX_FIELD_SIZE};
pub use matrix::{column_space, Matrix};
