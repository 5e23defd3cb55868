//! Finite-field arithmetic and linear algebra.

mod ext;
mod field;
mod gaussian;
mod matrix;
pub(crate) mod poly;
mod subspace;

pub use ext::ExtField;
pub use field::{prime_power, Field, FiniteField};
pub use gaussian::gaussian_coefficient;
pub use matrix::MatGF;
pub use subspace::{subspace_distance, Subspace};
