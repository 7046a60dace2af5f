//! Prime-field arithmetic and exact linear algebra.

mod basis;
mod field;
mod matrix;
mod span;
mod subspace;
pub(crate) mod text;

pub use basis::{RowBasis, XorBasis};
pub use field::{ArithOp, Field, FieldElement, SUPPORTED_ORDERS};
pub use matrix::{pack_row, Matrix};
pub use span::{span_vectors, SpanVectors, SPAN_BUDGET};
pub use subspace::{enumerate_subspaces, gaussian_binomial, Subspaces};

/// Hamming weight of a residue vector.
pub fn weight(v: &[u8]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}
