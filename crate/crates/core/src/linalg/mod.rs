//! Exact dense and sparse linear algebra over [`Scalar`](crate::Scalar).

mod closure;
mod matrix;
mod sparse;
mod subspace;

pub use closure::{algebra_span_dim, subspace_closure};
pub(crate) use matrix::scalar_from_json;
pub use matrix::Matrix;
pub use sparse::{EchelonBasis, SparseVec};
pub use subspace::Subspace;
