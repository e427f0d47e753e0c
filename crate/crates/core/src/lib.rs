//! Exact-arithmetic workbench for finite-dimensional representations of the
//! subalgebra `U'_q` of quantum affine `sl_2` generated by `e0+`, `e1+`,
//! `e1-`, `k0^{±1}`, `k1^{±1}`.
//!
//! The crate builds evaluation modules and their tensor products, certifies
//! the defining relations, decides irreducibility both by the q-string
//! criterion and by a Burnside matrix-algebra oracle, computes Drinfel'd
//! polynomials, realizes the augmented TD-algebra embedding, and constructs
//! the intertwiner `V(l,a) ⊗ V(m) -> V(m) ⊗ V(l,a)`.

pub mod algebra;
pub mod error;
pub mod intertwiner;
pub mod linalg;
pub mod modules;
pub mod poly;
pub mod scalar;
pub mod structure;

pub use algebra::{Generator, RelationCheck, RelationReport, Representation, TdTriple};
pub use error::{Error, Result};
pub use intertwiner::{CgDecomposition, Intertwiner, Side};
pub use linalg::{Matrix, Subspace};
pub use modules::{ModuleSpec, WeightDecomposition};
pub use poly::Polynomial;
pub use scalar::{QContext, Scalar};
pub use structure::QString;
