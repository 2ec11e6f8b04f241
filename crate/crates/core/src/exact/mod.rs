//! Exact arithmetic in GF(p) and dense linear algebra over it.

mod mat;
mod scalar;
mod subspace;

pub use mat::{Mat, Rref};
pub use scalar::{Prime, Scalar};
pub use subspace::{Subspace, SubspacePair};
