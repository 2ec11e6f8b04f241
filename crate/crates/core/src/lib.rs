//! Exact computations with one- and two-sided classical localizations of
//! finite-dimensional algebras over prime fields.

pub mod algebra;
pub mod checks;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod localization;
pub mod options;
pub mod oracle;
pub mod par;
pub mod structure;

pub use algebra::{Algebra, AlgebraDesc, Element, Ideal, Side};
pub use error::{Error, Result};
pub use exact::{Mat, Prime, Scalar, Subspace};
pub use options::{Options, DEFAULT_GUARD};
pub use par::Exec;
