//! Exact Ext, Tor and cohomological operators over finite-dimensional
//! commutative algebras presented as quotients of polynomial rings.

pub mod algebra;
pub mod corpus;
pub mod error;
pub mod extensions;
pub mod field;
pub mod homology;
pub mod linalg;
pub mod operators;
pub mod suites;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use linalg::{Matrix, SubspaceBasis};
