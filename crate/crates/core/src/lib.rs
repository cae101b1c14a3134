//! Exact computer-algebra kernel for finite-dimensional non-associative
//! algebras over Q and GF(p): free magmas and polynomials, structure-constant
//! algebras with their kernels/quotients/cokernels, and a variety engine for
//! identity checking, reflections, truncated free objects and coproducts.

pub mod algebra;
pub mod error;
pub mod files;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod variety;
pub mod word;

pub use error::{AlgError, Result};
pub use scalar::{ArithOp, FieldSpec, Scalar};
