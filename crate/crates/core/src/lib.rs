//! Exact-arithmetic workbench for three linked bodies of classical algebra:
//! group determinants and Frobenius k-characters of finite groups, Fricke
//! trace identities for 2x2 matrices, and Markov-triple arithmetic.
//!
//! Everything that verifies an identity runs over exact scalars — unbounded
//! rationals, cyclotomic numbers, unbounded integers. Floating point appears
//! only in display helpers (`Cyclo::embed_complex`, `fricke::boundary_length`).
//!
//! The polynomial and matrix kernels are generic over the scalar type (see
//! [`scalar`]); the aliases below fix the concrete instantiations used by the
//! rest of the crate and by the CLI.

pub mod cyclo;
pub mod error;
pub mod scalar;

pub mod group;
pub mod matrix;
pub mod poly;

pub mod characters;
pub mod fricke;
pub mod markov;

pub use cyclo::{Cyclo, Int, Rat};
pub use error::{Error, Result};
pub use scalar::{FieldScalar, Scalar};

/// Sparse multivariate polynomial over the cyclotomic field.
pub type Poly = poly::MultiPoly<Cyclo>;

/// Dense square matrix over the cyclotomic field.
pub type CMatrix = matrix::SqMatrix<Cyclo>;

/// 2x2 matrix over exact rationals.
pub type Mat2Q = fricke::Mat2<Rat>;

/// Trace coordinates (x, y, z, commutator trace) over exact rationals.
pub type TraceTripleQ = fricke::TraceTriple<Rat>;
