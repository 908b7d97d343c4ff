//! Scalar trait bounds for the generic kernels.
//!
//! Matrices and sparse polynomials are generic over the coefficient scalar.
//! [`Scalar`] is a commutative ring (enough for determinants by Laplace
//! expansion and all trace identities); [`FieldScalar`] adds exact division
//! for Gaussian elimination and the `1/k!` normalizations.
//!
//! Both `num::BigRational` and [`crate::cyclo::Cyclo`] satisfy `FieldScalar`,
//! so the same kernels run over plain rationals and over cyclotomic fields.

use std::fmt::{Debug, Display};
use std::ops::{Div, Neg, Sub};

use num_traits::{FromPrimitive, One, Zero};

/// Commutative-ring scalar: addition, subtraction, multiplication, 0 and 1.
pub trait Scalar:
    Clone + PartialEq + Debug + Display + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone + PartialEq + Debug + Display + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

/// Field scalar: a [`Scalar`] with exact division and integer embedding.
pub trait FieldScalar: Scalar + Div<Output = Self> + FromPrimitive {
    /// Embeds a non-negative integer, panicking only if the type cannot
    /// represent it (never the case for bignum-backed scalars).
    fn from_nat(n: u64) -> Self {
        Self::from_u64(n).expect("integer embedding")
    }
}

impl<T> FieldScalar for T where T: Scalar + Div<Output = Self> + FromPrimitive {}
