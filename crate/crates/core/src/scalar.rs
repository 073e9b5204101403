//! Exact scalar rings the linear algebra layer is generic over.
//!
//! Everything here must be exact: the elimination kernels rely on exact
//! division, so machine integers (`i64`, `i128`), [`BigInt`](num_bigint::BigInt)
//! and [`BigRational`](num_rational::BigRational) qualify while floats do not.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num};

/// An exact commutative ring with exact division wherever a quotient is
/// known to exist.
pub trait Scalar:
    Clone + Num + Neg<Output = Self> + PartialOrd + FromPrimitive + Debug + Display + Send + Sync
{
}

impl Scalar for i64 {}

impl Scalar for i128 {}

impl Scalar for BigInt {}

impl Scalar for Ratio<BigInt> {}

impl Scalar for Ratio<i64> {}

/// Lossless embedding of a multiplicity into a scalar ring.
pub(crate) fn from_u64<T: Scalar>(v: u64) -> T {
    T::from_u64(v).expect("scalar ring cannot represent a multiplicity")
}
