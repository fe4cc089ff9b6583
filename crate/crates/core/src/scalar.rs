//! Integer scalar abstraction shared by the exact arithmetic layers.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer type usable as the coefficient ring of surd sums and
/// integer lattices.
///
/// Implemented for `i64`, `i128` and `num_bigint::BigInt`. Fixed-width
/// variants are faster but overflow on large coefficients; the crate-level
/// aliases use `BigInt`.
pub trait IntScalar:
    Integer
    + Signed
    + Roots
    + Clone
    + Debug
    + Display
    + FromStr
    + FromPrimitive
    + ToPrimitive
    + Into<BigInt>
    + TryFrom<BigInt>
    + std::hash::Hash
    + Send
    + Sync
    + 'static
{
}

impl<T> IntScalar for T where
    T: Integer
        + Signed
        + Roots
        + Clone
        + Debug
        + Display
        + FromStr
        + FromPrimitive
        + ToPrimitive
        + Into<BigInt>
        + TryFrom<BigInt>
        + std::hash::Hash
        + Send
        + Sync
        + 'static
{
}

pub(crate) fn from_u64<T: IntScalar>(x: u64) -> T {
    T::from_u64(x).expect("scalar type cannot hold u64 value")
}

pub(crate) fn from_i64<T: IntScalar>(x: i64) -> T {
    T::from_i64(x).expect("scalar type cannot hold i64 value")
}
