//! Left-invariant circular and linear orders on countable groups.
//!
//! The crate evaluates closed-form circular orders (rotation orders on
//! finitely generated abelian groups, intertwined orders built from a
//! blowdown kernel, lexicographic orders on free products, finite rotations),
//! validates the cocycle axioms on finite samples, realizes orders as marked
//! points on the circle, and searches for finite obstruction certificates
//! proving that a group admits no circular or linear order.

pub mod abelian;
pub mod algebraic;
pub mod error;
pub mod freeprod;
pub mod group;
pub mod lattice;
pub mod obstruction;
pub mod order;
pub mod realization;
pub mod scalar;

pub use algebraic::SurdSum;
pub use error::{Error, Result};
pub use group::{Element, FiniteTable, GroupDescriptor, Side, TorsionCheck};
pub use order::{CircularOrder, CircularOrderSpec, LinearOrderSpec, OrderValue};
pub use scalar::IntScalar;

/// Exact real numbers `Σ q_d·√d` with arbitrary-precision rational
/// coefficients.
pub type AlgebraicReal = SurdSum<num_bigint::BigInt>;

/// Rational numbers with arbitrary precision.
pub type Rational = num_rational::BigRational;
