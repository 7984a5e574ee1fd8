//! The scalar type used for degrees, weights and dimension counts.
//!
//! All gradings in this crate are non-negative integers, but they do not stay
//! small: a Dyer-Lashof operation multiplies the particle count by p, so the
//! weight of a word grows like p^length, and dimension counts grow like
//! partition numbers in the bounds. Everything is therefore generic over
//! [`Natural`], a bundle of `num-traits`/`num-integer` capabilities satisfied
//! both by fixed-width unsigned integers (`u64`, `u128`) and by
//! [`num_bigint::BigUint`].
//!
//! Arithmetic on fixed-width scalars is always checked: an overflow panics
//! with an explicit message instead of wrapping. `BigUint` never overflows.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, ToPrimitive};

/// An exact non-negative integer scalar.
pub trait Natural:
    Integer
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Hash
    + Clone
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Natural for T where
    T: Integer
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Hash
        + Clone
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Lifts a small constant into the scalar type.
pub fn nat<N: Natural>(x: u64) -> N {
    N::from_u64(x).expect("scalar type cannot represent a small constant")
}

/// Checked addition; overflow of a fixed-width scalar is a hard error.
pub fn add<N: Natural>(a: &N, b: &N) -> N {
    a.checked_add(b)
        .expect("grading overflow: rerun with an arbitrary-precision scalar (Big)")
}

/// Checked multiplication; overflow of a fixed-width scalar is a hard error.
pub fn mul<N: Natural>(a: &N, b: &N) -> N {
    a.checked_mul(b)
        .expect("grading overflow: rerun with an arbitrary-precision scalar (Big)")
}

/// Index conversion for dense tables.
pub fn to_index<N: Natural>(x: &N) -> usize {
    x.to_usize()
        .expect("grading too large to index a dense table")
}
