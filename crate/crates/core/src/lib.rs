//! Exact bigraded homology of unordered configuration spaces of R^n.
//!
//! The crate computes, over an odd prime p or the rationals:
//!
//! - the formal operation words (Dyer-Lashof applications on the point class
//!   and, in even dimension, on the Browder bracket) that generate the
//!   homology of the union of all C_k(R^n), enumerated to degree and weight
//!   bounds ([`enumerate`]);
//! - exact bigraded dimension tables of the free graded-commutative algebra
//!   on those generators, by two independent engines that must agree
//!   ([`hilbert`]);
//! - stability diagnostics on such tables: injectivity of the add-a-particle
//!   map at the dimension level, the surjectivity range `i <= k`, and the
//!   instability facts that prove it ([`stability`]);
//! - certified stability ranges for open manifolds obtained from R^n by a
//!   positive-codimension complement, via exact degree bookkeeping
//!   ([`certify`]).
//!
//! Everything is integer arithmetic; there are no floating-point values
//! anywhere. Core types are generic over the [`scalar::Natural`] scalar;
//! [`Big`] (arbitrary precision) and [`N64`] (checked 64-bit) are the two
//! instantiations used in practice.

pub mod certify;
pub mod enumerate;
pub mod hilbert;
pub mod ops;
pub mod scalar;
pub mod stability;

/// Arbitrary-precision scalar: gradings and dimensions can never overflow.
pub type Big = num_bigint::BigUint;

/// Checked 64-bit scalar: faster, and overflow panics instead of wrapping.
pub type N64 = u64;

pub use ops::{AmbientDim, Bigrading, DLApplication, OperationWord, Parity, Prime, WordBase};

/// Generator set over the arbitrary-precision scalar.
pub type BigGeneratorSet = enumerate::GeneratorSet<Big>;
/// Hilbert table over the arbitrary-precision scalar.
pub type BigHilbertTable = hilbert::HilbertTable<Big>;
