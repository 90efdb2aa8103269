//! Exact-arithmetic geometry of root systems.
//!
//! Everything in this crate is computed over the rationals: inner products,
//! Hermite normal forms, lattice membership, and complete enumeration of all
//! lattice vectors of a prescribed norm. On top of those primitives it builds
//! the simple root systems `A`–`G` with their weight lattices, decides whether
//! the norm shells of a weight lattice consist of roots only, and constructs
//! explicit equal-rank counterexamples when they do not.
//!
//! The crate is `no_std` (it allocates, but performs no IO); the companion
//! `rootgeom-cli` crate carries the command-line driver and JSON reports.

#![no_std]
#![forbid(unsafe_code)]
// Index-based loops mirror the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod catalog;
pub mod counterexample;
pub mod lattice;
mod matrix;
pub mod oracle;
pub mod stability;

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;

pub use num_bigint::BigInt;

pub use catalog::{cartan_matrix, reflect, standard_cartan, Family, RootSystem, SimpleType};
pub use lattice::{GramForm, IntegralLattice, QVec};
pub use stability::{
    an_diophantine, angle_classify, check_stability, hypothesis_a, induced_gram, theorem6_sweep,
    StabilityReport, Verdict,
};

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the exact fraction `n/d`. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
