//! Exact combinatorics of intersecting and cross-intersecting uniform set
//! families.
//!
//! The library computes, for concrete ground sizes, everything needed to
//! state and machine-check the extremal theory of large intersecting
//! families: lexicographic initial segments and their exact sizes, cascade
//! representations of diversity values, resistant numbers and pairs,
//! closed-form size/degree/matching bounds, explicit extremal
//! constructions, and brute-force oracles that certify the bounds by
//! exhaustive enumeration at desk scale.
//!
//! All counting is exact: arbitrary-precision integers for cardinalities
//! and exact rationals wherever weighted sums are compared.

pub mod analysis;
pub mod arith;
pub mod bounds;
pub mod cascade;
pub mod constructions;
pub mod error;
pub mod lex;
pub mod oracle;
pub mod sets;

pub use arith::{binom, binom_real, BigCount, ExactRatio};
pub use error::{Error, Result};
pub use sets::{enumerate_ksets, KSet, SetFamily};
