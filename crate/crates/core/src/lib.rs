//! Invariants of higher-dimensional noncommutative tori.
//!
//! A noncommutative torus is determined by a real skew-symmetric matrix
//! whose entries live in a user-declared finite-dimensional Q-vector space
//! of reals. This crate computes the classification data attached to such a
//! matrix: nondegeneracy (equivalently, simplicity of the algebra), the
//! exterior exponential and the range of the trace on K_0, decision
//! procedures for isomorphism and Morita equivalence, a constructive
//! factorization of GL_d(Q) over GL_d(Z) and coordinate dilations, and
//! certified integer-lattice approximation searches.
//!
//! Everything is exact: arbitrary-precision integers and rationals
//! throughout, no floating point.

pub mod classify;
pub mod exact;
pub mod glq;
pub mod ktheory;
pub mod lattice;
pub mod lll;
pub mod symreal;
pub mod torus;

pub use exact::{IntMatrix, RatMatrix};
