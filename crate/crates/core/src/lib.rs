//! Hilbert series, h-vectors and a-invariants of the orthogonal invariant
//! ring `R = K[Y^T Y]` and of the special orthogonal invariant ring
//! `K[Y^T Y, maxminors(Y)]`, its cyclic cover.
//!
//! Closed forms live in [`symdet`] and [`cover`]; [`oracle`] recomputes the
//! same Hilbert functions by brute-force linear algebra over a prime field,
//! using the polynomials from [`polys`].

pub mod cover;
pub mod error;
pub mod oracle;
pub mod polys;
pub mod series;
pub mod symdet;

pub use error::{Error, Result};
