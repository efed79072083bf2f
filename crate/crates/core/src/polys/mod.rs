//! Polynomials and matrices over a prime field, and the generator sets of
//! the orthogonal and special orthogonal invariant rings.

mod field;
mod generators;
mod matrix;
mod poly;

pub use field::{PrimeField, DEFAULT_PRIME};
pub use generators::{
    cayley_from_skew, cayley_so, combinations, delta, delta_identity_check, determinant_laplace,
    gram_generators, invariance_check, invariance_for_matrix, maximal_minors, minor_generators,
    p_generators, reflect, substitute_linear, GeneratorKind, InvarianceFailure, InvarianceReport,
    MatrixShape,
};
pub use matrix::MatFp;
pub use poly::{Monomial, PolyFp};
