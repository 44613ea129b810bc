//! Exact rational linear algebra.
//!
//! Everything here works over [`Rational`](crate::Rational); there is no
//! floating point. Determinants of integer matrices go through Bareiss
//! fraction-free elimination, pseudoinverses through a rank factorization.

mod matrix;
mod ops;
mod rowspace;

pub use matrix::{QMatrix, QVector};
pub use rowspace::RowSpace;
pub use ops::{
    det_bareiss, inverse, is_consistent, min_norm_solution, norm_sq, pseudoinverse,
    max_abs, nullspace, rank, rank_factorization, rref, satisfies_penrose, solve_cramer, solve_inverse, solve_unique, Rref,
};
