//! Polynomials over Q, Gröbner bases and numeric solving.

mod groebner;
mod monomial;
mod polynomial;
mod roots;
mod solve;

pub use groebner::{
    buchberger, classify_dimension, normal_form, s_polynomial, standard_monomial_count,
    standard_monomials, Dimension, GroebnerBasis,
};
pub use monomial::{Monomial, MonomialOrder, OrderKind, MAX_VARS};
pub use polynomial::Polynomial;
pub use roots::{complex_roots, univariate_roots, RootOptions, RootSet, UniPoly};
pub use solve::{residual, solve_zero_dim, ComplexVector, SolveOptions, Solutions};
