//! Exact and numeric machinery for checking bounded-solution conjectures on
//! systems of `x_i = 1`, `x_i + x_j = x_k` and `x_i * x_j = x_k` equations.
//!
//! * [`linalg`]: exact rational linear algebra (RREF, Bareiss, Cramer,
//!   pseudoinverse, minimal-norm least squares).
//! * [`lin`]: W_n systems, their matrix encoding, generators and checkers.
//! * [`poly`]: multivariate polynomials over Q, Buchberger, dimension
//!   classification and numeric solving of zero-dimensional systems.
//! * [`polysys`]: E_n systems, candidate pools, greedy saturation and checkers.
//! * [`text`]: the plain-text system format.
//! * [`experiment`]: batch drivers, run configuration and reports.

pub mod combin;
pub mod error;
pub mod experiment;
pub mod lin;
pub mod linalg;
pub mod poly;
pub mod polysys;
pub mod rational;
pub mod rng;
pub mod text;

pub use error::{Error, Result};
pub use linalg::{QMatrix, QVector};
pub use rational::Rational;
pub use rng::SplitMix64;
