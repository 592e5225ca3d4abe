//! Exact sparse linear algebra over the rationals.

mod rational;
mod sparse;

pub use rational::Rational;
pub use sparse::SparseMatrix;
