//! Exact rational arithmetic and sparse linear algebra.

mod elim;
pub mod matrix;
pub mod rational;
pub(crate) mod sparse;

pub use matrix::{mat_kernel, mat_mul, solve_linear, RatMatrix, Rref};
pub use rational::{rat, Rational};

/// Column vector with entries `1` at `i` and `0` elsewhere.
pub fn unit_vector(len: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::ZERO; len];
    v[i] = Rational::ONE;
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}
