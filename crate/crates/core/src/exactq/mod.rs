//! Exact rationals and polynomials in the binomial basis.

mod poly;
mod rational;

pub use poly::{binom, factorial, BinomPoly};
pub use rational::Rational;
pub(crate) use rational::int_valuation;
