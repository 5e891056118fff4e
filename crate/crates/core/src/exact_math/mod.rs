//! Exact scalar and polynomial arithmetic.

mod binomial;
mod polynomial;
mod rational;

pub use binomial::{binomial, checked_binomial, factorial};
pub use polynomial::Polynomial;
pub use rational::{int, ln_rational, parse_rational, rat, rational_pow, to_f64, Rational};
