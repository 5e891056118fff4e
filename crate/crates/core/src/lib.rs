//! Exact-arithmetic verification of a family of binomial-sum identities.
//!
//! Every identity is evaluated along two independent routes (a direct
//! summation and a polynomial/integral construction) over arbitrary
//! precision rationals, and the two sides are compared for exact equality.
//!
//! * [`exact_math`]: binomials, rationals, dense univariate polynomials.
//! * [`identities`]: Comtet-type sum/integral identities, the Kimura–Ruehr
//!   moments and the four-way Ruehr chain.
//! * [`beta_dist`]: exact beta / incomplete beta values and the binomial and
//!   negative binomial distribution identities.
//! * [`collatz_bound`]: the generalized `3x+1` map and the large-deviation
//!   tail sum used to bound its exceptional set.
//! * [`cli`]: deterministic fuzzing, report formats and the suite runner.

pub mod beta_dist;
pub mod cli;
pub mod collatz_bound;
pub mod error;
pub mod exact_math;
pub mod identities;

pub use error::{Error, Result};
pub use exact_math::{binomial, checked_binomial, factorial, Polynomial, Rational};
pub use identities::SidePair;
