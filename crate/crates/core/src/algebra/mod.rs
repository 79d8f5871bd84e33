//! Exact univariate algebra over arbitrary-precision rationals.
//!
//! Every generating function in the crate is a [`RationalFunction`]; its
//! Taylor coefficients come out as a [`PowerSeries`].

mod poly;
mod ratfunc;
mod series;

pub use poly::{Polynomial, TermOrder};
pub use ratfunc::{RationalFunction, RationalFunctionJson};
pub use series::PowerSeries;

/// Exact rational number with big-integer numerator and denominator.
pub type Rational = num_rational::BigRational;
