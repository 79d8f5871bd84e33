//! Exact generating functions for permutations that avoid 132 together with
//! further pattern restrictions (avoid, contain exactly once, contain at
//! least once).
//!
//! The crate has three layers:
//!
//! * [`perm`] and [`census`]: permutations, occurrence counting and the
//!   brute-force counter that serves as ground truth;
//! * [`algebra`] and [`chebyshev`]: exact rational functions, the continued
//!   fractions `R_{k;E}` and their Chebyshev closed forms;
//! * [`decomposition`] and [`engine`]: the canonical decomposition of
//!   132-avoiding patterns and the recurrence engine built on it, plus a
//!   catalog of closed forms.
//!
//! [`verify`] bundles the cross-checks between the symbolic and the
//! enumerative sides.

pub mod algebra;
pub mod census;
pub mod chebyshev;
pub mod decomposition;
pub mod engine;
pub mod error;
pub mod perm;
pub mod verify;

pub use algebra::{Polynomial, PowerSeries, Rational, RationalFunction};
pub use error::{Error, Result};
pub use perm::{PatternQuery, PatternSet, Permutation};
