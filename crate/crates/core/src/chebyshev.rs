//! Continued fractions `R_{k;E}` and their Chebyshev closed forms.
//!
//! `R_{k;E}(x)` is the `k`-step fraction
//!
//! ```text
//!            1
//! ---------------------
//! 1 -        x
//!     -----------------
//!     1 - ...
//!             x
//!         ---------
//!         1 - x*E
//! ```
//!
//! with `R_{0;E} = E`, i.e. `R_{k;E} = 1 / (1 - x R_{k-1;E})`.
//!
//! The closed forms are usually written with Chebyshev polynomials of the
//! second kind evaluated at `t = 1/(2 sqrt(x))`. Everything here works with
//! the reduced sequence
//!
//! ```text
//! q_k(x) = x^(k/2) U_k(1/(2 sqrt(x)))
//! ```
//!
//! which is a genuine polynomial: multiplying `U_k(t) = 2t U_{k-1}(t) - U_{k-2}(t)`
//! by `x^(k/2)` gives `q_k = q_{k-1} - x q_{k-2}` with `q_{-1} = 0`, `q_0 = 1`.
//! Substituting `U_m = x^(-m/2) q_m` turns the half-integer expressions into
//! polynomial ones:
//!
//! * `R_{k;E} = (q_{k-1} - x E q_{k-2}) / (q_k - x E q_{k-1})` for `k >= 1`,
//! * `R_{1;E} R_{2;E} ... R_{k;E} = 1 / (q_k - x E q_{k-1})`,
//! * `W_{k;j} = U_{k-j} - x U_{k-2-j}` equals `x^(-(k-j)/2) (q_{k-j} - x^2 q_{k-j-2})`.
//!
//! Any leftover odd power of `sqrt(x)` is tracked by [`HalfPower`] and is an
//! error when it fails to cancel.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{Polynomial, PowerSeries, RationalFunction};
use crate::error::{Error, Result};

/// `q_k` for `k >= -1`: `q_{-1} = 0`, `q_0 = q_1 = 1`, `q_k = q_{k-1} - x q_{k-2}`.
pub fn reduced_chebyshev(k: i64) -> Result<Polynomial> {
    if k < -1 {
        return Err(Error::IndexOutOfRange { index: k, range: "k >= -1".into() });
    }
    let x = Polynomial::x();
    let (mut prev, mut cur) = (Polynomial::zero(), Polynomial::one());
    if k == -1 {
        return Ok(prev);
    }
    for _ in 0..k {
        let next = &cur - &(&x * &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// `q_m` with the extension `q_m = 0` for every `m < -1`.
fn reduced_chebyshev_extended(m: i64) -> Polynomial {
    reduced_chebyshev(m.max(-1)).expect("index clamped to the valid range")
}

/// `R_{k;E}` by unrolling `R_{j;E} = 1/(1 - x R_{j-1;E})` starting from `R_{0;E} = E`.
pub fn cf_iterative(k: usize, e: &RationalFunction) -> Result<RationalFunction> {
    let x = RationalFunction::x();
    let mut r = e.clone();
    for _ in 0..k {
        let den = &RationalFunction::one() - &(&x * &r);
        r = den.recip().map_err(|_| Error::DegenerateContinuedFraction)?;
    }
    Ok(r)
}

/// `q_k - x E q_{k-1}` as a rational function.
fn shifted_pair(k: i64, e: &RationalFunction) -> Result<RationalFunction> {
    let hi = RationalFunction::from(reduced_chebyshev(k)?);
    let lo = RationalFunction::from(reduced_chebyshev(k - 1)?);
    Ok(&hi - &(&(&RationalFunction::x() * e) * &lo))
}

fn require_positive(k: usize) -> Result<i64> {
    if k == 0 {
        Err(Error::IndexOutOfRange { index: 0, range: "k >= 1".into() })
    } else {
        Ok(k as i64)
    }
}

/// `R_{k;E}` from the closed form `(q_{k-1} - x E q_{k-2}) / (q_k - x E q_{k-1})`, `k >= 1`.
pub fn cf_closed(k: usize, e: &RationalFunction) -> Result<RationalFunction> {
    let k = require_positive(k)?;
    let den = shifted_pair(k, e)?;
    if den.is_zero() {
        return Err(Error::DegenerateContinuedFraction);
    }
    let num = if k == 1 { RationalFunction::one() } else { shifted_pair(k - 1, e)? };
    num.checked_div(&den)
}

/// `R_{1;E} R_{2;E} ... R_{k;E}` from the closed form `1 / (q_k - x E q_{k-1})`, `k >= 1`.
pub fn cf_product_closed(k: usize, e: &RationalFunction) -> Result<RationalFunction> {
    let k = require_positive(k)?;
    shifted_pair(k, e)?.recip().map_err(|_| Error::DegenerateContinuedFraction)
}

/// The same product, multiplied out term by term from [`cf_iterative`].
pub fn cf_product_iterative(k: usize, e: &RationalFunction) -> Result<RationalFunction> {
    require_positive(k)?;
    (1..=k).try_fold(RationalFunction::one(), |acc, j| Ok(&acc * &cf_iterative(j, e)?))
}

/// How [`reduced_w`] treats a reference to `q_m` with `m < -1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NegativeIndex {
    /// Refuse with `IndexOutOfRange`.
    #[default]
    Reject,
    /// Read `q_m` as zero.
    Zero,
}

/// Reduced `W_{k;j}`: `q_{k-j} - x^2 q_{k-j-2}`, which is `x^((k-j)/2) W_{k;j}`.
///
/// Requires `k - j >= 0`. For `k - j = 0` the term `q_{-2}` appears and is
/// only accepted under [`NegativeIndex::Zero`].
pub fn reduced_w(k: i64, j: i64, negative: NegativeIndex) -> Result<Polynomial> {
    let m = k - j;
    if m < 0 || (m - 2 < -1 && negative == NegativeIndex::Reject) {
        return Err(Error::IndexOutOfRange { index: m, range: "k - j >= 1 (or >= 0 with q_m = 0 for m < -1)".into() });
    }
    let x2 = Polynomial::monomial(One::one(), 2);
    Ok(&reduced_chebyshev(m)? - &(&x2 * &reduced_chebyshev_extended(m - 2)))
}

/// Catalan numbers `c_0..=c_n` via `c_{m+1} = sum_i c_i c_{m-i}`.
pub fn catalan_numbers(n: usize) -> Vec<BigInt> {
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for m in 0..n {
        let next = (0..=m).fold(BigInt::zero(), |acc, i| acc + &c[i] * &c[m - i]);
        c.push(next);
    }
    c
}

/// `[c_0, ..., c_order]` as a power series: the coefficientwise limit of `R_k` as `k` grows.
pub fn catalan_series(order: usize) -> PowerSeries {
    PowerSeries::from_ints(catalan_numbers(order))
}

/// `sum_{j < l} c_j x^j`, the truncated Catalan polynomial.
pub fn catalan_polynomial(l: usize) -> Polynomial {
    if l == 0 {
        return Polynomial::zero();
    }
    Polynomial::from_ints(catalan_numbers(l - 1))
}

/// A value `x^(half_exp/2) * value`, used to carry `sqrt(x)` factors through
/// a computation until they cancel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPower {
    pub half_exp: i64,
    pub value: RationalFunction,
}

impl HalfPower {
    pub fn new(half_exp: i64, value: RationalFunction) -> Self {
        HalfPower { half_exp, value }
    }

    pub fn mul(&self, rhs: &HalfPower) -> HalfPower {
        HalfPower { half_exp: self.half_exp + rhs.half_exp, value: &self.value * &rhs.value }
    }

    pub fn recip(&self) -> Result<HalfPower> {
        Ok(HalfPower { half_exp: -self.half_exp, value: self.value.recip()? })
    }

    /// Collapses into an ordinary rational function, failing if `sqrt(x)` survives.
    pub fn reduce(&self) -> Result<RationalFunction> {
        if self.value.is_zero() {
            return Ok(RationalFunction::zero());
        }
        if self.half_exp % 2 != 0 {
            return Err(Error::UnreducedHalfPower(self.half_exp));
        }
        let e = self.half_exp / 2;
        let xe = RationalFunction::from(Polynomial::monomial(One::one(), e.unsigned_abs() as usize));
        if e >= 0 {
            Ok(&self.value * &xe)
        } else {
            self.value.checked_div(&xe)
        }
    }
}
