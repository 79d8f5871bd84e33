use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::Zero;

use super::Rational;

/// A power series truncated after `x^order`; exactly `order + 1` coefficients
/// are carried.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Panics on an empty coefficient vector.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a power series has at least the constant term");
        PowerSeries { coeffs }
    }

    pub fn from_ints<I: Into<BigInt>>(coeffs: impl IntoIterator<Item = I>) -> Self {
        PowerSeries::new(coeffs.into_iter().map(|c| Rational::from_integer(c.into())).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> PowerSeries {
        PowerSeries::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    /// The coefficients as integers, or `None` if any is fractional.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// Coefficients as `u64` when all are non-negative integers that fit.
    pub fn to_counts(&self) -> Option<Vec<u64>> {
        self.to_integers()?.iter().map(|c| u64::try_from(c).ok()).collect()
    }
}

/// Cauchy product truncated to the smaller of the two orders.
impl Mul for &PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|n| (0..=n).fold(Rational::zero(), |acc, i| acc + &self.coeffs[i] * &rhs.coeffs[n - i]))
            .collect();
        PowerSeries::new(coeffs)
    }
}
