use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{PowerSeries, Polynomial, Rational, TermOrder};
use crate::error::{Error, Result};

/// A quotient `num / den` of polynomials in canonical form.
///
/// Canonical means `gcd(num, den) = 1` and the lowest nonzero coefficient of
/// `den` equals 1 (so `den(0) = 1` whenever `den(0) != 0`). Zero is `0/1`.
/// Every constructor normalizes, so `==` compares functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
        let anchor = den.coeffs()[den.valuation().expect("nonzero denominator")].clone();
        if anchor.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = anchor.recip();
            RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        RationalFunction::from(Polynomial::one())
    }

    pub fn x() -> Self {
        RationalFunction::from(Polynomial::x())
    }

    pub fn from_int(c: i64) -> Self {
        RationalFunction::from(Polynomial::from_ints([c]))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Idempotent re-normalization; values are always canonical already.
    pub fn normalize(&self) -> Self {
        Self::normalized(self.num.clone(), self.den.clone())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    /// Whether the function has a Taylor expansion at 0.
    pub fn is_regular_at_origin(&self) -> bool {
        !self.den.coeff(0).is_zero()
    }

    /// The first `order + 1` Taylor coefficients at `x = 0`.
    pub fn series(&self, order: usize) -> Result<PowerSeries> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::PoleAtOrigin);
        }
        // den * s = num, solved coefficient by coefficient.
        let inv = d0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.num.coeff(n);
            for (j, d) in self.den.coeffs().iter().enumerate().skip(1).take(n) {
                acc -= d * &out[n - j];
            }
            out.push(acc * &inv);
        }
        Ok(PowerSeries::new(out))
    }

    pub fn render(&self, order: TermOrder) -> String {
        let num = self.num.render(order);
        if self.den.is_one() {
            return num;
        }
        let wrap = |p: &Polynomial, s: String| if p.term_count() > 1 { format!("({s})") } else { s };
        format!("{}/{}", wrap(&self.num, num), wrap(&self.den, self.den.render(order)))
    }

    pub fn to_json_value(&self) -> RationalFunctionJson {
        let strings = |p: &Polynomial| p.coeffs().iter().map(|c| c.to_string()).collect();
        RationalFunctionJson { num: strings(&self.num), den: strings(&self.den) }
    }

    /// `{"num":["1","-1","-1"],"den":["1","-2","-1"]}`, ascending coefficients
    /// as decimal strings.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("string arrays always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RationalFunctionJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        RationalFunction::try_from(raw)
    }
}

/// Wire form of a [`RationalFunction`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFunctionJson {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

impl TryFrom<RationalFunctionJson> for RationalFunction {
    type Error = Error;

    fn try_from(raw: RationalFunctionJson) -> Result<Self> {
        let parse = |v: &[String]| -> Result<Polynomial> {
            v.iter()
                .map(|s| s.parse::<Rational>().map_err(|_| Error::Parse(format!("bad coefficient {s:?}"))))
                .collect::<Result<Vec<_>>>()
                .map(Polynomial::new)
        };
        RationalFunction::new(parse(&raw.num)?, parse(&raw.den)?)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(TermOrder::Ascending))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::normalized(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}
