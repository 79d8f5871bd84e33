//! Closed forms for families built from `U_l^k`, the permutations of length
//! `k` that end in `l+1, l+2, ..., k`.

use num_traits::One;

use crate::algebra::{Polynomial, RationalFunction};
use crate::chebyshev::{catalan_polynomial, cf_closed, reduced_chebyshev, reduced_w, HalfPower, NegativeIndex};
use crate::census::next_permutation;
use crate::error::{Error, Result};
use crate::perm::{PatternSet, Permutation};

/// `F_T = 1 / (1 - x F_T')` where `T` appends a new maximum to every pattern of `T'`.
pub fn lift_by_largest(fprime: &RationalFunction) -> Result<RationalFunction> {
    let den = &RationalFunction::one() - &(&RationalFunction::x() * fprime);
    den.recip().map_err(|_| Error::DegenerateContinuedFraction)
}

/// Appends `n+1` to a pattern of length `n`.
pub fn append_max(p: &Permutation) -> Permutation {
    let mut e = p.entries().to_vec();
    e.push(p.len() as u8 + 1);
    Permutation::from_raw(e)
}

fn check_kl(k: usize, l: usize) -> Result<()> {
    if l == 0 || l > k {
        return Err(Error::PreconditionViolated(format!("need 1 <= l <= k, got k={k}, l={l}")));
    }
    if k > Permutation::MAX_LEN {
        return Err(Error::PreconditionViolated(format!("k={k} is too large")));
    }
    Ok(())
}

/// The set `U_l^k` (of size `l!`).
pub fn ulk_set(k: usize, l: usize) -> Result<PatternSet> {
    check_kl(k, l)?;
    let mut head: Vec<u8> = (1..=l as u8).collect();
    let tail: Vec<u8> = (l as u8 + 1..=k as u8).collect();
    let mut out = PatternSet::new();
    loop {
        let mut e = head.clone();
        e.extend_from_slice(&tail);
        out.insert(Permutation::from_raw(e));
        if !next_permutation(&mut head) {
            return Ok(out);
        }
    }
}

/// `E_l = c_0 + c_1 x + ... + c_{l-1} x^{l-1}`.
fn catalan_e(l: usize) -> RationalFunction {
    RationalFunction::from(catalan_polynomial(l))
}

/// `F_{U_l^k} = R_{k-l; E_l}` (and `E_l` itself when `k = l`).
pub fn gf_avoid_ulk(k: usize, l: usize) -> Result<RationalFunction> {
    check_kl(k, l)?;
    let e = catalan_e(l);
    if k == l {
        Ok(e)
    } else {
        cf_closed(k - l, &e)
    }
}

/// Avoid `U_l^k` minus `t`, contain `t` exactly once:
/// `x^k / (q_{k-l} - x E_l q_{k-l-1})^2`. The value does not depend on `t`.
pub fn gf_exact_once_ulk(k: usize, l: usize, t: &Permutation) -> Result<RationalFunction> {
    check_kl(k, l)?;
    if l == k {
        return Err(Error::PreconditionViolated(format!("need l < k, got k = l = {k}")));
    }
    if !ulk_set(k, l)?.contains(t) {
        return Err(Error::PreconditionViolated(format!("{t} is not in U_{l}^{k}")));
    }
    let m = (k - l) as i64;
    let e = catalan_e(l);
    let d = &RationalFunction::from(reduced_chebyshev(m)?)
        - &(&(&RationalFunction::x() * &e) * &RationalFunction::from(reduced_chebyshev(m - 1)?));
    let xk = RationalFunction::from(Polynomial::monomial(One::one(), k));
    xk.checked_div(&d.pow(2)).map_err(|_| Error::DegenerateContinuedFraction)
}

/// Summation range used for `G_{U_2^k}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum U2kSum {
    /// `j = 3 ..= k-2`, with the value taken as 0 for `k <= 3`.
    #[default]
    Narrow,
    /// `j = 2 ..= k-1`, which agrees with the brute-force counts.
    Full,
}

/// Both patterns of `U_2^k = {12...k, 213...k}` contained exactly once:
///
/// ```text
/// G = 2 x^2 sqrt(x) / W_{k;1}^2 * sum_j 1 / (W_{k;j-1} W_{k;j}),
/// W_{k;j} = U_{k-j}(1/(2 sqrt x)) - x U_{k-2-j}(1/(2 sqrt x)),
/// ```
///
/// evaluated in reduced form with the powers of `sqrt(x)` tracked and
/// required to cancel.
pub fn gf_both_once_u2k(k: usize, range: U2kSum) -> Result<RationalFunction> {
    if k < 3 {
        return Err(Error::PreconditionViolated(format!("need k >= 3, got {k}")));
    }
    let js = match range {
        U2kSum::Narrow if k <= 3 => return Ok(RationalFunction::zero()),
        U2kSum::Narrow => 3..=k - 2,
        U2kSum::Full => 2..=k - 1,
    };
    let k = k as i64;
    // W_{k;j} = x^(-(k-j)/2) * reduced_w(k, j)
    let w = |j: i64| -> Result<HalfPower> {
        Ok(HalfPower::new(-(k - j), RationalFunction::from(reduced_w(k, j, NegativeIndex::Reject)?)))
    };
    let lead = HalfPower::new(5, RationalFunction::from_int(2));
    let w1 = w(1)?;
    let front = lead.mul(&w1.mul(&w1).recip()?);
    let mut total = RationalFunction::zero();
    for j in js {
        let j = j as i64;
        let term = front.mul(&w(j - 1)?.mul(&w(j)?).recip()?);
        total = &total + &term.reduce()?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::format_pattern_set;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_ints(n.iter().copied()), Polynomial::from_ints(d.iter().copied())).unwrap()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift_by_largest(&rf(&[1, 1], &[1])).unwrap(), rf(&[1], &[1, -1, -1]));
        assert_eq!(lift_by_largest(&RationalFunction::one()).unwrap(), rf(&[1], &[1, -1]));
        assert_eq!(lift_by_largest(&rf(&[1, -1], &[1, -2])).unwrap(), rf(&[1, -2], &[1, -3, 1]));
        assert_eq!(lift_by_largest(&rf(&[1], &[0, 1])), Err(Error::DegenerateContinuedFraction));
        assert_eq!(append_max(&perm("21")), perm("213"));
    }

    #[test]
    fn ulk_sets() {
        assert_eq!(format_pattern_set(&ulk_set(4, 2).unwrap()), "1234;2134");
        assert_eq!(ulk_set(5, 3).unwrap().len(), 6);
        assert_eq!(ulk_set(3, 1).unwrap().len(), 1);
        assert!(ulk_set(2, 3).is_err());
        assert!(ulk_set(2, 0).is_err());
    }

    #[test]
    fn avoid_ulk_examples() {
        assert_eq!(gf_avoid_ulk(3, 2).unwrap(), rf(&[1], &[1, -1, -1]));
        assert_eq!(gf_avoid_ulk(4, 2).unwrap(), rf(&[1, -1, -1], &[1, -2, -1]));
        assert_eq!(gf_avoid_ulk(3, 3).unwrap(), rf(&[1, 1, 2], &[1]));
        assert_eq!(gf_avoid_ulk(3, 1).unwrap(), rf(&[1, -1], &[1, -2]));
    }

    #[test]
    fn exact_once_ulk_examples() {
        assert_eq!(gf_exact_once_ulk(2, 1, &perm("12")).unwrap(), rf(&[0, 0, 1], &[1, -2, 1]));
        assert_eq!(gf_exact_once_ulk(3, 1, &perm("123")).unwrap(), rf(&[0, 0, 0, 1], &[1, -4, 4]));
        let fib2 = rf(&[1, -1, -1], &[1]).pow(2);
        let expected = rf(&[0, 0, 0, 1], &[1]).checked_div(&fib2).unwrap();
        assert_eq!(gf_exact_once_ulk(3, 2, &perm("123")).unwrap(), expected);
        assert_eq!(gf_exact_once_ulk(3, 2, &perm("213")).unwrap(), expected);
        assert!(gf_exact_once_ulk(3, 2, &perm("132")).is_err());
        assert!(gf_exact_once_ulk(3, 3, &perm("123")).is_err());
    }

    #[test]
    fn both_once_narrow_range() {
        assert!(gf_both_once_u2k(3, U2kSum::Narrow).unwrap().is_zero());
        assert!(gf_both_once_u2k(4, U2kSum::Narrow).unwrap().is_zero());
        let g5 = gf_both_once_u2k(5, U2kSum::Narrow).unwrap();
        let s = g5.series(10).unwrap().to_counts().unwrap();
        assert_eq!(s, [0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 18]);
        assert!(gf_both_once_u2k(2, U2kSum::Narrow).is_err());
    }

    #[test]
    fn both_once_full_range() {
        // 2x^6/(1-x-x^2)^3
        let g3 = gf_both_once_u2k(3, U2kSum::Full).unwrap();
        let expected = rf(&[0, 0, 0, 0, 0, 0, 2], &[1]).checked_div(&rf(&[1, -1, -1], &[1]).pow(3)).unwrap();
        assert_eq!(g3, expected);
    }
}
