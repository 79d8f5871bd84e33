//! The block recurrence for generating functions of 132-avoiding permutations.
//!
//! A nonempty 132-avoiding permutation is `alpha n beta` where `n` is its
//! largest entry, `alpha` and `beta` are 132-avoiding and every entry of
//! `alpha` exceeds every entry of `beta`. An occurrence of a 132-avoiding
//! pattern `t` then splits into a part inside `alpha` (possibly using `n` as
//! the maximum `m_0`) and a part inside `beta`, and the split can only happen
//! right after a right-to-left maximum of `t`. Writing the possible splits as
//! a chain of left parts `L_0 < L_1 < ...` (increasing under containment)
//! paired with right parts `R_0 > R_1 > ...`:
//!
//! ```text
//! occ(alpha n beta, t) = sum_s occ(alpha, L_s) * occ(beta, R_s)
//! ```
//!
//! with `L = (eps, t^0, t^0 m_0, pi^1, ..., pi^r)` and
//! `R = (t, sigma^1, sigma^1, sigma^2, ..., sigma^r, eps)`; the entry
//! `(t^0, sigma^1)` is the one in which `n` plays `m_0`.
//!
//! Classifying `alpha` by the largest `s` with `alpha` containing `L_s`:
//!
//! * avoiding `t` forces `beta` to avoid `R_s`. The levels `s = 1, 2` share
//!   `R = sigma^1` and merge, which leaves the levels `a = 0..=r` with `alpha`
//!   avoiding `pi^a` and containing `pi^(a-1)`, and `beta` avoiding `sigma^a`;
//! * containing `t` exactly once forces `alpha` to contain `L_s` exactly once
//!   and `beta` to contain `R_s` exactly once while avoiding `R_(s-1)`. The
//!   level `s = 2` is empty (it asks `beta` to both contain and avoid
//!   `sigma^1`), and at `s = 1` `alpha` must avoid `t^0 m_0`, not merely `pi^1`.
//!
//! Summing over one level per pattern gives `F = [B empty] + x * sum F_alpha * F_beta`.
//! The "contains at least once" conditions on `alpha` are removed by
//! inclusion-exclusion. A term may refer back to the state being computed;
//! it does so linearly and the resulting equation `F = a F + b` is solved.

use std::collections::HashMap;

use super::transform::{at_least_once_expand_with, Combination};
use super::{GfResult, GfState, Provenance};
use crate::algebra::RationalFunction;
use crate::decomposition::{canonical_decompose, p132};
use crate::error::{Error, Result};
use crate::perm::{PatternSet, Permutation};

#[derive(Clone, Debug)]
enum Slot {
    InProgress,
    Done(RationalFunction),
}

/// Memoizing evaluator for [`GfState`]s. Not shareable across threads; use
/// one engine per thread.
#[derive(Debug, Default)]
pub struct Engine {
    memo: HashMap<GfState, Slot>,
}

/// What `alpha` and `beta` must satisfy for one pattern at one level.
#[derive(Clone, Debug, Default)]
struct LevelChoice {
    alpha_avoid: Option<Permutation>,
    alpha_at_least: Option<Permutation>,
    alpha_once: Option<Permutation>,
    beta_avoid: Option<Permutation>,
    beta_once: Option<Permutation>,
}

/// `coef * F + constant`, where `F` is the state currently being solved.
#[derive(Clone, Debug)]
struct Linear {
    coef: RationalFunction,
    constant: RationalFunction,
}

impl Linear {
    fn constant(c: RationalFunction) -> Self {
        Linear { coef: RationalFunction::zero(), constant: c }
    }

    fn unknown() -> Self {
        Linear { coef: RationalFunction::one(), constant: RationalFunction::zero() }
    }

    fn add_scaled(&mut self, other: &Linear, k: &RationalFunction) {
        self.coef = &self.coef + &(&other.coef * k);
        self.constant = &self.constant + &(&other.constant * k);
    }

    fn mul(&self, other: &Linear, state: &GfState) -> Result<Linear> {
        if !self.coef.is_zero() && !other.coef.is_zero() {
            return Err(Error::NonlinearSelfReference(state.to_string()));
        }
        Ok(Linear {
            coef: &(&self.coef * &other.constant) + &(&other.coef * &self.constant),
            constant: &self.constant * &other.constant,
        })
    }
}

fn avoid_levels(t: &Permutation) -> Result<Vec<LevelChoice>> {
    let d = canonical_decompose(t)?;
    (0..=d.r() as i64)
        .map(|a| {
            Ok(LevelChoice {
                alpha_avoid: Some(d.prefix(a)?),
                alpha_at_least: Some(d.prefix(a - 1)?),
                beta_avoid: Some(d.suffix(a)?),
                ..Default::default()
            })
        })
        .collect()
}

fn exactly_once_levels(t: &Permutation) -> Result<Vec<LevelChoice>> {
    let d = canonical_decompose(t)?;
    let r = d.r() as i64;
    let mut left = vec![Permutation::empty(), d.prefix(0)?, d.prefix_through_max(0)?];
    let mut right = vec![t.clone(), d.suffix(1)?, d.suffix(1)?];
    for i in 1..=r {
        left.push(d.prefix(i)?);
        right.push(d.suffix(i + 1)?);
    }
    Ok((0..left.len())
        .map(|s| LevelChoice {
            alpha_once: Some(left[s].clone()),
            alpha_avoid: left.get(s + 1).cloned(),
            beta_once: Some(right[s].clone()),
            beta_avoid: s.checked_sub(1).map(|p| right[p].clone()),
            ..Default::default()
        })
        .collect())
}

impl Engine {
    pub fn new() -> Self {
        Engine::default()
    }

    /// Number of memoized states.
    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Generating function of permutations avoiding 132 and every pattern of `t`.
    pub fn block_recurrence_avoid(&mut self, t: &PatternSet) -> Result<GfResult> {
        self.block_recurrence_exact(t, &PatternSet::new())
    }

    /// Generating function of permutations avoiding 132 and all of `a`, and
    /// containing each pattern of `b` exactly once.
    pub fn block_recurrence_exact(&mut self, a: &PatternSet, b: &PatternSet) -> Result<GfResult> {
        let state = checked_state(a, b)?;
        Ok(GfResult { value: self.evaluate(&state)?, provenance: Provenance::Recurrence })
    }

    /// As [`block_recurrence_exact`](Self::block_recurrence_exact) with an
    /// extra "contain each pattern of `c` at least once" constraint,
    /// eliminated by inclusion-exclusion.
    pub fn with_at_least_once(&mut self, a: &PatternSet, b: &PatternSet, c: &PatternSet) -> Result<GfResult> {
        checked_state(a, b)?;
        if let Some(p) = c.iter().find(|p| a.contains(*p) || b.contains(*p)) {
            return Err(Error::PreconditionViolated(format!("pattern {p} appears in two constraint sets")));
        }
        if let Some(p) = c.iter().find(|p| p.contains(&p132())) {
            return Err(Error::Not132Avoiding(p.to_string()));
        }
        let comb = at_least_once_expand_with(a, b, c);
        Ok(GfResult { value: self.evaluate_combination(&comb)?, provenance: Provenance::InclusionExclusion })
    }

    pub fn evaluate_combination(&mut self, comb: &Combination) -> Result<RationalFunction> {
        let mut total = RationalFunction::zero();
        for (state, coef) in comb.terms() {
            let v = self.evaluate(state)?;
            total = &total + &(&v * &RationalFunction::from_int(coef));
        }
        Ok(total)
    }

    /// Generating function of a state, 132 avoided implicitly.
    pub fn evaluate(&mut self, state: &GfState) -> Result<RationalFunction> {
        if state.is_unsatisfiable() {
            return Ok(RationalFunction::zero());
        }
        if state.exactly_once().is_empty() && state.avoid().len() == 1 && state.avoid().first().unwrap().len() == 1 {
            // Only the empty permutation avoids "1".
            return Ok(RationalFunction::one());
        }
        match self.memo.get(state) {
            Some(Slot::Done(v)) => return Ok(v.clone()),
            Some(Slot::InProgress) => return Err(Error::CyclicStateReference(state.to_string())),
            None => {}
        }
        self.memo.insert(state.clone(), Slot::InProgress);
        match self.solve(state) {
            Ok(v) => {
                self.memo.insert(state.clone(), Slot::Done(v.clone()));
                Ok(v)
            }
            Err(e) => {
                self.memo.remove(state);
                Err(e)
            }
        }
    }

    fn solve(&mut self, state: &GfState) -> Result<RationalFunction> {
        let mut options: Vec<Vec<LevelChoice>> = Vec::new();
        for t in state.avoid() {
            options.push(avoid_levels(t)?);
        }
        for t in state.exactly_once() {
            options.push(exactly_once_levels(t)?);
        }

        let mut sum = Linear::constant(RationalFunction::zero());
        let mut pick = vec![0usize; options.len()];
        loop {
            let chosen: Vec<&LevelChoice> = pick.iter().zip(&options).map(|(&i, o)| &o[i]).collect();
            let term = self.term(state, &chosen)?;
            sum.add_scaled(&term, &RationalFunction::one());
            if !advance(&mut pick, &options) {
                break;
            }
        }

        // F = [B empty] + x * (coef F + constant)
        let x = RationalFunction::x();
        let a = &x * &sum.coef;
        let mut b = &x * &sum.constant;
        if state.exactly_once().is_empty() {
            b = &b + &RationalFunction::one();
        }
        let one_minus_a = &RationalFunction::one() - &a;
        if one_minus_a.is_zero() {
            return Err(Error::SingularSelfReference(state.to_string()));
        }
        b.checked_div(&one_minus_a)
    }

    /// `F_alpha * F_beta` for one choice of level per pattern.
    fn term(&mut self, current: &GfState, chosen: &[&LevelChoice]) -> Result<Linear> {
        let collect = |f: fn(&LevelChoice) -> &Option<Permutation>| -> PatternSet {
            chosen.iter().filter_map(|c| f(c).clone()).collect()
        };
        let beta = GfState::new(collect(|c| &c.beta_avoid), collect(|c| &c.beta_once));
        if beta.is_unsatisfiable() {
            return Ok(Linear::constant(RationalFunction::zero()));
        }
        let alpha = at_least_once_expand_with(
            &collect(|c| &c.alpha_avoid),
            &collect(|c| &c.alpha_once),
            &collect(|c| &c.alpha_at_least),
        );
        let mut alpha_value = Linear::constant(RationalFunction::zero());
        for (s, coef) in alpha.terms() {
            let v = self.factor(current, s)?;
            alpha_value.add_scaled(&v, &RationalFunction::from_int(coef));
        }
        if alpha_value.coef.is_zero() && alpha_value.constant.is_zero() {
            return Ok(alpha_value);
        }
        let beta_value = self.factor(current, &beta)?;
        alpha_value.mul(&beta_value, current)
    }

    fn factor(&mut self, current: &GfState, s: &GfState) -> Result<Linear> {
        if s == current {
            Ok(Linear::unknown())
        } else {
            Ok(Linear::constant(self.evaluate(s)?))
        }
    }
}

/// Odometer step over the Cartesian product of level choices.
fn advance(pick: &mut [usize], options: &[Vec<LevelChoice>]) -> bool {
    for (i, p) in pick.iter_mut().enumerate() {
        *p += 1;
        if *p < options[i].len() {
            return true;
        }
        *p = 0;
    }
    false
}

/// Validates engine inputs and builds the canonical state.
fn checked_state(a: &PatternSet, b: &PatternSet) -> Result<GfState> {
    if a.is_empty() && b.is_empty() {
        return Err(Error::PreconditionViolated("at least one avoided or exactly-once pattern is required".into()));
    }
    if let Some(p) = a.intersection(b).next() {
        return Err(Error::PreconditionViolated(format!("pattern {p} is both avoided and required once")));
    }
    if let Some(p) = a.iter().chain(b).find(|p| p.contains(&p132())) {
        return Err(Error::Not132Avoiding(p.to_string()));
    }
    Ok(GfState::new(a.clone(), b.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Polynomial;
    use crate::perm::parse_pattern_set;

    fn set(s: &str) -> PatternSet {
        parse_pattern_set(s).unwrap()
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_ints(n.iter().copied()), Polynomial::from_ints(d.iter().copied())).unwrap()
    }

    #[test]
    fn avoid_examples() {
        let mut e = Engine::new();
        assert_eq!(e.block_recurrence_avoid(&set("123")).unwrap().value, rf(&[1, -1], &[1, -2]));
        assert_eq!(e.block_recurrence_avoid(&set("231")).unwrap().value, rf(&[1, -1], &[1, -2]));
        assert_eq!(e.block_recurrence_avoid(&set("2341;3241")).unwrap().value, rf(&[1, -1, -1], &[1, -2, -1]));
    }

    #[test]
    fn exact_examples() {
        let mut e = Engine::new();
        assert_eq!(e.block_recurrence_exact(&set(""), &set("1")).unwrap().value, rf(&[0, 1], &[1]));
        assert_eq!(e.block_recurrence_exact(&set(""), &set("12")).unwrap().value, rf(&[0, 0, 1], &[1, -2, 1]));
        let expected = rf(&[0, 0, 0, 1], &[1]).checked_div(&rf(&[1, -1, -1], &[1]).pow(2)).unwrap();
        assert_eq!(e.block_recurrence_exact(&set("213"), &set("123")).unwrap().value, expected);
    }

    #[test]
    fn base_cases() {
        let mut e = Engine::new();
        assert!(e.block_recurrence_avoid(&set("eps")).unwrap().value.is_zero());
        assert!(e.block_recurrence_avoid(&set("1")).unwrap().value.is_one());
        assert!(e.block_recurrence_avoid(&set("1;12")).unwrap().value.is_one());
        assert!(e.block_recurrence_exact(&set("1"), &set("12")).unwrap().value.is_zero());
    }

    #[test]
    fn rejects_bad_input() {
        let mut e = Engine::new();
        assert_eq!(e.block_recurrence_avoid(&set("1432")), Err(Error::Not132Avoiding("1432".into())));
        assert!(matches!(e.block_recurrence_exact(&set("12"), &set("12")), Err(Error::PreconditionViolated(_))));
        assert!(matches!(e.block_recurrence_avoid(&set("")), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn unconstrained_state_is_nonlinear() {
        let mut e = Engine::new();
        let err = e.evaluate(&GfState::avoiding(PatternSet::new())).unwrap_err();
        assert_eq!(err.name(), "NonlinearSelfReference");
        assert_eq!(e.memo_len(), 0);
    }
}
