//! Inclusion-exclusion rewrites that turn "contain at least once" constraints
//! into signed sums of pure avoidance states.

use std::collections::BTreeMap;

use super::GfState;
use crate::census::{census, CensusConfig};
use crate::error::{Error, Result};
use crate::perm::{PatternQuery, PatternSet, Permutation};

/// A formal integer combination `sum c_i * F[state_i]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Combination {
    terms: BTreeMap<GfState, i64>,
}

impl Combination {
    pub fn new() -> Self {
        Combination::default()
    }

    pub fn single(state: GfState) -> Self {
        let mut c = Combination::new();
        c.add(state, 1);
        c
    }

    /// Adds `coef * F[state]`, merging equal states and dropping zero coefficients.
    pub fn add(&mut self, state: GfState, coef: i64) {
        let slot = self.terms.entry(state.clone()).or_insert(0);
        *slot += coef;
        if *slot == 0 {
            self.terms.remove(&state);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GfState, i64)> {
        self.terms.iter().map(|(s, &c)| (s, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies the counting functional `n -> census` linearly: the number of
    /// length-`n` permutations described by the combination.
    pub fn census(&self, n: usize, implicit_132: bool, cfg: &CensusConfig) -> Result<i128> {
        let mut total = 0i128;
        for (state, coef) in self.terms() {
            let q = PatternQuery::new(state.avoid().clone(), state.exactly_once().clone(), PatternSet::new())?;
            let q = if implicit_132 { q.with_132()? } else { q };
            total += coef as i128 * census(&q, n, cfg)? as i128;
        }
        Ok(total)
    }
}

/// `F^C_{A;B} = sum_{S subset C} (-1)^|S| F_{A + S; B}`: expands "contain every
/// pattern of `at_least_once` at least once" into pure avoidance.
pub fn at_least_once_expand_with(
    avoid: &PatternSet,
    exactly_once: &PatternSet,
    at_least_once: &PatternSet,
) -> Combination {
    // The empty pattern is always contained.
    let c: Vec<&Permutation> = at_least_once.iter().filter(|p| !p.is_empty()).collect();
    let mut out = Combination::new();
    for mask in 0u64..(1u64 << c.len()) {
        let mut a = avoid.clone();
        a.extend((0..c.len()).filter(|i| mask >> i & 1 == 1).map(|i| c[i].clone()));
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        out.add(GfState::new(a, exactly_once.clone()), sign);
    }
    out
}

pub fn at_least_once_expand(avoid: &PatternSet, at_least_once: &PatternSet) -> Combination {
    at_least_once_expand_with(avoid, &PatternSet::new(), at_least_once)
}

/// Rewrites "avoid `A` and every `alpha_i`, contain every `beta_i` at least
/// once, contain `B` exactly once" as the alternating sum over subsets `S`
/// of the pure states where each `alpha_i` with `i` in `S` is replaced by `beta_i`.
///
/// Each `beta_i` must be contained in its `alpha_i`.
pub fn exact_once_reduce(
    avoid: &PatternSet,
    pairs: &[(Permutation, Permutation)],
    exactly_once: &PatternSet,
) -> Result<Combination> {
    if let Some((a, b)) = pairs.iter().find(|(a, b)| !a.contains(b)) {
        return Err(Error::PreconditionViolated(format!("{b} is not contained in {a}")));
    }
    let m = pairs.len();
    let mut out = Combination::new();
    for mask in 0u64..(1u64 << m) {
        let mut a = avoid.clone();
        for (i, (alpha, beta)) in pairs.iter().enumerate() {
            a.insert(if mask >> i & 1 == 1 { beta.clone() } else { alpha.clone() });
        }
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        out.add(GfState::new(a, exactly_once.clone()), sign);
    }
    Ok(out)
}
