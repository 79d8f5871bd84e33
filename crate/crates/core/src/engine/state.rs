use std::fmt;

use crate::perm::{format_pattern_set, PatternSet, Permutation};

/// Memo key of the recurrence engine: "avoid every pattern of `avoid` and
/// contain each pattern of `exactly_once` exactly once" (with 132 avoided
/// implicitly when evaluated by the engine).
///
/// Construction canonicalizes: the empty pattern is dropped from
/// `exactly_once` (it always occurs once) and any avoid pattern containing
/// another avoid pattern is dropped as redundant.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GfState {
    avoid: PatternSet,
    exactly_once: PatternSet,
}

impl GfState {
    pub fn new(avoid: PatternSet, mut exactly_once: PatternSet) -> Self {
        exactly_once.remove(&Permutation::empty());
        GfState { avoid: minimal_elements(avoid), exactly_once }
    }

    pub fn avoiding(avoid: PatternSet) -> Self {
        GfState::new(avoid, PatternSet::new())
    }

    pub fn avoid(&self) -> &PatternSet {
        &self.avoid
    }

    pub fn exactly_once(&self) -> &PatternSet {
        &self.exactly_once
    }

    /// Whether the constraints are contradictory: the empty pattern is
    /// avoided, or a pattern required once contains an avoided one.
    pub fn is_unsatisfiable(&self) -> bool {
        self.avoid.contains(&Permutation::empty())
            || self.exactly_once.iter().any(|b| self.avoid.iter().any(|a| b.contains(a)))
    }

    /// Total length of all patterns, `(exactly_once, avoid)`.
    pub fn weight(&self) -> (usize, usize) {
        let sum = |s: &PatternSet| s.iter().map(Permutation::len).sum();
        (sum(&self.exactly_once), sum(&self.avoid))
    }
}

/// Drops every pattern that contains another member of the set.
fn minimal_elements(set: PatternSet) -> PatternSet {
    // Canonical order is by length, so a pattern can only contain earlier ones.
    let mut kept: Vec<Permutation> = Vec::with_capacity(set.len());
    for p in set {
        if !kept.iter().any(|q| p.contains(q)) {
            kept.push(p);
        }
    }
    kept.into_iter().collect()
}

impl fmt::Display for GfState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F[{{{}}};{{{}}}]", format_pattern_set(&self.avoid), format_pattern_set(&self.exactly_once))
    }
}

impl fmt::Debug for GfState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
