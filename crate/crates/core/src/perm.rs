//! Permutations, patterns and occurrence counting.
//!
//! A [`Permutation`] of length `n` is stored as its one-line notation over
//! `1..=n`. The same type is used for patterns; the empty permutation is a
//! valid pattern and occurs exactly once (as the empty subsequence) in every
//! permutation.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}` in one-line notation.
///
/// Ordering is by length first, then lexicographic.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Permutation {
    entries: Vec<u8>,
}

impl Permutation {
    /// Largest supported length.
    pub const MAX_LEN: usize = u8::MAX as usize;

    pub fn new(entries: Vec<u8>) -> Result<Self> {
        let n = entries.len();
        if n > Self::MAX_LEN {
            return Err(Error::InvalidPermutation(format!("length {n} is too long")));
        }
        let mut seen = vec![false; n + 1];
        for &e in &entries {
            let e = e as usize;
            if e == 0 || e > n || seen[e] {
                return Err(Error::InvalidPermutation(format!("{entries:?} is not a permutation of 1..={n}")));
            }
            seen[e] = true;
        }
        Ok(Permutation { entries })
    }

    /// Builds from a slice that is already known to be a permutation.
    pub(crate) fn from_raw(entries: Vec<u8>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation { entries }
    }

    pub fn empty() -> Self {
        Permutation { entries: Vec::new() }
    }

    /// The identity `12...n`.
    pub fn identity(n: usize) -> Self {
        Permutation { entries: (1..=n as u8).collect() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// Number of occurrences of `pattern` in `self`.
    pub fn occurrences(&self, pattern: &Permutation) -> u64 {
        occurrences(&self.entries, pattern)
    }

    pub fn contains(&self, pattern: &Permutation) -> bool {
        count_occurrences_up_to(&self.entries, pattern, 1) >= 1
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains(pattern)
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.entries.cmp(&other.entries))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("eps");
        }
        if self.entries.iter().all(|&e| e <= 9) {
            for e in &self.entries {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `"eps"`, a compact digit string (`"2413"`) or comma-separated
    /// integers (`"10,1,2,3,4,5,6,7,8,9"`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "eps" {
            return Ok(Permutation::empty());
        }
        if s.is_empty() {
            return Err(Error::Parse("empty pattern text (use \"eps\")".into()));
        }
        let entries: Vec<u8> = if s.contains(',') {
            s.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<u8>()
                        .map_err(|_| Error::Parse(format!("bad entry {part:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Parse(format!("bad character {c:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(entries).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// A deduplicated set of patterns in canonical (length, then lexicographic) order.
pub type PatternSet = BTreeSet<Permutation>;

/// Parses a semicolon-separated pattern list such as `"123;213"`.
///
/// The empty string is the empty set.
pub fn parse_pattern_set(s: &str) -> Result<PatternSet> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(PatternSet::new());
    }
    s.split(';').map(str::parse).collect()
}

pub fn format_pattern_set(set: &PatternSet) -> String {
    let parts: Vec<String> = set.iter().map(|p| p.to_string()).collect();
    parts.join(";")
}

/// `true` iff `p` avoids every pattern in `set` (vacuously true for an empty set).
pub fn avoids_all<'a>(p: &Permutation, set: impl IntoIterator<Item = &'a Permutation>) -> bool {
    set.into_iter().all(|t| p.avoids(t))
}

/// Restrictions on a permutation: avoid every pattern of `avoid`, contain each
/// pattern of `exactly_once` exactly once and each of `at_least_once` at least once.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PatternQuery {
    avoid: PatternSet,
    exactly_once: PatternSet,
    at_least_once: PatternSet,
}

impl PatternQuery {
    pub fn new(avoid: PatternSet, exactly_once: PatternSet, at_least_once: PatternSet) -> Result<Self> {
        let clash = avoid
            .intersection(&exactly_once)
            .chain(avoid.intersection(&at_least_once))
            .chain(exactly_once.intersection(&at_least_once))
            .next();
        if let Some(p) = clash {
            return Err(Error::PreconditionViolated(format!("pattern {p} appears in two constraint sets")));
        }
        Ok(PatternQuery { avoid, exactly_once, at_least_once })
    }

    pub fn avoiding(avoid: impl IntoIterator<Item = Permutation>) -> Self {
        PatternQuery { avoid: avoid.into_iter().collect(), ..Default::default() }
    }

    pub fn avoid(&self) -> &PatternSet {
        &self.avoid
    }

    pub fn exactly_once(&self) -> &PatternSet {
        &self.exactly_once
    }

    pub fn at_least_once(&self) -> &PatternSet {
        &self.at_least_once
    }

    /// The same query with `132` added to the avoid set (a no-op if it is
    /// already constrained elsewhere).
    pub fn with_132(&self) -> Result<Self> {
        let p132 = Permutation::from_raw(vec![1, 3, 2]);
        let mut q = self.clone();
        if !q.exactly_once.contains(&p132) && !q.at_least_once.contains(&p132) {
            q.avoid.insert(p132);
            Ok(q)
        } else {
            Err(Error::PreconditionViolated("132 is both implicit and constrained".into()))
        }
    }

    /// Whether the one-line word `p` satisfies every constraint.
    pub fn matches(&self, p: &[u8]) -> bool {
        self.avoid.iter().all(|t| count_occurrences_up_to(p, t, 1) == 0)
            && self.exactly_once.iter().all(|t| count_occurrences_up_to(p, t, 2) == 1)
            && self.at_least_once.iter().all(|t| count_occurrences_up_to(p, t, 1) == 1)
    }
}

/// Number of occurrences of `pattern` in the one-line word `p`.
pub fn occurrences(p: &[u8], pattern: &Permutation) -> u64 {
    count_occurrences_up_to(p, pattern, u64::MAX)
}

/// Counts occurrences of `pattern` in `p`, stopping as soon as `limit` is reached.
///
/// The search picks text positions left to right. For each pattern position
/// the candidate value must lie strictly between the values already matched
/// to its nearest smaller and nearest larger pattern entries, which keeps the
/// partial match order-isomorphic without re-checking it.
pub fn count_occurrences_up_to(p: &[u8], pattern: &Permutation, limit: u64) -> u64 {
    let k = pattern.len();
    if k == 0 {
        return 1.min(limit);
    }
    if k > p.len() || limit == 0 {
        return 0;
    }
    let plan = WindowPlan::new(pattern.entries());
    let mut chosen = vec![0usize; k];
    let mut count = 0;
    search(p, &plan, &mut chosen, 0, 0, limit, &mut count);
    count
}

struct WindowPlan {
    // For each pattern position, the earlier pattern position holding the
    // nearest smaller (resp. larger) value.
    below: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
}

impl WindowPlan {
    fn new(t: &[u8]) -> Self {
        let mut below = Vec::with_capacity(t.len());
        let mut above = Vec::with_capacity(t.len());
        for m in 0..t.len() {
            let lo = (0..m).filter(|&j| t[j] < t[m]).max_by_key(|&j| t[j]);
            let hi = (0..m).filter(|&j| t[j] > t[m]).min_by_key(|&j| t[j]);
            below.push(lo);
            above.push(hi);
        }
        WindowPlan { below, above }
    }
}

fn search(p: &[u8], plan: &WindowPlan, chosen: &mut [usize], m: usize, start: usize, limit: u64, count: &mut u64) {
    let k = chosen.len();
    let lo = plan.below[m].map_or(0, |j| p[chosen[j]]);
    let hi = plan.above[m].map_or(u8::MAX, |j| p[chosen[j]]);
    let last = p.len() - (k - m);
    for i in start..=last {
        let v = p[i];
        if v <= lo || v >= hi {
            continue;
        }
        chosen[m] = i;
        if m + 1 == k {
            *count += 1;
        } else {
            search(p, plan, chosen, m + 1, i + 1, limit, count);
        }
        if *count >= limit {
            return;
        }
    }
}
