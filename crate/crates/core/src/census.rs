//! Exhaustive enumeration of `S_n`: the ground truth every symbolic result is
//! checked against.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::PatternQuery;

/// Environment variable overriding [`CensusConfig::max_n`].
pub const MAX_N_ENV: &str = "PATGF_MAX_N";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusConfig {
    /// Largest `n` for which enumeration of `S_n` is attempted.
    pub max_n: usize,
    /// Split the enumeration over the rayon thread pool.
    pub parallel: bool,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig { max_n: 10, parallel: true }
    }
}

impl CensusConfig {
    /// Default configuration, with `max_n` taken from `PATGF_MAX_N` when set.
    pub fn from_env() -> Self {
        let mut cfg = CensusConfig::default();
        if let Some(n) = std::env::var(MAX_N_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            cfg.max_n = n;
        }
        cfg
    }

    pub fn with_max_n(mut self, max_n: usize) -> Self {
        self.max_n = max_n;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.max_n {
            Err(Error::LengthTooLarge { n, max: self.max_n })
        } else {
            Ok(())
        }
    }
}

/// Rearranges `a` into its lexicographic successor. Returns `false` (leaving
/// `a` sorted ascending) when `a` was the last permutation.
pub fn next_permutation(a: &mut [u8]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        a.reverse();
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Visits the permutations of `1..=n` whose first entries are `prefix`, in
/// lexicographic order, counting those accepted by `q`.
fn count_with_prefix(q: &PatternQuery, n: usize, prefix: &[u8]) -> u64 {
    let mut word: Vec<u8> = prefix.to_vec();
    word.extend((1..=n as u8).filter(|v| !prefix.contains(v)));
    let split = prefix.len();
    let mut count = 0;
    loop {
        if q.matches(&word) {
            count += 1;
        }
        if !next_permutation(&mut word[split..]) {
            return count;
        }
    }
}

/// `f(n)`: the number of permutations of length `n` satisfying `q`.
pub fn census(q: &PatternQuery, n: usize, cfg: &CensusConfig) -> Result<u64> {
    cfg.check(n)?;
    if n < 3 || !cfg.parallel {
        return Ok(count_with_prefix(q, n, &[]));
    }
    // Work items are the n(n-1) two-entry prefixes; the sum is order-independent.
    let prefixes: Vec<[u8; 2]> = (1..=n as u8)
        .flat_map(|a| (1..=n as u8).filter(move |&b| b != a).map(move |b| [a, b]))
        .collect();
    Ok(prefixes.par_iter().map(|pre| count_with_prefix(q, n, pre)).sum())
}

/// `[f(0), f(1), ..., f(order)]`.
pub fn census_series(q: &PatternQuery, order: usize, cfg: &CensusConfig) -> Result<Vec<u64>> {
    cfg.check(order)?;
    (0..=order).map(|n| census(q, n, cfg)).collect()
}
