//! Canonical decomposition of 132-avoiding patterns.
//!
//! Let `m_0 > m_1 > ... > m_r` be the right-to-left maxima of a nonempty
//! 132-avoiding pattern `t`. Then `t = (t^0, m_0, t^1, m_1, ..., t^r, m_r)`
//! where every block `t^i` (possibly empty) lies entirely above `m_{i+1}` and
//! above the block `t^{i+1}`. The prefixes `pi^i` and suffixes `sigma^i` of
//! this splitting drive the recurrences in [`crate::engine`].

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Replaces each entry of a word of distinct values by its rank.
pub fn flatten<T: Ord>(word: &[T]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by(|&a, &b| word[a].cmp(&word[b]));
    if order.windows(2).any(|w| word[w[0]] == word[w[1]]) {
        return Err(Error::DuplicateEntries);
    }
    if word.len() > Permutation::MAX_LEN {
        return Err(Error::InvalidPermutation(format!("length {} is too long", word.len())));
    }
    let mut ranks = vec![0u8; word.len()];
    for (rank, &i) in order.iter().enumerate() {
        ranks[i] = rank as u8 + 1;
    }
    Ok(Permutation::from_raw(ranks))
}

/// Positions (0-based, left to right) of the right-to-left maxima.
pub fn rtl_maxima(p: &Permutation) -> Vec<usize> {
    let mut best = 0u8;
    let mut out: Vec<usize> = Vec::new();
    for (i, &v) in p.entries().iter().enumerate().rev() {
        if v > best {
            best = v;
            out.push(i);
        }
    }
    out.reverse();
    out
}

pub fn contains_pattern(a: &Permutation, b: &Permutation) -> bool {
    a.contains(b)
}

fn out_of_range(index: i64, range: String) -> Error {
    Error::IndexOutOfRange { index, range }
}

pub(crate) fn p132() -> Permutation {
    Permutation::from_raw(vec![1, 3, 2])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalDecomposition {
    pattern: Permutation,
    /// `(position, value)` of `m_0, ..., m_r`.
    maxima: Vec<(usize, u8)>,
    /// Raw (unflattened) blocks `t^0, ..., t^r`.
    blocks: Vec<Vec<u8>>,
}

impl CanonicalDecomposition {
    pub fn new(p: &Permutation) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::PreconditionViolated("the empty pattern has no canonical decomposition".into()));
        }
        if p.contains(&p132()) {
            return Err(Error::Not132Avoiding(p.to_string()));
        }
        let e = p.entries();
        let positions = rtl_maxima(p);
        let mut blocks = Vec::with_capacity(positions.len());
        let mut start = 0;
        for &pos in &positions {
            blocks.push(e[start..pos].to_vec());
            start = pos + 1;
        }
        let maxima = positions.iter().map(|&i| (i, e[i])).collect();
        Ok(CanonicalDecomposition { pattern: p.clone(), maxima, blocks })
    }

    pub fn pattern(&self) -> &Permutation {
        &self.pattern
    }

    pub fn maxima(&self) -> &[(usize, u8)] {
        &self.maxima
    }

    pub fn blocks(&self) -> &[Vec<u8>] {
        &self.blocks
    }

    /// Index of the last right-to-left maximum.
    pub fn r(&self) -> usize {
        self.maxima.len() - 1
    }

    /// `pi^i`: empty for `i = -1`, the flattened block `t^0` for `i = 0`, and
    /// `(t^0, m_0, ..., t^i, m_i)` flattened for `1 <= i <= r`.
    ///
    /// Note that `pi^0` stops before `m_0`; when `r = 0` the whole pattern is
    /// therefore never a prefix.
    pub fn prefix(&self, i: i64) -> Result<Permutation> {
        let r = self.r() as i64;
        match i {
            -1 => Ok(Permutation::empty()),
            0 => flatten(&self.blocks[0]),
            i if (1..=r).contains(&i) => flatten(&self.pattern.entries()[..=self.maxima[i as usize].0]),
            _ => Err(out_of_range(i, format!("-1..={r}"))),
        }
    }

    /// `(t^0, m_0, ..., t^i, m_i)` flattened, for `0 <= i <= r`. Agrees with
    /// [`prefix`](Self::prefix) for `i >= 1` and includes `m_0` at `i = 0`.
    pub fn prefix_through_max(&self, i: usize) -> Result<Permutation> {
        match self.maxima.get(i) {
            Some(&(pos, _)) => flatten(&self.pattern.entries()[..=pos]),
            None => Err(out_of_range(i as i64, format!("0..={}", self.r()))),
        }
    }

    /// `sigma^i = (t^i, m_i, ..., t^r, m_r)` flattened for `0 <= i <= r`;
    /// empty for `i = r + 1`.
    pub fn suffix(&self, i: i64) -> Result<Permutation> {
        let r = self.r() as i64;
        match i {
            i if i == r + 1 => Ok(Permutation::empty()),
            0 => Ok(self.pattern.clone()),
            i if (1..=r).contains(&i) => flatten(&self.pattern.entries()[self.maxima[i as usize - 1].0 + 1..]),
            _ => Err(out_of_range(i, format!("0..={}", r + 1))),
        }
    }
}

pub fn canonical_decompose(p: &Permutation) -> Result<CanonicalDecomposition> {
    CanonicalDecomposition::new(p)
}

pub fn prefix(p: &Permutation, i: i64) -> Result<Permutation> {
    canonical_decompose(p)?.prefix(i)
}

pub fn suffix(p: &Permutation, i: i64) -> Result<Permutation> {
    canonical_decompose(p)?.suffix(i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn flatten_examples() {
        assert_eq!(flatten(&[5, 7, 6]).unwrap(), perm("132"));
        assert_eq!(flatten(&[2]).unwrap(), perm("1"));
        assert_eq!(flatten(&[2, 1, 3]).unwrap(), perm("213"));
        assert_eq!(flatten::<u8>(&[]).unwrap(), Permutation::empty());
        assert_eq!(flatten(&[4, 1, 4]), Err(Error::DuplicateEntries));
    }

    #[test]
    fn rtl_maxima_examples() {
        let values = |s: &str| {
            let p = perm(s);
            rtl_maxima(&p).into_iter().map(|i| p.entries()[i]).collect::<Vec<_>>()
        };
        assert_eq!(values("231"), [3, 1]);
        assert_eq!(values("12345"), [5]);
        assert_eq!(values("321"), [3, 2, 1]);
        assert!(rtl_maxima(&Permutation::empty()).is_empty());
    }

    #[test]
    fn decompose_examples() {
        let d = canonical_decompose(&perm("231")).unwrap();
        assert_eq!(d.blocks(), &[vec![2], vec![]]);
        assert_eq!(d.maxima(), &[(1, 3), (2, 1)]);
        assert_eq!(d.r(), 1);

        let d = canonical_decompose(&perm("4213")).unwrap();
        assert_eq!(d.blocks(), &[vec![], vec![2, 1]]);
        assert_eq!(d.maxima().iter().map(|m| m.1).collect::<Vec<_>>(), [4, 3]);

        let d = canonical_decompose(&perm("12345")).unwrap();
        assert_eq!(d.blocks(), &[vec![1, 2, 3, 4]]);
        assert_eq!(d.r(), 0);

        assert_eq!(canonical_decompose(&perm("1432")), Err(Error::Not132Avoiding("1432".into())));
        assert!(canonical_decompose(&Permutation::empty()).is_err());
    }

    #[test]
    fn prefix_and_suffix_examples() {
        let p = perm("231");
        assert_eq!(prefix(&p, 0).unwrap(), perm("1"));
        assert_eq!(prefix(&p, 1).unwrap(), p);
        assert_eq!(prefix(&perm("4213"), -1).unwrap(), Permutation::empty());
        assert_eq!(suffix(&p, 1).unwrap(), perm("1"));
        assert_eq!(suffix(&perm("4213"), 1).unwrap(), perm("213"));
        assert_eq!(suffix(&p, 2).unwrap(), Permutation::empty());
        assert_eq!(suffix(&p, 0).unwrap(), p);
        assert!(prefix(&p, 2).is_err());
        assert!(prefix(&p, -2).is_err());
        assert!(suffix(&p, 3).is_err());
        assert!(suffix(&p, -1).is_err());
        let d = canonical_decompose(&perm("2341")).unwrap();
        assert_eq!(d.prefix(0).unwrap(), perm("12"));
        assert_eq!(d.prefix_through_max(0).unwrap(), perm("123"));
        assert_eq!(d.prefix_through_max(1).unwrap(), perm("2341"));
    }

    #[test]
    fn contains_examples() {
        assert!(contains_pattern(&perm("1234"), &perm("123")));
        assert!(contains_pattern(&perm("231"), &perm("12")));
        assert!(!contains_pattern(&perm("321"), &perm("12")));
    }
}
