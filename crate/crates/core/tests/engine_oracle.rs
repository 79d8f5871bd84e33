//! The recurrence engine against brute-force counts on random constraint sets.

use patgf::census::{census_series, CensusConfig};
use patgf::engine::{gf_avoid_ulk, ulk_set, Engine};
use patgf::{PatternQuery, PatternSet, Permutation};
use proptest::prelude::*;

const N: usize = 7;

/// All 132-avoiding patterns of length 1 to 4.
fn patterns() -> Vec<Permutation> {
    let p132: Permutation = "132".parse().unwrap();
    let mut out = Vec::new();
    for n in 1..=4u8 {
        let mut e: Vec<u8> = (1..=n).collect();
        loop {
            let p = Permutation::new(e.clone()).unwrap();
            if p.avoids(&p132) {
                out.push(p);
            }
            if !patgf::census::next_permutation(&mut e) {
                break;
            }
        }
    }
    out
}

fn pattern_set(max: usize) -> impl Strategy<Value = PatternSet> {
    prop::sample::subsequence(patterns(), 0..=max).prop_map(|v| v.into_iter().collect())
}

fn oracle(avoid: &PatternSet, once: &PatternSet, at_least: &PatternSet) -> Vec<u64> {
    let q = PatternQuery::new(avoid.clone(), once.clone(), at_least.clone()).unwrap().with_132().unwrap();
    census_series(&q, N, &CensusConfig::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn avoidance_matches_census(avoid in pattern_set(3)) {
        prop_assume!(!avoid.is_empty());
        let f = Engine::new().block_recurrence_avoid(&avoid).unwrap().value;
        let counts = f.series(N).unwrap().to_counts();
        prop_assert_eq!(counts, Some(oracle(&avoid, &PatternSet::new(), &PatternSet::new())));
        prop_assert_eq!(f.series(0).unwrap().to_counts(), Some(vec![1]));
    }

    #[test]
    fn exactly_once_matches_census(avoid in pattern_set(2), once in pattern_set(2)) {
        prop_assume!(avoid.is_disjoint(&once) && !once.is_empty());
        let f = Engine::new().block_recurrence_exact(&avoid, &once).unwrap().value;
        let counts = f.series(N).unwrap().to_counts();
        prop_assert_eq!(counts, Some(oracle(&avoid, &once, &PatternSet::new())));
        prop_assert_eq!(f.series(0).unwrap().to_counts(), Some(vec![0]));
    }

    #[test]
    fn at_least_once_matches_census(avoid in pattern_set(2), once in pattern_set(1), at_least in pattern_set(2)) {
        prop_assume!(avoid.is_disjoint(&once) && avoid.is_disjoint(&at_least) && once.is_disjoint(&at_least));
        prop_assume!(!avoid.is_empty() || !once.is_empty());
        let f = Engine::new().with_at_least_once(&avoid, &once, &at_least).unwrap().value;
        let counts = f.series(N).unwrap().to_counts();
        prop_assert_eq!(counts, Some(oracle(&avoid, &once, &at_least)));
    }
}

#[test]
fn catalog_and_recurrence_agree() {
    let mut engine = Engine::new();
    for l in 1..=2 {
        for k in l..=6 {
            let rec = engine.block_recurrence_avoid(&ulk_set(k, l).unwrap()).unwrap().value;
            assert_eq!(rec, gf_avoid_ulk(k, l).unwrap(), "U_{l}^{k}");
        }
    }
}

#[test]
fn memo_is_shared_across_queries() {
    let mut engine = Engine::new();
    engine.block_recurrence_avoid(&ulk_set(5, 2).unwrap()).unwrap();
    let before = engine.memo_len();
    engine.block_recurrence_avoid(&ulk_set(4, 2).unwrap()).unwrap();
    assert_eq!(engine.memo_len(), before);
}
