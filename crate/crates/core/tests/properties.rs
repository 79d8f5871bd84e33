use patgf::census::{census, next_permutation, CensusConfig};
use patgf::chebyshev::{cf_closed, cf_iterative, cf_product_closed, cf_product_iterative, reduced_chebyshev};
use patgf::decomposition::canonical_decompose;
use patgf::{PatternQuery, Polynomial, Permutation, RationalFunction};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-4i64..=4, 0..5).prop_map(Polynomial::from_ints)
}

/// Rational functions with a nonzero constant term in the denominator.
fn regular_fn() -> impl Strategy<Value = RationalFunction> {
    (poly(), prop::collection::vec(-3i64..=3, 0..4), prop_oneof![Just(1i64), Just(-1), Just(2)]).prop_map(|(num, mut den, c0)| {
        den.insert(0, c0);
        RationalFunction::new(num, Polynomial::from_ints(den)).unwrap()
    })
}

fn permutation(max_len: usize) -> impl Strategy<Value = Permutation> {
    (0..=max_len).prop_flat_map(|n| Just((1..=n as u8).collect::<Vec<u8>>()).prop_shuffle()).prop_map(|e| Permutation::new(e).unwrap())
}

fn avoider_of_132(max_len: usize) -> impl Strategy<Value = Permutation> {
    permutation(max_len).prop_filter("avoids 132", |p| !p.is_empty() && p.avoids(&"132".parse().unwrap()))
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(), a.clone());
    }

    #[test]
    fn division_with_remainder(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn normal_form_is_canonical(f in regular_fn(), g in regular_fn()) {
        let h = &f * &g;
        prop_assert!(h.num().gcd(h.den()).is_one());
        let low = h.den().valuation().unwrap();
        prop_assert!(h.den().coeff(low) == patgf::Rational::from_integer(1.into()));
        prop_assert_eq!(&(&f + &g) - &g, f.clone());
    }

    #[test]
    fn series_is_multiplicative(f in regular_fn(), g in regular_fn()) {
        let order = 8;
        let lhs = (&f * &g).series(order).unwrap();
        let rhs = &f.series(order).unwrap() * &g.series(order).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reciprocal_round_trip(f in regular_fn()) {
        prop_assume!(!f.is_zero());
        prop_assert_eq!(f.recip().unwrap().recip().unwrap(), f.clone());
        prop_assert!((&f * &f.recip().unwrap()).is_one());
    }

    #[test]
    fn json_round_trip(f in regular_fn()) {
        prop_assert_eq!(RationalFunction::from_json(&f.to_json()).unwrap(), f.clone());
    }

    #[test]
    fn continued_fraction_closed_forms(e in poly(), k in 1usize..10) {
        let e = RationalFunction::from(e);
        prop_assert_eq!(cf_closed(k, &e), cf_iterative(k, &e));
        prop_assert_eq!(cf_product_closed(k, &e), cf_product_iterative(k, &e));
    }

    #[test]
    fn occurrences_over_all_patterns_sum_to_binomial(p in permutation(8), k in 0usize..=4) {
        let mut pattern: Vec<u8> = (1..=k as u8).collect();
        let mut total = 0;
        loop {
            total += p.occurrences(&Permutation::new(pattern.clone()).unwrap());
            if !next_permutation(&mut pattern) {
                break;
            }
        }
        prop_assert_eq!(total, binomial(p.len() as u64, k as u64));
    }

    #[test]
    fn containment_is_monotone(p in permutation(7), q in permutation(4), r in permutation(3)) {
        // p contains q and q contains r implies p contains r
        if p.contains(&q) && q.contains(&r) {
            prop_assert!(p.contains(&r));
        }
        // avoiding a smaller pattern is the stronger restriction
        if q.contains(&r) && !r.is_empty() {
            let cfg = CensusConfig::default();
            let small = census(&PatternQuery::avoiding([r.clone()]), 6, &cfg).unwrap();
            let large = census(&PatternQuery::avoiding([q.clone()]), 6, &cfg).unwrap();
            prop_assert!(small <= large);
        }
    }

    #[test]
    fn decomposition_invariants(p in avoider_of_132(9)) {
        let d = canonical_decompose(&p).unwrap();
        let mut rebuilt = Vec::new();
        for (block, &(_, m)) in d.blocks().iter().zip(d.maxima()) {
            rebuilt.extend_from_slice(block);
            rebuilt.push(m);
        }
        prop_assert_eq!(&rebuilt[..], p.entries());
        for pair in d.blocks().windows(2) {
            if let (Some(lo), Some(hi)) = (pair[0].iter().min(), pair[1].iter().max()) {
                prop_assert!(lo > hi);
            }
        }
        let r = d.r() as i64;
        for i in 0..=r {
            prop_assert!(d.prefix(i).unwrap().contains(&d.prefix(i - 1).unwrap()));
            prop_assert!(d.suffix(i).unwrap().contains(&d.suffix(i + 1).unwrap()));
        }
    }
}

#[test]
fn chebyshev_degrees() {
    for k in 0..20i64 {
        let q = reduced_chebyshev(k).unwrap();
        assert_eq!(q.degree(), Some(k as usize / 2), "q_{k}");
        assert_eq!(q.coeff(0), patgf::Rational::from_integer(1.into()));
    }
}
