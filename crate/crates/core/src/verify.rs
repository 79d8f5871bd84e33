//! Verification suites: cross-checks between the closed forms, the
//! recurrence engine and the census, collected into a serializable report.

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::algebra::{Polynomial, PowerSeries, Rational, RationalFunction};
use crate::census::{census_series, CensusConfig};
use crate::chebyshev::{catalan_numbers, catalan_series, cf_closed, cf_iterative, cf_product_closed};
use crate::engine::{
    gf_avoid_ulk, gf_both_once_u2k, gf_exact_once_ulk, lift_by_largest, ulk_set, Engine, U2kSum,
};
use crate::error::{Error, Result};
use crate::perm::{parse_pattern_set, PatternQuery, PatternSet, Permutation};

pub const DEFAULT_ORDER: usize = 10;
pub const DEFAULT_MAX_N: usize = 9;

/// Seed for the random polynomial battery, fixed so reports are reproducible.
pub const RANDOM_SEED: u64 = 0x132;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Algebra,
    Chebyshev,
    Oracle,
    Catalog,
    Recurrence,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Algebra, Suite::Chebyshev, Suite::Oracle, Suite::Catalog, Suite::Recurrence];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Chebyshev => "chebyshev",
            Suite::Oracle => "oracle",
            Suite::Catalog => "catalog",
            Suite::Recurrence => "recurrence",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A documented discrepancy that is reported but does not fail the run.
    Finding,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub order: usize,
    pub max_n: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Series order for the symbolic checks.
    pub order: usize,
    /// Largest `n` compared against the census.
    pub max_n: usize,
    pub census: CensusConfig,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { order: DEFAULT_ORDER, max_n: DEFAULT_MAX_N, census: CensusConfig::from_env() }
    }
}

/// Runs one suite (or all of them, in a fixed order).
///
/// Fails up front with `LengthTooLarge` when `max_n` exceeds the census bound;
/// every other problem is recorded as a failed check.
pub fn run_verify(suite: Suite, opts: &VerifyOptions) -> Result<Report> {
    if opts.max_n > opts.census.max_n {
        return Err(Error::LengthTooLarge { n: opts.max_n, max: opts.census.max_n });
    }
    let mut log = Log { suite: "", checks: Vec::new() };
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    for s in suites {
        log.suite = s.as_str();
        match s {
            Suite::Algebra => algebra_suite(&mut log, opts),
            Suite::Chebyshev => chebyshev_suite(&mut log, opts),
            Suite::Oracle => oracle_suite(&mut log, opts),
            Suite::Catalog => catalog_suite(&mut log),
            Suite::Recurrence => recurrence_suite(&mut log, opts),
            Suite::All => unreachable!(),
        }
    }
    Ok(Report { suite: suite.to_string(), order: opts.order, max_n: opts.max_n, checks: log.checks })
}

struct Log {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Log {
    fn push(&mut self, name: String, status: Status, expected: String, actual: String) {
        self.checks.push(Check { suite: self.suite, name, status, expected, actual });
    }

    /// Records `expected == actual`, where either side may have failed to compute.
    fn compare<T: PartialEq + fmt::Display>(&mut self, name: impl Into<String>, expected: Result<T>, actual: Result<T>) {
        let status = match (&expected, &actual) {
            (Ok(e), Ok(a)) if e == a => Status::Pass,
            (Err(e), Err(a)) if e == a => Status::Pass,
            _ => Status::Fail,
        };
        self.push(name.into(), status, show(&expected), show(&actual));
    }

    fn finding<T: PartialEq + fmt::Display>(&mut self, name: impl Into<String>, reference: Result<T>, actual: Result<T>) {
        let status = match (&reference, &actual) {
            (Ok(e), Ok(a)) if e == a => Status::Pass,
            _ => Status::Finding,
        };
        self.push(name.into(), status, show(&reference), show(&actual));
    }
}

fn show<T: fmt::Display>(r: &Result<T>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error {}: {e}", e.name()),
    }
}

/// A coefficient list printed as `a,b,c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counts(pub Vec<u64>);

impl fmt::Display for Counts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Coefficients `0..=order` of `f` as counts; fails on negative or fractional ones.
pub fn counts_of(f: &RationalFunction, order: usize) -> Result<Counts> {
    let s = f.series(order)?;
    s.to_counts()
        .map(Counts)
        .ok_or_else(|| Error::PreconditionViolated(format!("series of {f} has a coefficient that is not a count")))
}

/// Census series with 132 adjoined to the avoid set.
pub fn census_132(avoid: &PatternSet, exactly_once: &PatternSet, max_n: usize, cfg: &CensusConfig) -> Result<Counts> {
    let q = PatternQuery::new(avoid.clone(), exactly_once.clone(), PatternSet::new())?.with_132()?;
    census_series(&q, max_n, cfg).map(Counts)
}

fn set(s: &str) -> PatternSet {
    parse_pattern_set(s).expect("static pattern set")
}

fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
    RationalFunction::new(Polynomial::from_ints(num.iter().copied()), Polynomial::from_ints(den.iter().copied()))
        .expect("static rational function")
}

/// `E` values for the continued-fraction identities: `0`, `1`, `1+x` and
/// `count` random integer polynomials of degree at most 3 with coefficients in `[-3, 3]`.
pub fn cf_battery(count: usize) -> Vec<RationalFunction> {
    let mut rng = StdRng::seed_from_u64(RANDOM_SEED);
    let mut out = vec![RationalFunction::zero(), RationalFunction::one(), rf(&[1, 1], &[1])];
    for _ in 0..count {
        let degree = rng.gen_range(0..=3);
        let coeffs: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-3..=3)).collect();
        out.push(RationalFunction::from(Polynomial::from_ints(coeffs)));
    }
    out
}

fn algebra_suite(log: &mut Log, opts: &VerifyOptions) {
    let polys = [
        Polynomial::from_ints([1, -1, -1]),
        Polynomial::from_ints([1, -2, -1]),
        Polynomial::from_ints([0, 3, 0, -2]),
        Polynomial::new(vec![Rational::new(1.into(), 2.into()), Rational::new((-3).into(), 4.into())]),
    ];
    for a in &polys {
        for b in &polys {
            log.compare(format!("commutative ({a})({b})"), Ok(a * b), Ok(b * a));
            for c in &polys {
                log.compare(format!("distributive ({a})(({b}) + ({c}))"), Ok(a * &(b + c)), Ok(&(a * b) + &(a * c)));
            }
            let (q, r) = a.div_rem(b);
            log.compare(format!("division ({a}) by ({b})"), Ok(a.clone()), Ok(&(&q * b) + &r));
        }
    }

    let fns = [rf(&[1, -1], &[1, -2]), rf(&[1], &[1, -1, -1]), rf(&[1, -1, -1], &[1, -2, -1]), rf(&[1, 2, 0, 1], &[1, 3])];
    for f in &fns {
        for g in &fns {
            let lhs = (f * g).series(opts.order).map(Series);
            let rhs = f.series(opts.order).and_then(|a| Ok(Series(&a * &g.series(opts.order)?)));
            log.compare(format!("series of ({f})*({g})"), lhs, rhs);
        }
        let round = f.recip().and_then(|r| r.recip());
        log.compare(format!("1/(1/({f}))"), Ok(f.clone()), round);
        log.compare(format!("json round trip of {f}"), Ok(f.clone()), RationalFunction::from_json(&f.to_json()));
    }

    log.compare("normal form of (2 - 2x)/(2 - 4x)", Ok(rf(&[1, -1], &[1, -2])), RationalFunction::new(Polynomial::from_ints([2, -2]), Polynomial::from_ints([2, -4])));
    log.compare("1/(1-x-x^2) is Fibonacci", Ok(Counts(vec![1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89])), counts_of(&rf(&[1], &[1, -1, -1]), 10));
    log.compare(
        "division by zero",
        Err::<RationalFunction, _>(Error::DivisionByZero),
        RationalFunction::new(Polynomial::one(), Polynomial::zero()),
    );
}

/// Display wrapper so series can be compared through [`Log::compare`].
#[derive(PartialEq)]
struct Series(PowerSeries);

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.coeffs().iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// The continued-fraction identities for `1 <= k <= max_k` over [`cf_battery`].
pub fn cf_identity_checks(log_suite: &'static str, max_k: usize, random: usize) -> Vec<Check> {
    let mut log = Log { suite: log_suite, checks: Vec::new() };
    cf_identities(&mut log, max_k, random);
    log.checks
}

fn cf_identities(log: &mut Log, max_k: usize, random: usize) {
    let x = RationalFunction::x();
    for e in cf_battery(random) {
        // Unrolled one step at a time, with the running product kept alongside.
        let mut r = Ok(e.clone());
        let mut product = Ok(RationalFunction::one());
        for k in 1..=max_k {
            r = r.and_then(|r| (&RationalFunction::one() - &(&x * &r)).recip().map_err(|_| Error::DegenerateContinuedFraction));
            product = match (&product, &r) {
                (Ok(p), Ok(r)) => Ok(p * r),
                (Err(e), _) | (_, Err(e)) => Err(e.clone()),
            };
            log.compare(format!("R_{{{k};{e}}} closed form"), r.clone(), cf_closed(k, &e));
            log.compare(format!("R_{{1..{k};{e}}} product closed form"), product.clone(), cf_product_closed(k, &e));
        }
    }
}

/// Coefficients `0..k-1` of `R_k` against the Catalan numbers, `1 <= k <= max_k`.
pub fn catalan_prefix_checks(log_suite: &'static str, max_k: usize) -> Vec<Check> {
    let mut log = Log { suite: log_suite, checks: Vec::new() };
    catalan_prefix(&mut log, max_k);
    log.checks
}

fn catalan_prefix(log: &mut Log, max_k: usize) {
    let catalan = catalan_series(max_k);
    for k in 1..=max_k {
        let expected = Series(catalan.truncate(k - 1));
        let actual = cf_iterative(k, &RationalFunction::zero()).and_then(|r| r.series(k - 1)).map(Series);
        log.compare(format!("R_{k} agrees with Catalan up to x^{}", k - 1), Ok(expected), actual);
    }
}

fn chebyshev_suite(log: &mut Log, opts: &VerifyOptions) {
    cf_identities(log, opts.order.max(1), 20);
    catalan_prefix(log, opts.order.max(1));
    let first: Vec<u64> = catalan_numbers(6).iter().map(|c| u64::try_from(c).expect("small")).collect();
    log.compare("Catalan numbers", Ok(Counts(vec![1, 1, 2, 5, 14, 42, 132])), Ok(Counts(first)));
}

/// Catalog entries with their census queries (132 is adjoined by the census side).
pub fn catalog_entries() -> Vec<(String, Result<RationalFunction>, PatternSet, PatternSet)> {
    let mut out = Vec::new();
    for l in 1..=2 {
        for k in l..=5 {
            out.push((format!("avoid U_{l}^{k}"), gf_avoid_ulk(k, l), ulk_set(k, l).expect("valid"), PatternSet::new()));
        }
    }
    for (k, l) in [(2, 1), (3, 1), (3, 2), (4, 2)] {
        let members = ulk_set(k, l).expect("valid");
        for t in &members {
            let mut avoid = members.clone();
            avoid.remove(t);
            out.push((
                format!("U_{l}^{k} with {t} exactly once"),
                gf_exact_once_ulk(k, l, t),
                avoid,
                PatternSet::from([t.clone()]),
            ));
        }
    }
    let mut chain = Ok(RationalFunction::zero());
    for k in 1..=5 {
        chain = chain.and_then(|f| lift_by_largest(&f));
        out.push((format!("lifted chain R_{k}"), chain.clone(), PatternSet::from([Permutation::identity(k)]), PatternSet::new()));
    }
    out
}

fn oracle_suite(log: &mut Log, opts: &VerifyOptions) {
    for (name, f, avoid, once) in catalog_entries() {
        let expected = census_132(&avoid, &once, opts.max_n, &opts.census);
        log.compare(format!("{name} vs census"), expected, f.and_then(|f| counts_of(&f, opts.max_n)));
    }
    for k in 3..=5 {
        let members = ulk_set(k, 2).expect("valid");
        let expected = census_132(&PatternSet::new(), &members, opts.max_n, &opts.census);
        let full = gf_both_once_u2k(k, U2kSum::Full).and_then(|f| counts_of(&f, opts.max_n));
        log.compare(format!("both of U_2^{k} once, full sum vs census"), expected.clone(), full);
        let narrow = gf_both_once_u2k(k, U2kSum::Narrow).and_then(|f| counts_of(&f, opts.max_n));
        log.finding(format!("both of U_2^{k} once, narrow sum vs census"), expected, narrow);
    }
}

fn catalog_suite(log: &mut Log) {
    log.compare("avoid U_2^3", Ok(rf(&[1], &[1, -1, -1])), gf_avoid_ulk(3, 2));
    log.compare("avoid U_2^4", Ok(rf(&[1, -1, -1], &[1, -2, -1])), gf_avoid_ulk(4, 2));
    log.compare("lift 1+x", Ok(rf(&[1], &[1, -1, -1])), lift_by_largest(&rf(&[1, 1], &[1])));
    log.compare("lift (1-x)/(1-2x)", Ok(rf(&[1, -2], &[1, -3, 1])), lift_by_largest(&rf(&[1, -1], &[1, -2])));
    log.compare("U_1^3 once", Ok(rf(&[0, 0, 0, 1], &[1, -4, 4])), gf_exact_once_ulk(3, 1, &Permutation::identity(3)));

    let mut engine = Engine::new();
    for l in 1..=2 {
        for k in l.max(2)..=6 {
            let set = ulk_set(k, l).expect("valid");
            let rec = engine.block_recurrence_avoid(&set).map(|r| r.value);
            log.compare(format!("avoid U_{l}^{k}, catalog vs recurrence"), gf_avoid_ulk(k, l), rec);
        }
    }
    for (k, l) in [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (5, 2)] {
        let members = ulk_set(k, l).expect("valid");
        let t = members.iter().next_back().expect("nonempty").clone();
        let mut avoid = members;
        avoid.remove(&t);
        let rec = engine.block_recurrence_exact(&avoid, &PatternSet::from([t.clone()])).map(|r| r.value);
        log.compare(format!("U_{l}^{k} with {t} once, catalog vs recurrence"), gf_exact_once_ulk(k, l, &t), rec);
    }
    for k in 3..=6 {
        let members = ulk_set(k, 2).expect("valid");
        let rec = engine.block_recurrence_exact(&PatternSet::new(), &members).map(|r| r.value);
        log.compare(format!("both of U_2^{k} once, full sum vs recurrence"), rec.clone(), gf_both_once_u2k(k, U2kSum::Full));
        log.finding(format!("both of U_2^{k} once, narrow sum vs recurrence"), rec, gf_both_once_u2k(k, U2kSum::Narrow));
    }
    log.compare("both of U_2^3 once, narrow sum", Ok(RationalFunction::zero()), gf_both_once_u2k(3, U2kSum::Narrow));
}

/// Avoid-sets checked against the census by the recurrence suite.
pub fn recurrence_avoid_battery() -> Vec<PatternSet> {
    let mut out = vec![set("231")];
    out.extend((1..=5).map(|k| PatternSet::from([Permutation::identity(k)])));
    out.push(set("231;1234"));
    out.push(set("2341;3241"));
    out.push(ulk_set(4, 2).expect("valid"));
    out
}

/// `(avoid, exactly once)` pairs checked against the census by the recurrence suite.
pub fn recurrence_exact_battery() -> Vec<(PatternSet, PatternSet)> {
    vec![(set(""), set("1")), (set(""), set("12")), (set(""), set("123")), (set("213"), set("123"))]
}

fn recurrence_suite(log: &mut Log, opts: &VerifyOptions) {
    let mut engine = Engine::new();
    let cases = recurrence_avoid_battery()
        .into_iter()
        .map(|a| (a, PatternSet::new()))
        .chain(recurrence_exact_battery())
        .chain([(set("231"), set("12")), (set("4321"), set("213;231")), (set("1"), set("")), (set("eps"), set(""))]);
    for (avoid, once) in cases {
        let name = format!("avoid {{{}}} once {{{}}} vs census", crate::perm::format_pattern_set(&avoid), crate::perm::format_pattern_set(&once));
        let expected = census_132(&avoid, &once, opts.max_n, &opts.census);
        let actual = engine
            .block_recurrence_exact(&avoid, &once)
            .and_then(|r| counts_of(&r.value, opts.max_n));
        log.compare(name, expected, actual);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> VerifyOptions {
        VerifyOptions { order: 8, max_n: 7, census: CensusConfig::default() }
    }

    #[test]
    fn every_suite_passes() {
        for suite in Suite::EACH {
            let report = run_verify(suite, &opts()).unwrap();
            let failed: Vec<_> = report.failures().collect();
            assert!(failed.is_empty(), "{suite}: {failed:#?}");
            assert!(!report.checks.is_empty());
        }
    }

    #[test]
    fn narrow_u2k_is_reported_as_a_finding() {
        let report = run_verify(Suite::Oracle, &opts()).unwrap();
        let finding = report.checks.iter().find(|c| c.name == "both of U_2^3 once, narrow sum vs census").unwrap();
        assert_eq!(finding.status, Status::Finding);
        assert_eq!(finding.expected, "0,0,0,0,0,0,2,6");
        assert_eq!(finding.actual, "0,0,0,0,0,0,0,0");
    }

    #[test]
    fn bound_is_enforced() {
        let o = VerifyOptions { max_n: 11, ..opts() };
        assert_eq!(run_verify(Suite::Oracle, &o), Err(Error::LengthTooLarge { n: 11, max: 10 }));
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }
}
