use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use patgf::algebra::TermOrder;
use patgf::census::{census, census_series, CensusConfig};
use patgf::engine::{gf_avoid_ulk, gf_both_once_u2k, gf_exact_once_ulk, Engine, GfResult, U2kSum};
use patgf::perm::{format_pattern_set, parse_pattern_set};
use patgf::verify::{counts_of, run_verify, Status, Suite, VerifyOptions, DEFAULT_MAX_N, DEFAULT_ORDER};
use patgf::{Error, PatternQuery, PatternSet, Permutation, RationalFunction};
use serde_json::{json, Value};

/// Counting and generating functions for 132-avoiding permutations under
/// pattern restrictions.
#[derive(Parser)]
#[command(name = "patgf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count permutations of length n satisfying the constraints (brute force).
    Count {
        #[command(flatten)]
        patterns: Patterns,
        #[arg(long)]
        n: usize,
        /// Add 132 to the avoid set.
        #[arg(long)]
        implicit_132: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the coefficients 0..=order, from the census or from a generating function.
    Series {
        /// census, recurrence, catalog:ulk, catalog:ulk-once, catalog:u2k-both or catalog:u2k-both-full
        #[arg(default_value = "census")]
        source: String,
        #[command(flatten)]
        patterns: Patterns,
        #[command(flatten)]
        params: CatalogParams,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        /// Add 132 to the avoid set (census only; other sources always include it).
        #[arg(long)]
        implicit_132: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print a generating function as a normalized rational function.
    Gf {
        /// recurrence, catalog:ulk, catalog:ulk-once, catalog:u2k-both or catalog:u2k-both-full
        source: String,
        #[command(flatten)]
        patterns: Patterns,
        #[command(flatten)]
        params: CatalogParams,
        #[arg(long)]
        json: bool,
    },
    /// Run verification suites and report every check.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
        #[arg(long)]
        json: bool,
        /// Also write the JSON report to this file.
        #[arg(long)]
        out: Option<String>,
    },
    /// Tabulate series of a catalog family over a range of parameters.
    Table {
        #[arg(long, value_enum)]
        family: Family,
        /// A single value or an inclusive range such as 3..6.
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        l: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Patterns {
    /// Patterns to avoid, separated by ';' ("eps" is the empty pattern).
    #[arg(long, default_value = "")]
    avoid: String,
    /// Patterns to contain exactly once.
    #[arg(long, default_value = "")]
    once: String,
    /// Patterns to contain at least once.
    #[arg(long, default_value = "")]
    at_least: String,
}

impl Patterns {
    fn parse(&self) -> Result<(PatternSet, PatternSet, PatternSet), Error> {
        Ok((parse_pattern_set(&self.avoid)?, parse_pattern_set(&self.once)?, parse_pattern_set(&self.at_least)?))
    }
}

#[derive(Args)]
struct CatalogParams {
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    /// Member of U_l^k contained once (catalog:ulk-once; defaults to 12...k).
    #[arg(long)]
    t: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Algebra,
    Chebyshev,
    Oracle,
    Catalog,
    Recurrence,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Algebra => Suite::Algebra,
            SuiteArg::Chebyshev => Suite::Chebyshev,
            SuiteArg::Oracle => Suite::Oracle,
            SuiteArg::Catalog => Suite::Catalog,
            SuiteArg::Recurrence => Suite::Recurrence,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Ulk,
    UlkOnce,
    U2kBoth,
    U2kBothFull,
}

/// Failure of a command, carrying its exit status.
enum Failure {
    Usage(String),
    Lib(Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(match e {
                Error::Parse(_) | Error::InvalidPermutation(_) => 2,
                Error::LengthTooLarge { .. } => 3,
                _ => 4,
            })
        }
    }
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Count { patterns, n, implicit_132, json } => {
            let q = query(&patterns, implicit_132)?;
            let count = census(&q, n, &CensusConfig::from_env())?;
            if json {
                print_json(json!({"count": count.to_string(), "n": n, "query": query_json(&q)}));
            } else {
                println!("{count}");
            }
            Ok(())
        }
        Command::Series { source, patterns, params, order, implicit_132, json } => {
            let counts = if source == "census" {
                let q = query(&patterns, implicit_132)?;
                census_series(&q, order, &CensusConfig::from_env())?
            } else {
                let gf = generating_function(&source, &patterns, &params)?;
                counts_of(&gf.value, order)?.0
            };
            if json {
                let values: Vec<String> = counts.iter().map(u64::to_string).collect();
                print_json(json!({"order": order, "series": values, "source": source}));
            } else {
                println!("{}", join(&counts));
            }
            Ok(())
        }
        Command::Gf { source, patterns, params, json } => {
            let gf = generating_function(&source, &patterns, &params)?;
            if json {
                print_json(json!({
                    "gf": serde_json::to_value(gf.value.to_json_value()).expect("serializable"),
                    "provenance": gf.provenance.as_str(),
                    "source": source,
                    "text": gf.value.render(TermOrder::Ascending),
                }));
            } else {
                println!("{}", gf.value.render(TermOrder::Ascending));
            }
            Ok(())
        }
        Command::Verify { suite, order, max_n, json, out } => {
            let opts = VerifyOptions { order, max_n, census: CensusConfig::from_env() };
            let report = run_verify(suite.into(), &opts)?;
            let value = serde_json::to_value(&report).expect("serializable");
            if let Some(path) = out {
                fs::write(&path, format!("{value}\n")).map_err(|e| Failure::Usage(format!("cannot write {path}: {e}")))?;
            }
            if json {
                print_json(value);
            } else {
                for c in &report.checks {
                    let tag = match c.status {
                        Status::Pass => "PASS",
                        Status::Fail => "FAIL",
                        Status::Finding => "NOTE",
                    };
                    println!("{tag} [{}] {}: expected {}, actual {}", c.suite, c.name, c.expected, c.actual);
                }
                let failed = report.failures().count();
                println!("{} checks, {} failed", report.checks.len(), failed);
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verify)
            }
        }
        Command::Table { family, k, l, order, json } => table(family, k.as_deref(), l.as_deref(), order, json),
    }
}

fn query(patterns: &Patterns, implicit_132: bool) -> Result<PatternQuery, Failure> {
    let (a, b, c) = patterns.parse()?;
    let q = PatternQuery::new(a, b, c).map_err(|e| Failure::Usage(e.to_string()))?;
    if implicit_132 {
        q.with_132().map_err(|e| Failure::Usage(e.to_string()))
    } else {
        Ok(q)
    }
}

fn query_json(q: &PatternQuery) -> Value {
    json!({
        "at_least_once": format_pattern_set(q.at_least_once()),
        "avoid": format_pattern_set(q.avoid()),
        "exactly_once": format_pattern_set(q.exactly_once()),
    })
}

fn required(value: Option<usize>, flag: &str, source: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("{source} needs --{flag}")))
}

fn generating_function(source: &str, patterns: &Patterns, params: &CatalogParams) -> Result<GfResult, Failure> {
    let catalog = |value: Result<RationalFunction, Error>| -> Result<GfResult, Failure> { Ok(GfResult::catalog(value?)) };
    match source {
        "recurrence" => {
            let (a, b, c) = patterns.parse()?;
            let mut engine = Engine::new();
            let result = if c.is_empty() { engine.block_recurrence_exact(&a, &b)? } else { engine.with_at_least_once(&a, &b, &c)? };
            Ok(result)
        }
        "catalog:ulk" => {
            let k = required(params.k, "k", source)?;
            catalog(gf_avoid_ulk(k, required(params.l, "l", source)?))
        }
        "catalog:ulk-once" => {
            let k = required(params.k, "k", source)?;
            let l = required(params.l, "l", source)?;
            let t = match &params.t {
                Some(t) => t.parse::<Permutation>()?,
                None => Permutation::identity(k),
            };
            catalog(gf_exact_once_ulk(k, l, &t))
        }
        "catalog:u2k-both" => catalog(gf_both_once_u2k(required(params.k, "k", source)?, U2kSum::Narrow)),
        "catalog:u2k-both-full" => catalog(gf_both_once_u2k(required(params.k, "k", source)?, U2kSum::Full)),
        other => Err(Failure::Usage(format!("unknown source {other:?}"))),
    }
}

/// Parses `5` or `3..6` (inclusive).
fn parse_range(text: &str, flag: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Usage(format!("--{flag} expects an integer or a range a..b, got {text:?}"));
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let v = text.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

fn table(family: Family, k: Option<&str>, l: Option<&str>, order: usize, json: bool) -> CmdResult {
    let ks = parse_range(k.unwrap_or("3..6"), "k")?;
    let ls = match family {
        Family::Ulk | Family::UlkOnce => parse_range(l.unwrap_or("1..2"), "l")?,
        Family::U2kBoth | Family::U2kBothFull => vec![2],
    };
    let mut rows = Vec::new();
    for &l in &ls {
        for &k in &ks {
            let gf = match family {
                Family::Ulk if l <= k => gf_avoid_ulk(k, l)?,
                Family::UlkOnce if l < k => gf_exact_once_ulk(k, l, &Permutation::identity(k))?,
                Family::U2kBoth => gf_both_once_u2k(k, U2kSum::Narrow)?,
                Family::U2kBothFull => gf_both_once_u2k(k, U2kSum::Full)?,
                _ => continue,
            };
            rows.push((k, l, counts_of(&gf, order)?.0));
        }
    }
    if json {
        let rows: Vec<Value> = rows
            .iter()
            .map(|(k, l, s)| json!({"k": k, "l": l, "series": s.iter().map(u64::to_string).collect::<Vec<_>>()}))
            .collect();
        print_json(json!({"order": order, "rows": rows}));
    } else {
        for (k, l, s) in &rows {
            println!("k={k}\tl={l}\t{}", join(s));
        }
    }
    Ok(())
}

fn join(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn print_json(value: Value) {
    println!("{value}");
}
