use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use brauer_core::commvar::degree_sequence;
use brauer_core::persist::{
    compute_values, save_table, save_values, table_path, table_to_file, values_path, values_to_file, SaveOutcome,
    TableStore, SYMBOLIC_MAX,
};
use brauer_core::pfdet::degree_determinant;
use brauer_core::psitable::compute_table;
use brauer_core::suites::{
    algebra_suite, commuting_suite, d1_suite, exchange_suite, geometry_suite, markov_suite, sumrules_suite,
    SuiteConfig, SuiteReport,
};
use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::{Format, Scheme, Suite};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] brauer_core::CoreError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

type Result<T> = std::result::Result<T, CliError>;

const DEFAULT_TABLE_DIR: &str = "tables";

/// Computes the table for `n` and writes it; returns whether the file now
/// holds it. Beyond the symbolic range only the values at the origin are kept.
pub fn table(out: &mut String, dir: Option<PathBuf>, n: usize, force: bool, format: Format) -> Result<bool> {
    let dir = dir.unwrap_or_else(|| PathBuf::from(DEFAULT_TABLE_DIR));
    let (path, outcome, sha256, kind, patterns, values) = if n <= SYMBOLIC_MAX {
        let path = table_path(&dir, n);
        let table = compute_table(n)?;
        let outcome = save_table(&table, &path, force)?;
        let sha = table_to_file(&table)?.sha256;
        (path, outcome, sha, "polynomials", table.patterns().to_vec(), table.values_at_origin())
    } else {
        let path = values_path(&dir, n);
        let table = compute_values(n)?;
        let outcome = save_values(&table, &path, force)?;
        let sha = values_to_file(&table)?.sha256;
        (path, outcome, sha, "values at the origin", table.patterns, table.values)
    };
    let values: Vec<String> = values.iter().map(BigInt::to_string).collect();
    let status = match outcome {
        SaveOutcome::Written => "written",
        SaveOutcome::Unchanged => "unchanged",
        SaveOutcome::Overwritten => "overwritten",
    };
    match format {
        Format::Text => {
            writeln!(out, "{status} {}", path.display()).ok();
            writeln!(out, "N={n}, {} patterns, {kind}, sha256 {sha256}", patterns.len()).ok();
            for (p, v) in patterns.iter().zip(&values) {
                writeln!(out, "{p} {v}").ok();
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Summary<'a> {
                path: String,
                status: &'a str,
                n: usize,
                kind: &'a str,
                patterns: usize,
                sha256: &'a str,
                values_at_origin: Vec<(String, &'a String)>,
            }
            let s = Summary {
                path: path.display().to_string(),
                status,
                n,
                kind,
                patterns: patterns.len(),
                sha256: &sha256,
                values_at_origin: patterns.iter().map(|p| p.to_string()).zip(&values).collect(),
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&s)?).ok();
        }
    }
    Ok(true)
}

/// Valid sizes are `min..=limit`; without `--n` the range starts at `start`.
struct Sizes {
    start: usize,
    min: usize,
    default_max: usize,
    limit: usize,
}

const ALGEBRA: Sizes = Sizes { start: 2, min: 2, default_max: 8, limit: 16 };
const GEOMETRY: Sizes = Sizes { start: 3, min: 2, default_max: 6, limit: 8 };
const TABLES: Sizes = Sizes { start: 2, min: 2, default_max: 6, limit: 8 };

fn sizes(n: Option<usize>, max_n: Option<usize>, spec: Sizes, what: &str) -> Result<RangeInclusive<usize>> {
    let Sizes { start, min, default_max, limit } = spec;
    let range = match n {
        Some(n) => n..=n,
        None => start..=max_n.unwrap_or(default_max),
    };
    if *range.start() < min || *range.end() > limit || range.is_empty() {
        return Err(CliError::Usage(format!(
            "{what} sizes must lie in {min}..={limit}, got {}..={}",
            range.start(),
            range.end()
        )));
    }
    Ok(range)
}

fn run_suite(
    suite: Suite,
    store: &TableStore,
    n: Option<usize>,
    max_n: Option<usize>,
    cfg: &SuiteConfig,
    timings: bool,
) -> Result<Vec<SuiteReport>> {
    let mut reports = Vec::new();
    match suite {
        Suite::Algebra => reports.push(algebra_suite(sizes(n, max_n, ALGEBRA, "algebra")?, cfg, timings)),
        Suite::Geometry => {
            for k in sizes(n, max_n, GEOMETRY, "geometry")? {
                reports.push(geometry_suite(k, cfg, timings));
            }
        }
        Suite::Exchange | Suite::Sumrules | Suite::Markov | Suite::D1 => {
            for k in sizes(n, max_n, TABLES, "table")? {
                reports.push(match suite {
                    Suite::Exchange => exchange_suite(k, store, cfg, timings),
                    Suite::Sumrules => sumrules_suite(k, store, cfg, timings),
                    Suite::Markov => markov_suite(k, store, timings),
                    _ => d1_suite(k, store, cfg, timings),
                });
            }
        }
        Suite::Commuting => {
            let top = n.or(max_n).unwrap_or(6);
            if !(1..=7).contains(&top) {
                return Err(CliError::Usage(format!("commuting sizes must lie in 1..=7, got {top}")));
            }
            reports.push(commuting_suite(top, store, timings));
        }
        Suite::All => {
            for s in [
                Suite::Algebra,
                Suite::Geometry,
                Suite::Exchange,
                Suite::Sumrules,
                Suite::Markov,
                Suite::D1,
                Suite::Commuting,
            ] {
                reports.extend(run_suite(s, store, n, max_n, cfg, timings)?);
            }
        }
    }
    Ok(reports)
}

pub fn verify(
    out: &mut String,
    dir: Option<PathBuf>,
    suite: Suite,
    n: Option<usize>,
    max_n: Option<usize>,
    cfg: &SuiteConfig,
    format: Format,
    timings: bool,
) -> Result<bool> {
    let store = TableStore::new(dir);
    let reports = run_suite(suite, &store, n, max_n, cfg, timings)?;
    let passed = reports.iter().all(SuiteReport::passed);
    match format {
        Format::Text => {
            for r in &reports {
                write!(out, "{}", r.to_text()).ok();
            }
            writeln!(out, "{}", if passed { "OVERALL PASS" } else { "OVERALL FAIL" }).ok();
        }
        Format::Json => {
            #[derive(Serialize)]
            struct All<'a> {
                passed: bool,
                reports: &'a [SuiteReport],
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&All { passed, reports: &reports })?).ok();
        }
    }
    Ok(passed)
}

pub fn degrees(
    out: &mut String,
    dir: Option<PathBuf>,
    scheme: Scheme,
    n: Option<usize>,
    max_n: Option<usize>,
) -> Result<bool> {
    let store = TableStore::new(dir);
    let mut ok = true;
    match scheme {
        Scheme::E | Scheme::D1 => {
            for k in sizes(n, max_n, TABLES, "table")? {
                let det = degree_determinant(k);
                let sum = store.values(k)?.total_degree();
                ok &= det == sum;
                if scheme == Scheme::E {
                    writeln!(out, "N={k} determinant {det} table {sum}").ok();
                } else {
                    let factor = BigInt::from(1u64 << (k / 2 + k % 2));
                    writeln!(out, "N={k} determinant {} table {}", &factor * &det, &factor * &sum).ok();
                }
            }
        }
        Scheme::Commuting => {
            let top = n.or(max_n).unwrap_or(6);
            if !(1..=7).contains(&top) {
                return Err(CliError::Usage(format!("commuting sizes must lie in 1..=7, got {top}")));
            }
            let seq: Vec<String> = degree_sequence(top).iter().map(BigInt::to_string).collect();
            writeln!(out, "{}", seq.join(" ")).ok();
        }
    }
    Ok(ok)
}
