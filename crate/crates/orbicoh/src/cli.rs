//! Argument parsing and command dispatch.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use orbicoh_core::crring::{cr_product_fund, sector_label, Product};
use orbicoh_core::generating::{
    confirmed_terms, cr_dimension_twisted, cr_formula_twisted, series_check_poincare1, series_check_samuel,
};
use orbicoh_core::genus0::betti_genus0;
use orbicoh_core::inertia2::enumerate_double_sectors;
use orbicoh_core::rational;
use orbicoh_core::sector::{enumerate_sectors, twisted_sectors};
use serde::Serialize;

use crate::records::{AgeRecord, BettiRecord, DimsRecord, ExcessRecord, ProductRecord, SectorRecord};
use crate::selfcheck::selfcheck;

#[derive(Debug, Parser)]
#[command(name = "orbicoh", version, about = "Orbifold cohomology of genus-one moduli stacks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Samuel,
    Poincare1,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the sectors of the inertia stack.
    Inventory {
        #[arg(long)]
        n: usize,
        /// Only sectors meeting the open part.
        #[arg(long)]
        open: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Ages of the twisted sectors.
    Ages {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Twisted dimension by enumeration and by closed formula.
    Dims {
        #[arg(long)]
        n: usize,
        /// CSV of `n,dim` rows with untwisted dimensions.
        #[arg(long)]
        untwisted_dims: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compare generating series with the enumeration.
    Series {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Excess bundles of the identity-free double sectors.
    Excess {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Products of fundamental classes of twisted sectors.
    Products {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        /// Label by families (block sizes) instead of partitions.
        #[arg(long)]
        families: bool,
    },
    /// Betti numbers of the genus-zero moduli space.
    Genus0 {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the invariant suite.
    Selfcheck {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
}

/// Exit code and text of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub output: String,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { code: 0, output }
    }

    fn checked(passed: bool, output: String) -> Self {
        Outcome { code: if passed { 0 } else { 1 }, output }
    }
}

/// Parses `argv` (program name first) and runs the command. Usage errors
/// and invalid inputs give code 2, failed checks code 1.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::*;
            let code = if matches!(e.kind(), DisplayHelp | DisplayVersion) { 0 } else { 2 };
            return Outcome { code, output: e.to_string() };
        }
    };
    match execute(&cli.command) {
        Ok(outcome) => outcome,
        Err(e) => {
            let code = match e.downcast_ref::<orbicoh_core::Error>() {
                Some(orbicoh_core::Error::Consistency(_)) => 1,
                _ => 2,
            };
            Outcome { code, output: format!("error: {e:#}\n") }
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn csv_rows(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn md_rows(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = format!("| {} |\n|{}\n", header.join(" | "), "---|".repeat(header.len()));
    for row in rows {
        let _ = writeln!(out, "| {} |", row.join(" | "));
    }
    out
}

/// `json`, `csv` or `md` output of a list of records.
fn table<T: Serialize>(
    format: Format,
    records: &[T],
    header: &[&str],
    row: impl Fn(&T) -> Vec<String>,
) -> Result<String> {
    match format {
        Format::Json => json(&records),
        Format::Csv => csv_rows(header, records.iter().map(&row)),
        Format::Md => Ok(md_rows(header, records.iter().map(&row))),
    }
}

fn blocks(p: &[Vec<usize>]) -> String {
    p.iter()
        .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("|")
}

/// Reads `n,dim` rows; a header row is allowed.
pub fn read_untwisted_dims(path: &Path) -> Result<BTreeMap<usize, BigUint>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut out = BTreeMap::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let (Some(n), Some(dim)) = (record.get(0), record.get(1)) else {
            bail!("{}: line {} needs two fields", path.display(), i + 1);
        };
        if i == 0 && n.parse::<usize>().is_err() {
            continue;
        }
        let n: usize = n.parse().with_context(|| format!("line {}: bad n", i + 1))?;
        let dim: BigUint = dim.parse().with_context(|| format!("line {}: bad dimension", i + 1))?;
        out.insert(n, dim);
    }
    Ok(out)
}

fn execute(command: &Command) -> Result<Outcome> {
    match *command {
        Command::Inventory { n, open, format } => {
            let records: Vec<SectorRecord> =
                enumerate_sectors(n, !open)?.iter().map(SectorRecord::new).collect::<Result<_>>()?;
            let header = ["base", "aut_order", "aut_exp", "partition", "codim", "age", "poincare"];
            Ok(Outcome::ok(table(format, &records, &header, |r| {
                vec![
                    r.base.clone(),
                    r.aut.order.to_string(),
                    r.aut.exp.to_string(),
                    blocks(&r.partition),
                    r.codim.to_string(),
                    r.age.clone(),
                    r.poincare.join(" "),
                ]
            })?))
        }
        Command::Ages { n, format } => {
            let records: Vec<AgeRecord> = twisted_sectors(n)?.iter().map(AgeRecord::new).collect();
            let passed = records.iter().all(|r| r.tabulated.as_ref().map_or(true, |t| *t == r.age));
            let header = ["sector", "codim", "age", "inverse_age", "tabulated"];
            let text = table(format, &records, &header, |r| {
                vec![
                    r.sector.clone(),
                    r.codim.to_string(),
                    r.age.clone(),
                    r.inverse_age.clone(),
                    r.tabulated.clone().unwrap_or_default(),
                ]
            })?;
            Ok(Outcome::checked(passed, text))
        }
        Command::Dims { n, ref untwisted_dims, format } => {
            let enumerated = cr_dimension_twisted(n)?;
            let formula = cr_formula_twisted(n)?;
            let untwisted = match untwisted_dims {
                Some(path) => Some(
                    read_untwisted_dims(path)?
                        .remove(&n)
                        .with_context(|| format!("{} has no row for n = {n}", path.display()))?,
                ),
                None => None,
            };
            let record = DimsRecord {
                n,
                twisted_enumerated: enumerated.to_string(),
                twisted_formula: formula.to_string(),
                total: untwisted.as_ref().map(|u| (u + &enumerated).to_string()),
                untwisted: untwisted.map(|u| u.to_string()),
            };
            let header = ["n", "twisted_enumerated", "twisted_formula", "untwisted", "total"];
            let text = table(format, std::slice::from_ref(&record), &header, |r| {
                vec![
                    r.n.to_string(),
                    r.twisted_enumerated.clone(),
                    r.twisted_formula.clone(),
                    r.untwisted.clone().unwrap_or_default(),
                    r.total.clone().unwrap_or_default(),
                ]
            })?;
            Ok(Outcome::checked(enumerated == formula, text))
        }
        Command::Series { which: Which::Samuel, max_order, format } => series_samuel(max_order, format),
        Command::Series { which: Which::Poincare1, max_order, format } => series_poincare1(max_order, format),
        Command::Excess { n, format } => {
            let records: Vec<ExcessRecord> = enumerate_double_sectors(n)?
                .iter()
                .filter(|z| z.is_component() && !z.has_identity())
                .map(ExcessRecord::new)
                .collect::<Result<_>>()?;
            let header = ["support", "triple", "rank", "chern"];
            Ok(Outcome::ok(table(format, &records, &header, |r| {
                vec![r.support.clone(), format!("({})", r.triple.join(",")), r.rank.to_string(), r.chern.clone()]
            })?))
        }
        Command::Products { n, format, families } => products(n, format, families),
        Command::Genus0 { n, format } => {
            let record = BettiRecord::from(&betti_genus0(n)?);
            let text = match format {
                Format::Json => json(&record)?,
                Format::Csv => csv_rows(
                    &["n", "degree", "betti"],
                    record.betti.iter().enumerate().map(|(k, b)| vec![n.to_string(), (2 * k).to_string(), b.to_string()]),
                )?,
                Format::Md => md_rows(
                    &["degree", "betti"],
                    record.betti.iter().enumerate().map(|(k, b)| vec![(2 * k).to_string(), b.to_string()]),
                ),
            };
            Ok(Outcome::ok(text))
        }
        Command::Selfcheck { n_max, format } => {
            let report = selfcheck(n_max);
            let text = match format {
                Format::Json => json(&report)?,
                Format::Csv => csv_rows(
                    &["name", "scope", "status", "details"],
                    report
                        .entries
                        .iter()
                        .map(|e| vec![e.name.clone(), e.scope.clone(), e.status.to_string(), e.details.clone()]),
                )?,
                Format::Md => report.to_string(),
            };
            Ok(Outcome::checked(report.passed(), text))
        }
    }
}

#[derive(Serialize)]
struct OrderRow {
    order: usize,
    enumerated: String,
    expected: String,
    status: &'static str,
}

fn series_samuel(max_order: usize, format: Format) -> Result<Outcome> {
    let rows: Vec<OrderRow> = series_check_samuel(max_order)?
        .into_iter()
        .map(|c| OrderRow {
            order: c.order,
            status: if c.passed() { "pass" } else { "fail" },
            enumerated: rational::to_string(&c.enumerated),
            expected: rational::to_string(&c.expected),
        })
        .collect();
    let passed = rows.iter().all(|r| r.status == "pass");
    let text = table(format, &rows, &["order", "enumerated", "expected", "status"], |r| {
        vec![r.order.to_string(), r.enumerated.clone(), r.expected.clone(), r.status.to_string()]
    })?;
    Ok(Outcome::checked(passed, text))
}

#[derive(Serialize)]
struct CoefficientRow {
    fraction: String,
    n: usize,
    m: usize,
    enumerated: String,
    stated: String,
    status: &'static str,
}

#[derive(Serialize)]
struct Poincare1Report {
    coefficients: Vec<CoefficientRow>,
    confirmed_terms: Vec<(String, String, bool)>,
}

fn series_poincare1(max_order: usize, format: Format) -> Result<Outcome> {
    let coefficients: Vec<CoefficientRow> = series_check_poincare1(max_order)?
        .into_iter()
        .map(|d| CoefficientRow {
            status: if d.matches() { "match" } else { "diff" },
            fraction: rational::to_string(&d.fraction),
            n: d.n,
            m: d.m,
            enumerated: rational::to_string(&d.enumerated),
            stated: rational::to_string(&d.stated),
        })
        .collect();
    let confirmed: Vec<(String, String, bool)> = confirmed_terms(max_order)?
        .iter()
        .map(|t| (rational::to_string(&t.fraction), t.multiplier.to_string(), t.passed()))
        .collect();
    let passed = confirmed.iter().all(|c| c.2);
    let text = match format {
        Format::Json => json(&Poincare1Report { coefficients, confirmed_terms: confirmed })?,
        _ => {
            let header = ["fraction", "n", "m", "enumerated", "stated", "status"];
            let mut text = table(format, &coefficients, &header, |r| {
                vec![
                    r.fraction.clone(),
                    r.n.to_string(),
                    r.m.to_string(),
                    r.enumerated.clone(),
                    r.stated.clone(),
                    r.status.to_string(),
                ]
            })?;
            for (fraction, multiplier, ok) in &confirmed {
                let _ = writeln!(text, "confirmed term {multiplier}·P0 at {fraction}: {}", if *ok { "pass" } else { "fail" });
            }
            text
        }
    };
    Ok(Outcome::checked(passed, text))
}

fn products(n: usize, format: Format, families: bool) -> Result<Outcome> {
    let sectors = twisted_sectors(n)?;
    let mut grid = Vec::with_capacity(sectors.len());
    for a in &sectors {
        grid.push(sectors.iter().map(|b| cr_product_fund(a, b)).collect::<Result<Vec<Product>, _>>()?);
    }
    let text = match format {
        Format::Md => {
            let labels: Vec<String> = sectors.iter().map(|s| sector_label(s, families)).collect();
            let mut header = vec![""];
            header.extend(labels.iter().map(String::as_str));
            md_rows(
                &header,
                grid.iter().zip(&labels).map(|(row, label)| {
                    let mut cells = vec![label.clone()];
                    cells.extend(row.iter().map(|p| orbicoh_core::crring::render_product(p, families)));
                    cells
                }),
            )
        }
        _ => {
            let mut records = Vec::new();
            for (a, row) in sectors.iter().zip(&grid) {
                for (b, p) in sectors.iter().zip(row) {
                    records.push(ProductRecord::new(a, b, p));
                }
            }
            table(format, &records, &["left", "right", "product", "family"], |r| {
                vec![r.left.clone(), r.right.clone(), r.product.clone(), r.family.clone()]
            })?
        }
    };
    Ok(Outcome::ok(text))
}
