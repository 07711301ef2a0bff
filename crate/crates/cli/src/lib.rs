//! Command-line front end for `keller-core`.
//!
//! Data goes to standard output (or `--output`), warnings to standard error.
//! Exit status: 0 success, 1 domain error or failed self-test, 2 argument error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use keller_core::analysis::{d_table_with, neg_log_series_with, slope_series_with, ModulusSelection};
use keller_core::export::{char_table_rows, dtable_rows, series_rows, EstimateRow, FitRow};
use keller_core::recursion::{estimate_with, precision_for, EstimateStatus};
use keller_core::verify::{brute_force_suite, character_suite, oracle_suite, Check};
use keller_core::{enumerate_characters, DirichletCharacter, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "keller", version, about = "Primes from Dirichlet L-function residuals")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,

    /// Write data here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Working precision in bits; must not be below the required precision.
    #[arg(long, global = true)]
    prec_bits: Option<u32>,

    /// Worker threads for sweeps (0 = one per core).
    #[arg(long, env = "KELLER_THREADS", global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct CharArgs {
    /// Character modulus (1 is the constant-one character).
    #[arg(long, default_value_t = 1)]
    modulus: u64,

    /// Character label; every character of the modulus when omitted.
    #[arg(long)]
    label: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Character table of one modulus.
    Chars {
        #[arg(long)]
        modulus: u64,
    },
    /// One evaluation of the recursion.
    Estimate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: u32,
        #[command(flatten)]
        chi: CharArgs,
    },
    /// The series -ln E(n, s) for s in a range.
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s_min: u32,
        #[arg(long)]
        s_max: u32,
        #[command(flatten)]
        chi: CharArgs,
    },
    /// Best-fit slopes of -ln E_n(s) for each n (constant-one character).
    Slopes {
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        s_min: u32,
        #[arg(long)]
        s_max: u32,
    },
    /// Signed error differences D_n(s, chi) across moduli.
    Dtable {
        #[arg(long, value_delimiter = ',', default_value = "3,4,5,6,7,8")]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 50)]
        s: u32,
        /// Comma-separated moduli; `9:complex` keeps only non-real characters.
        #[arg(long, value_delimiter = ',', default_value = "4,5,8,9:complex")]
        moduli: Vec<ModulusSelection>,
    },
    /// Character-property, brute-force and exact-oracle suites.
    Selftest,
}

/// Failure of a run, tagged with its exit status.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InsufficientPrecision { .. } => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Domain(format!("i/o error: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Domain(format!("csv error: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Domain(format!("json error: {e}"))
    }
}

#[derive(Debug, Serialize)]
struct CheckRow {
    name: String,
    passed: bool,
    detail: String,
}

impl From<Check> for CheckRow {
    fn from(c: Check) -> Self {
        CheckRow {
            name: c.name,
            passed: c.passed,
            detail: c.detail,
        }
    }
}

/// Parses `args` (including the program name) and runs, writing to the
/// process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    if let Some(t) = cli.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let result = match &cli.output {
        Some(path) => File::create(path)
            .map_err(Failure::from)
            .and_then(|f| {
                let mut w = BufWriter::new(f);
                let r = execute(&cli, &mut w, err);
                w.flush()?;
                r
            }),
        None => execute(&cli, out, err),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DOMAIN
        }
    }
}

fn emit<R: Serialize>(rows: &[R], format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn select(chi: &CharArgs) -> Result<Vec<DirichletCharacter>, Failure> {
    let group = enumerate_characters(chi.modulus)?;
    match chi.label {
        None => Ok(group.iter().cloned().collect()),
        Some(l) => match group.get(l) {
            Some(c) => Ok(vec![c.clone()]),
            None => Err(Failure::Usage(format!(
                "no character with label {l} mod {}; labels run 1..={}",
                chi.modulus,
                group.len()
            ))),
        },
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let prec = cli.prec_bits;
    match &cli.command {
        Command::Chars { modulus } => {
            let group = enumerate_characters(*modulus)?;
            emit(&char_table_rows(&group), cli.format, out)?;
        }
        Command::Estimate { n, s, chi } => {
            let ctx = precision_for(*n, *s, prec)?;
            let mut rows = Vec::new();
            for c in select(chi)? {
                let e = estimate_with(*n, *s, &c, &ctx)?;
                if e.status == EstimateStatus::TargetCharacterZero {
                    writeln!(
                        err,
                        "warning: {}({}) = 0; the estimate does not converge to p_{}",
                        c.name(),
                        e.target,
                        n + 1
                    )?;
                }
                rows.push(EstimateRow::from(&e));
            }
            emit(&rows, cli.format, out)?;
        }
        Command::Sweep { n, s_min, s_max, chi } => {
            let mut rows = Vec::new();
            for c in select(chi)? {
                let series = neg_log_series_with(*n, *s_min..=*s_max, &c, prec)?;
                if !series.excluded.is_empty() {
                    writeln!(
                        err,
                        "warning: {}: {} points with zero error excluded",
                        c.name(),
                        series.excluded.len()
                    )?;
                }
                rows.extend(series_rows(&series));
            }
            emit(&rows, cli.format, out)?;
        }
        Command::Slopes {
            n_min,
            n_max,
            s_min,
            s_max,
        } => {
            let fits = slope_series_with(*n_min..=*n_max, *s_min..=*s_max, prec)?;
            let rows: Vec<FitRow> = fits.iter().map(|(_, f)| FitRow::from(f)).collect();
            emit(&rows, cli.format, out)?;
        }
        Command::Dtable { n_list, s, moduli } => {
            let table = d_table_with(n_list, *s, moduli, prec)?;
            let rows = dtable_rows(&table);
            for r in rows.iter().filter(|r| r.status != "ok") {
                writeln!(
                    err,
                    "warning: chi_{} mod {} at n={}: {}",
                    r.label, r.modulus, r.n, r.status
                )?;
            }
            emit(&rows, cli.format, out)?;
        }
        Command::Selftest => {
            let mut checks = character_suite(50)?;
            checks.extend(brute_force_suite(&[3, 4, 5, 8])?);
            checks.extend(oracle_suite(&[1, 4, 8], 6, &[5, 10, 20, 40], 64)?);
            let failed = checks.iter().filter(|c| !c.passed).count();
            for c in checks.iter().filter(|c| !c.passed) {
                writeln!(err, "FAIL {}: {}", c.name, c.detail)?;
            }
            let rows: Vec<CheckRow> = checks.into_iter().map(CheckRow::from).collect();
            emit(&rows, cli.format, out)?;
            return Ok(if failed == 0 { EXIT_OK } else { EXIT_DOMAIN });
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("keller").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        let (code, _, err) = run_capture(&["chars", "--bogus"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("Usage"));
    }

    #[test]
    fn missing_label_is_usage_error() {
        let (code, _, _) = run_capture(&["estimate", "--n", "2", "--s", "20", "--modulus", "5", "--label", "9"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn low_precision_override_rejected() {
        let (code, _, err) = run_capture(&["estimate", "--n", "2", "--s", "50", "--prec-bits", "100"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("226"));
    }

    #[test]
    fn oversized_modulus_is_domain_error() {
        let (code, _, _) = run_capture(&["chars", "--modulus", "20000"]);
        assert_eq!(code, EXIT_DOMAIN);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("dtable"));
    }
}
