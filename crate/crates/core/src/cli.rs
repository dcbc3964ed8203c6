//! Command-line front end.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use crate::arith::{compute_m, find_prime_pairs, BoundInputs};
use crate::enumerate::{
    apply_exceptions, enumerate_restricted, load_exceptions, ExceptionRecord, DEFAULT_MIN_CHAR,
};
use crate::error::{Error, Result};
use crate::induced::{build_induced_rep, verdicts};
use crate::report::{
    candidates_jsonl, candidates_table, pairs_table, rep_table, report_table, theorem1_table,
    MonomialRepJson, PairSearchJson, ReportJson, Theorem1Json,
};
use crate::root_datum::{Family, LieType};
use crate::steinberg::{classify_orthogonal, verify_theorem1, verify_theorem1_all, ProductMode};

/// Environment variable naming the number of worker threads.
pub const WORKERS_ENV: &str = "ORTHOREPS_WORKERS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFICATION_FAILED: i32 = 2;

const DEFAULT_PAIR_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "orthoreps",
    version,
    about = "Orthogonal representations of finite groups of Lie type"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Restricted irreducible modules of one type up to a dimension bound.
    Enumerate(EnumerateArgs),
    /// Orthogonal and symplectic candidates in dimension n.
    Classify(ClassifyArgs),
    /// Check that D_{2pi} w1 is the only orthogonal candidate in dimension 4 pi.
    Theorem1(Theorem1Args),
    /// Prime pairs (p, t) with p = 1 mod n and t of order n mod p.
    Primes(PrimesArgs),
    /// Monomial induced representation over a finite field.
    Induce(InduceArgs),
    /// The bound M.
    Bound(BoundArgs),
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub rank: usize,
    #[arg(long)]
    pub bound: u64,
    /// CSV of known small-characteristic dimension drops.
    #[arg(long)]
    pub exceptions: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub n: u64,
    /// Smallest characteristic considered; defaults to max(20, n + 1).
    #[arg(long)]
    pub min_char: Option<u64>,
    #[arg(long, default_value = "orbit")]
    pub mode: ProductMode,
    #[arg(long)]
    pub exceptions: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Theorem1Args {
    #[arg(long)]
    pub pi: Option<u64>,
    #[arg(long)]
    pub all: bool,
}

#[derive(Debug, Args)]
pub struct PrimesArgs {
    #[arg(long)]
    pub n: u64,
    /// Explicit bound, overriding the computed one.
    #[arg(long = "M", conflicts_with = "auto_m")]
    pub m: Option<BigUint>,
    /// Compute M from `k,N`.
    #[arg(long = "auto-M", value_name = "K,N")]
    pub auto_m: Option<String>,
    #[arg(long)]
    pub count: usize,
    /// Maximum number of candidate p values examined.
    #[arg(long, default_value_t = DEFAULT_PAIR_LIMIT)]
    pub limit: u64,
}

#[derive(Debug, Args)]
pub struct InduceArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub t: u64,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub lambda: Option<u64>,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub cond: u64,
}

#[derive(Debug, Serialize)]
struct BoundJson {
    n: u64,
    k: u64,
    #[serde(rename = "N")]
    cond: u64,
    #[serde(rename = "M")]
    m: String,
}

/// Rendered output and the exit status it implies.
struct Outcome {
    text: String,
    verified: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            verified: true,
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

fn read_exceptions(path: Option<&Path>) -> Result<Vec<ExceptionRecord>> {
    let Some(path) = path else {
        return Ok(Vec::new());
    };
    let file = File::open(path).map_err(|e| {
        Error::Precondition(format!(
            "cannot open exceptions file {}: {e}",
            path.display()
        ))
    })?;
    load_exceptions(BufReader::new(file))
}

fn parse_auto_m(n: u64, raw: &str) -> Result<BigUint> {
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    let parsed: Vec<u64> = parts.iter().filter_map(|s| s.parse().ok()).collect();
    if parts.len() != 2 || parsed.len() != 2 {
        return Err(Error::Precondition(format!(
            "--auto-M expects k,N as two integers, got {raw:?}"
        )));
    }
    compute_m(BoundInputs {
        n,
        k: parsed[0],
        cond: parsed[1],
    })
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let format = cli.format;
    match &cli.command {
        Command::Enumerate(a) => {
            let type_id = LieType::new(a.family, a.rank)?;
            let exceptions = read_exceptions(a.exceptions.as_deref())?;
            let mut cands = enumerate_restricted(type_id, a.bound)?;
            apply_exceptions(&mut cands, &exceptions);
            Ok(Outcome::ok(match format {
                Format::Json => candidates_jsonl(&cands),
                Format::Table => candidates_table(&cands),
            }))
        }
        Command::Classify(a) => {
            let exceptions = read_exceptions(a.exceptions.as_deref())?;
            let min_char = a.min_char.unwrap_or(DEFAULT_MIN_CHAR.max(a.n + 1));
            let report = classify_orthogonal(a.n, min_char, a.mode, &exceptions)?;
            Ok(Outcome::ok(match format {
                Format::Json => to_json(&ReportJson::from(&report)),
                Format::Table => report_table(&report),
            }))
        }
        Command::Theorem1(a) => {
            let checks = match a.pi {
                Some(pi) => vec![verify_theorem1(pi)?],
                None => verify_theorem1_all()?,
            };
            let verified = checks.iter().all(|c| c.passed());
            let text = match format {
                Format::Json => {
                    let rows: Vec<Theorem1Json> = checks.iter().map(Theorem1Json::from).collect();
                    if a.all {
                        to_json(&rows)
                    } else {
                        to_json(&rows[0])
                    }
                }
                Format::Table => theorem1_table(&checks),
            };
            Ok(Outcome { text, verified })
        }
        Command::Primes(a) => {
            let (m, source) = match (&a.m, &a.auto_m) {
                (Some(m), _) => (m.clone(), "override"),
                (None, Some(raw)) => (parse_auto_m(a.n, raw)?, "auto"),
                (None, None) => {
                    return Err(Error::Precondition(
                        "one of --M or --auto-M is required".into(),
                    ));
                }
            };
            let search = find_prime_pairs(a.n, &m, a.count, a.limit)?;
            let verified = search.pairs.iter().all(|p| p.checks.all_checked_pass());
            let text = match format {
                Format::Json => to_json(&PairSearchJson::new(&search, source)),
                Format::Table => pairs_table(&search, source),
            };
            Ok(Outcome { text, verified })
        }
        Command::Induce(a) => {
            let rep = build_induced_rep(a.p, a.t, a.n, a.lambda)?;
            let v = verdicts(&rep);
            let verified = v.tame_relation
                && v.orthogonal
                && v.gram_symmetric
                && v.gram_det_is_plus_minus_one
                && v.absolutely_irreducible
                && v.tau_projective_order == a.p;
            let text = match format {
                Format::Json => to_json(&MonomialRepJson::from(&rep)),
                Format::Table => rep_table(&rep),
            };
            Ok(Outcome { text, verified })
        }
        Command::Bound(a) => {
            let m = compute_m(BoundInputs {
                n: a.n,
                k: a.k,
                cond: a.cond,
            })?;
            Ok(Outcome::ok(match format {
                Format::Json => to_json(&BoundJson {
                    n: a.n,
                    k: a.k,
                    cond: a.cond,
                    m: m.to_string(),
                }),
                Format::Table => format!("M = {m}\n"),
            }))
        }
    }
}

fn configure_workers() -> std::result::Result<(), String> {
    let Ok(raw) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let workers: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&w| w > 0)
        .ok_or_else(|| format!("{WORKERS_ENV} must be a positive integer, got {raw:?}"))?;
    // A second initialization (e.g. repeated calls in one process) is harmless.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global();
    Ok(())
}

fn emit(path: Option<&Path>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

/// Parses `argv`, runs the subcommand and returns the process exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
        }
    };
    if let Err(msg) = configure_workers() {
        eprintln!("error: {msg}");
        return EXIT_INVALID;
    }
    match execute(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(cli.output.as_deref(), &outcome.text) {
                eprintln!("error: cannot write output: {e}");
                return EXIT_INVALID;
            }
            if outcome.verified {
                EXIT_OK
            } else {
                eprintln!("verification failed");
                EXIT_VERIFICATION_FAILED
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INVALID
        }
    }
}
