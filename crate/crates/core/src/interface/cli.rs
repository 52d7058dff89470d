//! The `perfgroup` command line.

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, ErrorKind, Result};
use crate::group::{Realizer, DEFAULT_MAX_ORDER};
use crate::interface::paper_check::run_paper_checks;
use crate::interface::{analyze, parse_spec, AnalyzeOptions, GroupSpec};
use crate::numbers::{even_perfect_numbers, format_ratio};
use crate::search::{perfect_completions, SearchBounds, SeedSummary};
use crate::{Nat, PerfectCertificate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Environment variable overriding the realization bound (the flag wins).
pub const MAX_ORDER_ENV: &str = "PERFGROUP_MAX_ORDER";

const SPEC_HELP: &str = "\
Group descriptions combine atoms with 'x' (direct product) and parentheses:
  C<n>  cyclic group of order n
  D<m>  dihedral group of ORDER m (m even; D8 is the symmetry group of a square)
  S<n>  symmetric group on n points
  A<n>  alternating group on n points
Letters are case-insensitive, e.g. \"A5 x C15128\" or \"(s3 x c5) x d8\".";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "perfgroup",
    version,
    about = "Normal-subgroup order sums, perfect groups and perfect numbers",
    after_help = SPEC_HELP
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Largest group realized as a multiplication table
    #[arg(long, global = true, env = MAX_ORDER_ENV, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normal subgroups, D(G), perfection and related invariants of a group
    #[command(after_help = SPEC_HELP)]
    Analyze {
        /// Group description, e.g. "S3 x C5"
        spec: String,
    },
    /// Even perfect numbers up to a limit
    PerfectNumbers {
        #[arg(long, value_parser = BigUint::from_str)]
        limit: BigUint,
    },
    /// Complete a seed group to perfect groups seed x C_m
    #[command(after_help = SPEC_HELP)]
    Search {
        /// Seed group description, e.g. "A5"
        #[arg(long)]
        seed: String,
        #[arg(long, default_value_t = SearchBounds::default().max_prime_power)]
        max_prime_power: u64,
        #[arg(long, default_value_t = SearchBounds::default().max_depth)]
        max_depth: usize,
    },
    /// Recompute the reference values and report PASS/FAIL for each
    PaperCheck,
}

fn exit_code(e: &Error) -> i32 {
    match e.kind() {
        ErrorKind::Domain => EXIT_DOMAIN,
        ErrorKind::Syntax => EXIT_USAGE,
        ErrorKind::Resource => EXIT_RESOURCE,
    }
}

fn json_number(n: &BigUint) -> serde_json::Value {
    serde_json::Value::Number(serde_json::Number::from_str(&n.to_string()).expect("decimal digits"))
}

/// Seed summary for `search`: alternating atoms A5 and up are known simple
/// and never realized; anything else is realized within the bound.
pub fn resolve_seed(spec: &GroupSpec, max_order: usize) -> Result<SeedSummary<Nat>> {
    if spec.is_nonabelian_simple_atom() {
        return SeedSummary::from_descriptor(spec.to_string(), spec.order(), true);
    }
    let group = spec.realize(&Realizer::new(max_order))?;
    Ok(SeedSummary::from_group(&group))
}

#[derive(Serialize)]
struct CertificateJson {
    group: String,
    cofactor: serde_json::Value,
    chain: Vec<u64>,
    total_order: serde_json::Value,
    total_d: serde_json::Value,
    verified: bool,
}

impl From<&PerfectCertificate> for CertificateJson {
    fn from(c: &PerfectCertificate) -> Self {
        CertificateJson {
            group: c.label(),
            cofactor: json_number(&c.cofactor),
            chain: c.chain.clone(),
            total_order: json_number(&c.total_order),
            total_d: json_number(&c.total_d),
            verified: crate::verify_certificate(c),
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Analyze { spec } => {
            let spec = parse_spec(spec)?;
            let report = analyze(
                &spec,
                &AnalyzeOptions {
                    max_order: cli.max_order,
                },
            )?;
            if json {
                writeln!(out, "{}", report.to_json()).ok();
            } else {
                writeln!(out, "{report}").ok();
            }
        }
        Command::PerfectNumbers { limit } => {
            let list = even_perfect_numbers(limit)?;
            if json {
                let values: Vec<serde_json::Value> = list.iter().map(json_number).collect();
                writeln!(out, "{}", serde_json::Value::Array(values)).ok();
            } else {
                for n in list {
                    writeln!(out, "{n}").ok();
                }
            }
        }
        Command::Search {
            seed,
            max_prime_power,
            max_depth,
        } => {
            let spec = parse_spec(seed)?;
            let summary = resolve_seed(&spec, cli.max_order)?;
            let bounds = SearchBounds {
                max_prime_power: *max_prime_power,
                max_depth: *max_depth,
            };
            let certs = perfect_completions(&summary, &bounds)?;
            if json {
                let doc = serde_json::json!({
                    "schema": 1,
                    "seed": {
                        "label": summary.label,
                        "order": json_number(&summary.order),
                        "d_value": json_number(&summary.d_value),
                        "ratio": format_ratio(&summary.ratio),
                    },
                    "certificates": certs.iter().map(CertificateJson::from).collect::<Vec<_>>(),
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json")).ok();
            } else {
                writeln!(
                    out,
                    "seed {}: order {}, D = {}, D/|G| = {}",
                    summary.label,
                    summary.order,
                    summary.d_value,
                    format_ratio(&summary.ratio)
                )
                .ok();
                if certs.is_empty() {
                    writeln!(out, "no perfect completion within the search bounds").ok();
                }
                for c in &certs {
                    let chain: Vec<String> = c.chain.iter().map(u64::to_string).collect();
                    writeln!(
                        out,
                        "{}: cofactor {} = {}, order {}, D = {} = 2 x {}",
                        c.label(),
                        c.cofactor,
                        if chain.is_empty() {
                            "1".to_string()
                        } else {
                            chain.join(" * ")
                        },
                        c.total_order,
                        c.total_d,
                        c.total_order
                    )
                    .ok();
                }
            }
        }
        Command::PaperCheck => {
            let checks = run_paper_checks();
            let all = checks.iter().all(|c| c.passed());
            if json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&checks).expect("json")
                )
                .ok();
            } else {
                for c in &checks {
                    writeln!(out, "{c}").ok();
                }
                let passed = checks.iter().filter(|c| c.passed()).count();
                writeln!(out, "{passed}/{} checks passed", checks.len()).ok();
            }
            return Ok(if all { EXIT_OK } else { EXIT_DOMAIN });
        }
    }
    Ok(EXIT_OK)
}

/// Runs the command line on `args` (including the program name) and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            return match e.kind() {
                K::DisplayHelp | K::DisplayVersion => {
                    write!(out, "{}", e.render()).ok();
                    EXIT_OK
                }
                _ => {
                    write!(err, "{}", e.render()).ok();
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            writeln!(err, "error: {e}").ok();
            exit_code(&e)
        }
    }
}
