use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use quartic_core::analytic::{d4_constant_with, Precision};
use quartic_core::census::{fit_and_report, run_census, run_suite, CensusOptions, Suite, DEFAULT_CAPACITY};
use quartic_core::{Error, Result};
use serde_json::json;

/// Count D4, C4 and V4 quartic fields through towers of quadratic fields.
#[derive(Parser, Debug)]
#[command(name = "quartic", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate and classify every tower quartic with |disc| <= X.
    Census {
        #[arg(long, value_parser = parse_count)]
        bound: u64,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Checkpoint file of an interrupted run.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Raise the bound limit (default 1e6).
        #[arg(long, value_parser = parse_count)]
        capacity: Option<u64>,
    },
    /// Truncated sum for the D4 constant.
    Constant {
        #[arg(long, value_parser = parse_count)]
        truncation: u64,
        /// Decimal digits of certified accuracy per L-value.
        #[arg(long, default_value_t = 10)]
        precision: u32,
    },
    /// Run an internal consistency suite.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long, value_parser = parse_count)]
        bound: Option<u64>,
    },
    /// Fit N_D4(X) ~ c X over a ladder of bounds and compare with the constant.
    Fit {
        #[arg(long, value_delimiter = ',', value_parser = parse_count)]
        bounds: Vec<u64>,
        #[arg(long, default_value_t = 10_000, value_parser = parse_count)]
        truncation: u64,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

/// Accepts 1000, 1e3 or 1_000.
fn parse_count(s: &str) -> std::result::Result<u64, String> {
    let t = s.replace('_', "");
    if let Ok(n) = t.parse::<u64>() {
        return Ok(n);
    }
    let f: f64 = t.parse().map_err(|_| format!("not a number: {s}"))?;
    if f < 0.0 || f.fract() != 0.0 || f > 1e18 {
        return Err(format!("not a nonnegative integer: {s}"));
    }
    Ok(f as u64)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Census { bound, jobs, out, resume, capacity } => {
            let capacity = capacity.unwrap_or(DEFAULT_CAPACITY);
            if capacity > DEFAULT_CAPACITY {
                eprintln!("warning: capacity raised to {capacity}; class groups grow with |d|");
            }
            let opts = CensusOptions { jobs, out, resume, capacity, halt_after_fields: None };
            let r = run_census(bound, &opts)?;
            println!(
                "{}",
                json!({
                    "X": r.x.to_string(),
                    "pair_count": r.pair_count.to_string(),
                    "N_D4": r.n_d4.to_string(),
                    "N_C4": r.n_c4.to_string(),
                    "N_V4": r.n_v4.to_string(),
                    "base_fields": r.per_field.len(),
                    "elapsed_ms": r.elapsed_ms,
                })
            );
        }
        Command::Constant { truncation, precision } => {
            let c = d4_constant_with(truncation, Precision::new(precision)?)?;
            println!(
                "{}",
                json!({
                    "midpoint": c.value.midpoint,
                    "radius": c.value.radius,
                    "tail_estimate": c.tail_estimate,
                    "terms_used": c.terms_used,
                })
            );
        }
        Command::Verify { suite, bound } => {
            let default = if suite == Suite::Density { 100_000 } else { 10_000 };
            let o = run_suite(suite, bound.unwrap_or(default))?;
            println!("{}", serde_json::to_string(&o)?);
            if !o.passed {
                return Err(Error::Invariant(format!("suite {suite:?} failed")));
            }
        }
        Command::Fit { bounds, truncation, jobs } => {
            let r = fit_and_report(&bounds, truncation, jobs)?;
            println!("{}", serde_json::to_string(&r)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
