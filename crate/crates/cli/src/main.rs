//! `canondiv`: compute canonical and α-divergences, run the verification suites,
//! recover dualistic structures and sweep α.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 numerical error.

mod divergence;
mod input;
mod recover;
mod sweep;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Result;
use canondiv::verify::{self, Suite, VerifyConfig};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Error in the invocation or the input document (exit code 2).
#[derive(Debug)]
pub struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Parser)]
#[command(
    name = "canondiv",
    version,
    about = "Canonical divergence of flat alpha-geometries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Divergences between named objects of an input document.
    Divergence(divergence::Args),
    /// Run a seeded verification suite.
    Verify(VerifyArgs),
    /// Recover metric and dual connections of a divergence at a point.
    Recover(recover::Args),
    /// Canonical divergence of one pair over a list of alpha values, as CSV.
    Sweep(sweep::Args),
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Classical,
    Quantum,
    Recovery,
    All,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    /// Random cases per suite.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    /// Overrides the main tolerance of the suite.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run_verify(args: &VerifyArgs) -> Result<bool> {
    if args.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    if let Some(t) = args.tolerance {
        if !(t.is_finite() && t >= 0.0) {
            return Err(usage(format!(
                "--tolerance must be a nonnegative number, got {t}"
            )));
        }
    }
    let suite = match args.suite {
        SuiteArg::Classical => Suite::Classical,
        SuiteArg::Quantum => Suite::Quantum,
        SuiteArg::Recovery => Suite::Recovery,
        SuiteArg::All => Suite::All,
    };
    let cfg = VerifyConfig {
        tolerance: args.tolerance,
        ..VerifyConfig::new(args.trials, args.seed)
    };
    let report = verify::run(suite, &cfg)?;
    write_json(&report, args.out.as_deref())?;
    if !report.summary.pass {
        if let Some(w) = report.worst() {
            eprintln!(
                "verification failed: {} of {} cases; worst {} ({} / {}): error {:e} > tolerance {:e}",
                report.summary.failures,
                report.summary.cases,
                w.method,
                w.pair.0,
                w.pair.1,
                w.rel_error,
                w.tolerance
            );
        }
    }
    Ok(report.summary.pass)
}

/// Pretty JSON to `out`, or to standard output.
pub fn write_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}")?;
            Ok(())
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<canondiv::Error>() {
        Some(e) if !e.is_input_error() => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Divergence(a) => divergence::run(a),
        Command::Verify(a) => run_verify(a),
        Command::Recover(a) => recover::run(a),
        Command::Sweep(a) => sweep::run(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
