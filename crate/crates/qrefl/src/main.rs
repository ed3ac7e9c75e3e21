//! `qrefl`: quantum reflection sweeps, Liouville profiles and effective-range fits.

mod commands;
mod config;
mod error;
mod io;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Flags, RunConfig};
use error::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "qrefl", version, about = "Quantum reflection on Casimir-Polder potentials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand)]
enum Command {
    /// Reflection amplitudes over a kℓ4 grid or at one point
    Reflect,
    /// Transformed potential 𝐕(𝐳) and badlands function in the Liouville coordinate
    Liouville,
    /// Fit of the inner reflection ρ and the derived effective-range coefficients
    Fit,
    /// Accuracy of the improved and modified effective-range theories
    Compare,
    /// Exact amplitudes of the pure 1/z⁴ potential
    #[command(name = "v4-exact")]
    V4Exact,
    /// Invariant and cross-derivation checks
    Verify {
        /// Run only these checks (comma separated or repeated)
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Tolerance applied to every selected check
        #[arg(long)]
        tolerance: Option<f64>,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    let (name, points) = match &cli.command {
        Command::Reflect => ("reflect", 1000),
        Command::Liouville => ("liouville", 401),
        Command::Fit => ("fit", 1000),
        Command::Compare => ("compare", 1000),
        Command::V4Exact => ("v4-exact", 1000),
        Command::Verify { .. } => ("verify", 1000),
    };
    let cfg = RunConfig::resolve(name, cli.flags, points)?;
    match cli.command {
        Command::Reflect => commands::reflect(&cfg),
        Command::Liouville => commands::liouville(&cfg),
        Command::Fit => commands::fit(&cfg),
        Command::Compare => commands::compare(&cfg),
        Command::V4Exact => commands::v4_exact(&cfg),
        Command::Verify { only, tolerance } => {
            let results = verify::run(&only, tolerance)?;
            let mut failed = Vec::new();
            for r in &results {
                let status = if r.pass() { "PASS" } else { "FAIL" };
                println!("{status} {:<10} measured {:.3e} tolerance {:.1e}", r.name, r.measured, r.tolerance);
                if !r.pass() {
                    failed.push(r.name);
                }
            }
            println!("{} of {} checks passed", results.len() - failed.len(), results.len());
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Check(format!("failing checks: {}", failed.join(", "))))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
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
