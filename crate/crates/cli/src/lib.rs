//! The `herbst` command line: argument parsing, configuration and output.
//!
//! Exit codes: 0 success, 1 invalid input, 2 numerical failure, 3 failed
//! verification.

// NaN must fail every guard, hence `!(b < 0.0)`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use clap::{Parser, Subcommand};

pub use config::{Format, Overrides, PotentialSpec, RunConfig};
pub use error::CliError;
pub use output::Report;

#[derive(Debug, Parser)]
#[command(
    name = "herbst",
    version,
    about = "Birman-Schwinger threshold analysis for sqrt(-Delta+m^2) - m + lambda V"
)]
pub struct Cli {
    #[command(flatten)]
    pub overrides: Overrides,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Green's function and its envelope on 100 radii.
    Kernel {
        /// Energy E in (-m, 0]; default 0.
        #[arg(long, allow_negative_numbers = true, conflicts_with = "mu")]
        energy: Option<f64>,
        /// Yukawa mass in [0, m) instead of the energy.
        #[arg(long)]
        mu: Option<f64>,
    },
    /// Leading Birman-Schwinger eigenpair at E = 0.
    Spectrum,
    /// Threshold coupling, expansion coefficients and E(lambda).
    Threshold {
        /// Use a trial vector with zero overlap (the a = 0 branch).
        #[arg(long)]
        a_zero: bool,
        /// Add E(lambda) from root-finding on the full kernel.
        #[arg(long)]
        brute_force: bool,
    },
    /// Run a verification suite, or all of them.
    Verify {
        /// specfun, appendix_a, appendix_b, appendix_c, series, continuation or all.
        suite: Option<String>,
    },
    /// Check |G| against the envelope bound.
    Bound {
        /// A single Yukawa mass; default 0.2m, 0.5m and 0.8m.
        #[arg(long)]
        mu: Option<f64>,
    },
}

/// Runs a parsed command line and writes its output.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(&cli.overrides)?;
    match &cli.command {
        Command::Kernel { energy, mu } => commands::kernel(&cfg, *energy, *mu)?.emit(&cfg),
        Command::Spectrum => commands::spectrum(&cfg)?.emit(&cfg),
        Command::Threshold {
            a_zero,
            brute_force,
        } => commands::threshold(&cfg, *a_zero, *brute_force)?.emit(&cfg),
        Command::Verify { suite } => {
            let (rep, ok) = commands::verify(&cfg, suite.as_deref())?;
            rep.emit(&cfg)?;
            if ok {
                Ok(())
            } else {
                Err(CliError::Verification("at least one check failed".into()))
            }
        }
        Command::Bound { mu } => {
            let (rep, ok) = commands::bound(&cfg, *mu)?;
            rep.emit(&cfg)?;
            if ok {
                Ok(())
            } else {
                Err(CliError::Verification("|G| exceeds the envelope".into()))
            }
        }
    }
}
