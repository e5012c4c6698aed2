//! `mpc-dirac`: command-line front end for the verification suites and the
//! Dirac–Dolbeault spectra on CP^n.
//!
//! Exit codes: 0 when every check passes, 1 on a mismatch or a residual above
//! its threshold, 2 on invalid configuration or dimension overflow.

mod config;
mod dirac;
mod error;
mod output;
mod verify;

use std::process::ExitCode;

use clap::Parser;

use config::{Cli, Command};
use error::CliError;

fn run(cli: &Cli) -> Result<bool, CliError> {
    cli.run.validate()?;
    let (bytes, pass) = match &cli.command {
        Command::MpcVerify => {
            let report = verify::run(&cli.run)?;
            (output::encode_verify(&report, cli.run.format)?, report.pass)
        }
        Command::Dirac(args) => {
            args.validate()?;
            let report = dirac::run(&cli.run, args)?;
            (output::encode_dirac(&report, cli.run.format)?, report.pass)
        }
    };
    output::emit(&bytes, &cli.run)?;
    Ok(pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("mpc-dirac: at least one check failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("mpc-dirac: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
