use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mpc_core::su_rep::DEFAULT_DIM_CAP;

use crate::error::CliError;

/// Verification suites for Mpc(V, Ω, j) and spectra of the symplectic
/// Dirac–Dolbeault operators on CP^n.
#[derive(Debug, Parser)]
#[command(name = "mpc-dirac", version)]
pub struct Cli {
    #[command(flatten)]
    pub run: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Planck constant of the Fock model.
    #[arg(long, global = true, env = "MPC_DIRAC_HBAR", default_value_t = 1.0)]
    pub hbar: f64,
    /// Caps every residual threshold; the built-in thresholds apply when larger.
    #[arg(long, global = true, env = "MPC_DIRAC_TOL", default_value_t = 1e-5)]
    pub tol: f64,
    /// Seed for the sampling suites.
    #[arg(long, global = true, env = "MPC_DIRAC_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, env = "MPC_DIRAC_FORMAT", value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Largest su(n+1) representation that will be built.
    #[arg(long, global = true, env = "MPC_DIRAC_DIM_CAP", default_value_t = DEFAULT_DIM_CAP)]
    pub dim_cap: usize,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, env = "MPC_DIRAC_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Siegel, group-law, lift and Clifford suites.
    MpcVerify,
    /// Spectrum of P = 2[D', D''] and kernels of D', D'', D for every block with r <= r_max.
    Dirac(DiracArgs),
}

#[derive(Debug, Clone, Args)]
pub struct DiracArgs {
    #[arg(long, env = "MPC_DIRAC_N", default_value_t = 2)]
    pub n: usize,
    /// Character index of the twisting character.
    #[arg(long, env = "MPC_DIRAC_K", default_value_t = 0, allow_negative_numbers = true)]
    pub k: i64,
    #[arg(long = "r-max", env = "MPC_DIRAC_R_MAX", default_value_t = 3)]
    pub r_max: i64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.hbar.is_finite() && self.hbar > 0.0) {
            return Err(CliError::Config(format!("--hbar must be positive, got {}", self.hbar)));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(CliError::Config(format!("--tol must be positive, got {}", self.tol)));
        }
        if self.dim_cap == 0 {
            return Err(CliError::Config("--dim-cap must be positive".into()));
        }
        Ok(())
    }

    /// The stricter of a built-in threshold and `--tol`.
    pub fn threshold(&self, builtin: f64) -> f64 {
        builtin.min(self.tol)
    }
}

impl DiracArgs {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(1..=3).contains(&self.n) {
            return Err(CliError::Config(format!("--n must be 1, 2 or 3, got {}", self.n)));
        }
        if self.r_max < 0 {
            return Err(CliError::Config(format!("--r-max must be non-negative, got {}", self.r_max)));
        }
        Ok(())
    }
}
