use mpc_core::dirac::{analyze_spec, BlockAnalysis, SpinorBlockSpec, KERNEL_THRESHOLD};
use mpc_core::dirac::{KernelSummary, SpectrumRow};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{DiracArgs, RunConfig};
use crate::error::CliError;

pub const SCHEMA: &str = "mpc-dirac.spectrum/1";

const SPECTRUM_THRESHOLD: f64 = 1e-8;

pub const SIGN_CONVENTION: &str = "Casimir constants use <k,k'> = -2(sum k_j k'_j - (sum k_j)(sum k'_j)/(n+1)) \
literally (B(X,Y) = -Tr(XY)/2), so c_lambda = <lambda, 2 rho + lambda> is negative; \
the matrix Casimir of the constructed representation agrees with this sign";

#[derive(Debug, Clone, Serialize)]
pub struct DiracMetadata {
    pub n: usize,
    pub k: i64,
    pub r_max: i64,
    pub hbar: f64,
    pub tol: f64,
    pub seed: u64,
    pub dim_cap: usize,
    /// Relative tolerance applied to `residual`.
    pub spectrum_threshold: f64,
    /// Relative singular-value threshold for every kernel.
    pub rank_threshold: f64,
    pub sign_convention: &'static str,
    pub closed_form: &'static str,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct KerDims {
    pub d_prime: usize,
    pub d_double_prime: usize,
    pub d: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiracRow {
    pub n: usize,
    pub k: i64,
    pub r: i64,
    pub b: i64,
    pub l: i64,
    pub dim_v: usize,
    pub matrix_eigenvalue: f64,
    pub matrix_eigenvalue_im: f64,
    pub closed_form: f64,
    pub residual: f64,
    pub ker_dims: KerDims,
    /// Kernel statements for the whole block: boundary kernels, bijectivity, parity.
    pub kernel_checks: bool,
    /// Degreewise recursion agrees with the direct null space for every truncation.
    pub recursion_matches: bool,
    pub adjoint_similar: bool,
    pub pass: bool,
}

/// The same row with the kernel dimensions spread into columns.
#[derive(Debug, Clone, Serialize)]
pub struct FlatDiracRow {
    pub n: usize,
    pub k: i64,
    pub r: i64,
    pub b: i64,
    pub l: i64,
    pub dim_v: usize,
    pub matrix_eigenvalue: f64,
    pub matrix_eigenvalue_im: f64,
    pub closed_form: f64,
    pub residual: f64,
    pub ker_d_prime: usize,
    pub ker_d_double_prime: usize,
    pub ker_d: usize,
    pub kernel_checks: bool,
    pub recursion_matches: bool,
    pub adjoint_similar: bool,
    pub pass: bool,
}

impl From<&DiracRow> for FlatDiracRow {
    fn from(r: &DiracRow) -> Self {
        Self {
            n: r.n,
            k: r.k,
            r: r.r,
            b: r.b,
            l: r.l,
            dim_v: r.dim_v,
            matrix_eigenvalue: r.matrix_eigenvalue,
            matrix_eigenvalue_im: r.matrix_eigenvalue_im,
            closed_form: r.closed_form,
            residual: r.residual,
            ker_d_prime: r.ker_dims.d_prime,
            ker_d_double_prime: r.ker_dims.d_double_prime,
            ker_d: r.ker_dims.d,
            kernel_checks: r.kernel_checks,
            recursion_matches: r.recursion_matches,
            adjoint_similar: r.adjoint_similar,
            pass: r.pass,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DiracReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub metadata: DiracMetadata,
    pub rows: Vec<DiracRow>,
    pub pass: bool,
}

fn row(spectrum: &SpectrumRow, kernel: &KernelSummary, threshold: f64) -> DiracRow {
    let kernel_checks = kernel.boundary_kernels_ok && kernel.intermediate_bijective && kernel.parity_ok;
    let recursion_matches = kernel.recursion_matches();
    let agrees = spectrum.residual <= threshold;
    DiracRow {
        n: spectrum.n,
        k: spectrum.k,
        r: spectrum.r,
        b: spectrum.b,
        l: spectrum.l,
        dim_v: spectrum.dim_v,
        matrix_eigenvalue: spectrum.matrix_eigenvalue,
        matrix_eigenvalue_im: spectrum.matrix_eigenvalue_im,
        closed_form: spectrum.closed_form,
        residual: spectrum.residual,
        ker_dims: KerDims {
            d_prime: spectrum.ker_dims.d_prime,
            d_double_prime: spectrum.ker_dims.d_double_prime,
            d: spectrum.ker_dims.d,
        },
        kernel_checks,
        recursion_matches,
        adjoint_similar: kernel.adjoint_similar,
        pass: agrees && kernel_checks && recursion_matches,
    }
}

pub fn run(config: &RunConfig, args: &DiracArgs) -> Result<DiracReport, CliError> {
    let specs = SpinorBlockSpec::enumerate(args.n, args.k, args.r_max);
    let analyses: Vec<BlockAnalysis> = specs
        .par_iter()
        .map(|spec| analyze_spec(*spec, config.hbar, config.dim_cap))
        .collect::<Result<_, _>>()?;
    let threshold = config.threshold(SPECTRUM_THRESHOLD);
    let rows: Vec<DiracRow> = analyses
        .iter()
        .flat_map(|a| a.rows.iter().map(move |r| row(r, &a.kernel, threshold)))
        .collect();
    let pass = rows.iter().all(|r| r.pass);
    Ok(DiracReport {
        schema_version: SCHEMA,
        command: "dirac",
        metadata: DiracMetadata {
            n: args.n,
            k: args.k,
            r_max: args.r_max,
            hbar: config.hbar,
            tol: config.tol,
            seed: config.seed,
            dim_cap: config.dim_cap,
            spectrum_threshold: threshold,
            rank_threshold: KERNEL_THRESHOLD,
            sign_convention: SIGN_CONVENTION,
            closed_form: "(c_lambda + c_beta - 4 c_gamma)/hbar, beta = (2l+(n+1)/2, l, ..., l), gamma = beta - ((2k+n+1)/4) e_1",
        },
        rows,
        pass,
    })
}
