//! Per-block summaries consumed by the acceptance suite and the command line.

use alloc::vec::Vec;

use super::operators::SpinorModule;
use super::spec::SpinorBlockSpec;
use crate::error::Result;

/// Kernel dimensions of the operators on one block, counted in the field space
/// (multiplicity times `dim V_λ`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KernelDims {
    pub d_prime: usize,
    pub d_double_prime: usize,
    pub d: usize,
}

/// One eigenvalue of `P`, at polynomial degree `l`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpectrumRow {
    pub n: usize,
    pub k: i64,
    pub r: i64,
    pub b: i64,
    pub l: i64,
    pub dim_v: usize,
    pub matrix_eigenvalue: f64,
    pub matrix_eigenvalue_im: f64,
    pub closed_form: f64,
    /// `|p − c| / max(1, |c|)`.
    pub residual: f64,
    pub ker_dims: KernelDims,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KernelSummary {
    pub spec: SpinorBlockSpec,
    pub dim_v: usize,
    pub ker_prime_levels: Vec<i64>,
    pub ker_double_prime_levels: Vec<i64>,
    pub ker_multiplicity: usize,
    pub ker_dims: KernelDims,
    /// `ker D′` is the top level and `ker D″` the bottom level.
    pub boundary_kernels_ok: bool,
    pub intermediate_bijective: bool,
    /// `dim ker D` is one exactly when `r − b` is even.
    pub parity_ok: bool,
    pub recursion_dims: Vec<usize>,
    pub direct_dims: Vec<usize>,
    pub adjoint_similar: bool,
    pub commutator_residual: f64,
    pub off_diagonal_residual: f64,
    pub field_level_residual: f64,
    pub projection_residual: f64,
    pub boundary_residual: f64,
}

impl KernelSummary {
    pub fn recursion_matches(&self) -> bool {
        self.recursion_dims == self.direct_dims
    }

    /// Every exact kernel statement holds.
    pub fn all_exact_checks_pass(&self) -> bool {
        self.boundary_kernels_ok && self.intermediate_bijective && self.parity_ok && self.recursion_matches()
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BlockAnalysis {
    pub rows: Vec<SpectrumRow>,
    pub kernel: KernelSummary,
}

impl BlockAnalysis {
    pub fn max_residual(&self) -> f64 {
        self.rows.iter().map(|r| r.residual).fold(0.0, f64::max)
    }
}

/// Builds the block, its spectrum and all kernel data.
pub fn analyze_spec(spec: SpinorBlockSpec, hbar: f64, dim_cap: usize) -> Result<BlockAnalysis> {
    let module = SpinorModule::build(spec, hbar, dim_cap)?;
    let dim_v = module.dim_v();
    let prime = module.kernel_levels_prime();
    let double_prime = module.kernel_levels_double_prime();
    let multiplicity = module.kernel_multiplicity()?;
    let ker_dims = KernelDims {
        d_prime: prime.len() * dim_v,
        d_double_prime: double_prime.len() * dim_v,
        d: multiplicity * dim_v,
    };
    let count = spec.level_count();
    let mut recursion_dims = Vec::with_capacity(count);
    let mut direct_dims = Vec::with_capacity(count);
    for q in 0..count {
        recursion_dims.push(module.recursive_kernel_dim(q)?);
        direct_dims.push(module.direct_kernel_dim(q)?);
    }
    let kernel = KernelSummary {
        spec,
        dim_v,
        boundary_kernels_ok: prime == [spec.r] && double_prime == [spec.b],
        intermediate_bijective: module.intermediate_bijective(),
        parity_ok: (multiplicity == 1) == ((spec.r - spec.b) % 2 == 0) && multiplicity <= 1,
        ker_prime_levels: prime,
        ker_double_prime_levels: double_prime,
        ker_multiplicity: multiplicity,
        ker_dims,
        recursion_dims,
        direct_dims,
        adjoint_similar: module.is_adjoint_similar(1e-9),
        commutator_residual: module.commutator_residual(),
        off_diagonal_residual: module.off_diagonal_residual(),
        field_level_residual: module.field_level_residual(),
        projection_residual: module.projection_residual,
        boundary_residual: module.boundary_residual,
    };
    let rows = spec
        .levels()
        .zip(module.spectrum())
        .zip(module.closed_form())
        .map(|((l, p), c)| SpectrumRow {
            n: spec.n,
            k: spec.k,
            r: spec.r,
            b: spec.b,
            l,
            dim_v,
            matrix_eigenvalue: p.re,
            matrix_eigenvalue_im: p.im,
            closed_form: c,
            residual: (p - num_complex::Complex64::new(c, 0.0)).norm() / c.abs().max(1.0),
            ker_dims,
        })
        .collect();
    Ok(BlockAnalysis { rows, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su_rep::DEFAULT_DIM_CAP;

    #[test]
    fn dim_27_block() {
        let a = analyze_spec(SpinorBlockSpec::new(2, 0, 2, 0).unwrap(), 1.0, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(a.rows.len(), 3);
        assert_eq!(a.kernel.ker_dims.d, 27);
        assert!(a.kernel.all_exact_checks_pass());
        assert!(a.max_residual() < 1e-8);
    }

    #[test]
    fn odd_block_has_trivial_kernel() {
        let a = analyze_spec(SpinorBlockSpec::new(2, 1, 3, 0).unwrap(), 1.0, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(a.kernel.ker_dims.d, 0);
        assert!(a.kernel.all_exact_checks_pass());
    }
}
