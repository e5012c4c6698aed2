//! The symplectic Dirac–Dolbeault operators `D′`, `D″` on one isotypic block.
//!
//! With the intertwiners `L_b, …, L_r` as basis, each operator becomes a
//! `(r−b+1)`-square matrix of scalars: `D′ L_l = μ′_l L_{l+1}` and
//! `D″ L_l = μ″_l L_{l−1}`.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_rational::Rational64;

use super::intertwiner::{normalized_intertwiner, solve_intertwiner};
use super::spec::{hom_dimension, SpinorBlockSpec};
use crate::error::{MpcError, Result};
use crate::fock::homogeneous_exponents;
use crate::linalg::{complexify, null_space_scaled, CMat, RMat, I};
use crate::su_rep::{branch_to_k, casimir_constant_unchecked, slcn_ktype, Algebra, Irrep, Weight};

/// Relative threshold for kernels and for deciding that a coefficient vanishes.
pub const KERNEL_THRESHOLD: f64 = 1e-7;
/// Largest allowed `‖X − μL‖ / max(1, ‖X‖)` when reading off a coefficient.
pub const PROJECTION_TOLERANCE: f64 = 1e-8;

/// `(1/ħ)(c_λ + c_β − 4c_γ)` with `β = (2l + (n+1)/2)ε₁ + l(ε₂ + … + εₙ)` and
/// `γ = β − ((2k+n+1)/4)ε₁`.
pub fn closed_form_eigenvalue(n: usize, k: i64, hw: &Weight, l: i64, hbar: f64) -> f64 {
    let mut beta = alloc::vec![Rational64::from_integer(l); n];
    beta[0] = Rational64::from_integer(2 * l) + Rational64::new(n as i64 + 1, 2);
    let mut gamma = beta.clone();
    gamma[0] -= Rational64::new(2 * k + n as i64 + 1, 4);
    let c_lambda = casimir_constant_unchecked(hw, Algebra::Full);
    let c_beta = casimir_constant_unchecked(&Weight::new(beta), Algebra::Isotropy);
    let c_gamma = casimir_constant_unchecked(&Weight::new(gamma), Algebra::Isotropy);
    let total = c_lambda + c_beta - Rational64::from_integer(4) * c_gamma;
    (*total.numer() as f64 / *total.denom() as f64) / hbar
}

/// `z_var ·` from degree `l` to `l + 1`, or `∂_var` from `l` to `l − 1`.
fn shift_matrix(n: usize, l: i64, var: usize, up: bool) -> RMat {
    let from = homogeneous_exponents(n, l as u32);
    let to_degree = if up { l + 1 } else { l - 1 };
    let to = homogeneous_exponents(n, to_degree as u32);
    let mut m = RMat::zeros(to.len(), from.len());
    for (j, e) in from.iter().enumerate() {
        let mut t = e.clone();
        let factor = if up {
            t[var] += 1;
            1.0
        } else {
            if e[var] == 0 {
                continue;
            }
            t[var] -= 1;
            f64::from(e[var])
        };
        let i = to.iter().position(|x| *x == t).expect("monomial of the target degree");
        m[(i, j)] = factor;
    }
    m
}

/// Both operator images of each level, kept for the recursion.
#[derive(Debug, Clone)]
struct LevelImages {
    /// `D′ L_l`, a `dim S^{l+1} × dim V_λ` matrix.
    raised: CMat,
    /// `D″ L_l`, a `dim S^{l−1} × dim V_λ` matrix (empty when `l = 0`).
    lowered: CMat,
}

/// Matrices of `D′`, `D″` and their combinations on one block.
#[derive(Debug, Clone)]
pub struct SpinorModule {
    spec: SpinorBlockSpec,
    hbar: f64,
    dim_v: usize,
    intertwiners: Vec<RMat>,
    to_zero: Vec<CMat>,
    from_zero: Vec<CMat>,
    images: Vec<LevelImages>,
    mu_raise: Vec<Complex64>,
    mu_lower: Vec<Complex64>,
    /// Largest projection residual met while reading off the coefficients.
    pub projection_residual: f64,
    /// Largest norm of an image that has to vanish (`D′` at the top, `D″` at the bottom).
    pub boundary_residual: f64,
}

impl SpinorModule {
    pub fn build(spec: SpinorBlockSpec, hbar: f64, dim_cap: usize) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(MpcError::InvalidSpec("hbar must be positive"));
        }
        let n = spec.n;
        let hw = spec.lambda();
        let irrep = Irrep::build_with_cap(&hw, dim_cap)?;
        let table = branch_to_k(&hw)?;
        let mut intertwiners = Vec::with_capacity(spec.level_count());
        // One level past each end confirms the block is complete.
        for l in spec.b - 1..=spec.r + 1 {
            let predicted = hom_dimension(n, spec.k, &hw, l);
            if l >= 0 && u8::from(table.contains(&slcn_ktype(n, l, spec.k))) != predicted {
                return Err(MpcError::OracleMismatch("branching disagrees with the multiplicity prediction"));
            }
            if spec.levels().contains(&l) {
                if predicted != 1 {
                    return Err(MpcError::IncompleteBlocks { level: l as usize });
                }
                intertwiners.push(normalized_intertwiner(&irrep, spec.k, l)?);
            } else if solve_intertwiner(&irrep, spec.k, l)?.nullity() != usize::from(predicted) {
                return Err(MpcError::OracleMismatch("intertwiner nullity disagrees with the prediction"));
            }
        }

        let to_zero: Vec<CMat> = (1..=n).map(|a| complexify(irrep.generator(a, 0))).collect();
        let from_zero: Vec<CMat> = (1..=n).map(|a| complexify(irrep.generator(0, a))).collect();
        let images = spec
            .levels()
            .zip(&intertwiners)
            .map(|(l, lmat)| {
                let lc = complexify(lmat);
                LevelImages {
                    raised: raise_field(n, l, hbar, &lc, &to_zero),
                    lowered: lower_field(n, l, &lc, &from_zero),
                }
            })
            .collect();

        let mut module = Self {
            spec,
            hbar,
            dim_v: irrep.dim(),
            intertwiners,
            to_zero,
            from_zero,
            images,
            mu_raise: Vec::new(),
            mu_lower: Vec::new(),
            projection_residual: 0.0,
            boundary_residual: 0.0,
        };
        module.read_coefficients();
        if module.projection_residual > PROJECTION_TOLERANCE {
            return Err(MpcError::OracleMismatch("operator image leaves the intertwiner line"));
        }
        Ok(module)
    }

    fn read_coefficients(&mut self) {
        let count = self.spec.level_count();
        let mut raise = Vec::with_capacity(count);
        let mut lower = Vec::with_capacity(count);
        let mut projection = 0.0f64;
        let mut boundary = 0.0f64;
        let mut project = |x: &CMat, target: Option<&RMat>| -> Complex64 {
            match target {
                None => {
                    boundary = boundary.max(x.norm());
                    Complex64::new(0.0, 0.0)
                }
                Some(t) => {
                    let tc = complexify(t);
                    let mu = tc.dotc(x);
                    projection = projection.max((x - &tc * mu).norm() / x.norm().max(1.0));
                    mu
                }
            }
        };
        for idx in 0..count {
            let up = (idx + 1 < count).then(|| &self.intertwiners[idx + 1]);
            raise.push(project(&self.images[idx].raised, up));
            let down = (idx > 0).then(|| &self.intertwiners[idx - 1]);
            lower.push(project(&self.images[idx].lowered, down));
        }
        self.mu_raise = raise;
        self.mu_lower = lower;
        self.projection_residual = projection;
        self.boundary_residual = boundary;
    }

    pub fn spec(&self) -> &SpinorBlockSpec {
        &self.spec
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn intertwiner(&self, l: i64) -> Option<&RMat> {
        self.level_index(l).map(|i| &self.intertwiners[i])
    }

    fn level_index(&self, l: i64) -> Option<usize> {
        self.spec.levels().contains(&l).then(|| (l - self.spec.b) as usize)
    }

    /// `μ′_l` for `l = b..=r` (zero at the top).
    pub fn raising_coefficients(&self) -> &[Complex64] {
        &self.mu_raise
    }

    /// `μ″_l` for `l = b..=r` (zero at the bottom).
    pub fn lowering_coefficients(&self) -> &[Complex64] {
        &self.mu_lower
    }

    pub fn d_prime(&self) -> CMat {
        let c = self.spec.level_count();
        let mut m = CMat::zeros(c, c);
        for i in 0..c.saturating_sub(1) {
            m[(i + 1, i)] = self.mu_raise[i];
        }
        m
    }

    pub fn d_double_prime(&self) -> CMat {
        let c = self.spec.level_count();
        let mut m = CMat::zeros(c, c);
        for i in 1..c {
            m[(i - 1, i)] = self.mu_lower[i];
        }
        m
    }

    /// `D = D′ + D″`.
    pub fn dirac(&self) -> CMat {
        self.d_prime() + self.d_double_prime()
    }

    /// `D_J = −iD′ + iD″`.
    pub fn dirac_j(&self) -> CMat {
        self.d_prime() * (-I) + self.d_double_prime() * I
    }

    /// `P = 2(D′D″ − D″D′)`.
    pub fn second_order(&self) -> CMat {
        let dp = self.d_prime();
        let dpp = self.d_double_prime();
        (&dp * &dpp - &dpp * &dp) * Complex64::new(2.0, 0.0)
    }

    /// `‖i[D_J, D] − P‖`.
    pub fn commutator_residual(&self) -> f64 {
        let dj = self.dirac_j();
        let d = self.dirac();
        let lhs = (&dj * &d - &d * &dj) * I;
        (lhs - self.second_order()).norm()
    }

    /// Largest off-diagonal entry of `P`.
    pub fn off_diagonal_residual(&self) -> f64 {
        let p = self.second_order();
        let mut worst = 0.0f64;
        for i in 0..p.nrows() {
            for j in 0..p.ncols() {
                if i != j {
                    worst = worst.max(p[(i, j)].norm());
                }
            }
        }
        worst
    }

    /// Diagonal of `P`, one eigenvalue per level.
    pub fn spectrum(&self) -> Vec<Complex64> {
        let p = self.second_order();
        (0..p.nrows()).map(|i| p[(i, i)]).collect()
    }

    pub fn closed_form(&self) -> Vec<f64> {
        let hw = self.spec.lambda();
        self.spec
            .levels()
            .map(|l| closed_form_eigenvalue(self.spec.n, self.spec.k, &hw, l, self.hbar))
            .collect()
    }

    fn reference_scale(&self) -> f64 {
        self.mu_raise
            .iter()
            .chain(&self.mu_lower)
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Levels whose coefficient is below the kernel threshold.
    fn vanishing_levels(&self, coeffs: &[Complex64]) -> Vec<i64> {
        let scale = self.reference_scale();
        coeffs
            .iter()
            .enumerate()
            .filter(|(_, z)| z.norm() <= KERNEL_THRESHOLD * scale.max(f64::MIN_POSITIVE))
            .map(|(i, _)| self.spec.b + i as i64)
            .collect()
    }

    /// Levels spanning `ker D′`.
    pub fn kernel_levels_prime(&self) -> Vec<i64> {
        self.vanishing_levels(&self.mu_raise)
    }

    /// Levels spanning `ker D″`.
    pub fn kernel_levels_double_prime(&self) -> Vec<i64> {
        self.vanishing_levels(&self.mu_lower)
    }

    /// Multiplicity of `V_λ` in `ker D`.
    pub fn kernel_multiplicity(&self) -> Result<usize> {
        let ns = null_space_scaled(&self.dirac(), KERNEL_THRESHOLD, self.reference_scale());
        if let Some(ratio) = ns.gap.ambiguous_ratio() {
            return Err(MpcError::RankAmbiguous {
                ratio,
                threshold: KERNEL_THRESHOLD,
            });
        }
        Ok(ns.dim())
    }

    /// Raising maps on all non-top levels and lowering maps on all non-bottom
    /// levels are injective.
    pub fn intermediate_bijective(&self) -> bool {
        let c = self.spec.level_count();
        let top = self.kernel_levels_prime();
        let bottom = self.kernel_levels_double_prime();
        top == [self.spec.r] && bottom == [self.spec.b] && c == self.intertwiners.len()
    }

    /// `conj(μ′_l) / μ″_{l+1}`: `D″` is the adjoint of `D′` for the rescaled
    /// basis `t_l L_l` exactly when each ratio is a positive real `(t_{l+1}/t_l)²`.
    pub fn similarity_ratios(&self) -> Vec<Complex64> {
        let c = self.spec.level_count();
        (0..c.saturating_sub(1))
            .map(|i| self.mu_raise[i].conj() / self.mu_lower[i + 1])
            .collect()
    }

    pub fn is_adjoint_similar(&self, tol: f64) -> bool {
        self.similarity_ratios()
            .iter()
            .all(|z| z.re > 0.0 && z.im.abs() <= tol * z.re.max(1.0))
    }

    /// Dimension of the solutions of `Dψ = 0` with `ψ` supported on levels
    /// `b..=b+q`, computed one polynomial degree at a time from the top.
    pub fn recursive_kernel_dim(&self, q: usize) -> Result<usize> {
        let c = self.spec.level_count();
        let q = q.min(c - 1);
        let b = self.spec.b;
        // Round-off images of boundary levels must not set the scale.
        let generator_scale = self.to_zero.iter().map(|g| g.norm()).fold(0.0, f64::max) / self.hbar.min(1.0);
        let scale = self
            .images
            .iter()
            .flat_map(|im| [im.raised.norm(), im.lowered.norm()])
            .fold(generator_scale, f64::max);
        let mut s = CMat::identity(q + 1, q + 1);
        let mut target = b + q as i64 + 1;
        while target >= b - 1 && target >= 0 {
            let rows = homogeneous_exponents(self.spec.n, target as u32).len() * self.dim_v;
            let mut e = CMat::zeros(rows, q + 1);
            for col in 0..=q {
                let l = b + col as i64;
                let image = if l + 1 == target {
                    Some(&self.images[col].raised)
                } else if l - 1 == target {
                    Some(&self.images[col].lowered)
                } else {
                    None
                };
                if let Some(x) = image {
                    e.column_mut(col).copy_from_slice(x.as_slice());
                }
            }
            let restricted = e * &s;
            let ns = null_space_scaled(&restricted, KERNEL_THRESHOLD, scale);
            if let Some(ratio) = ns.gap.ambiguous_ratio() {
                return Err(MpcError::RankAmbiguous {
                    ratio,
                    threshold: KERNEL_THRESHOLD,
                });
            }
            s = &s * ns.basis;
            if s.ncols() == 0 {
                return Ok(0);
            }
            target -= 1;
        }
        Ok(s.ncols())
    }

    /// `dim ker` of the first `q + 1` columns of the matrix of `D`.
    pub fn direct_kernel_dim(&self, q: usize) -> Result<usize> {
        let c = self.spec.level_count();
        let q = q.min(c - 1);
        let d = self.dirac();
        let ns = null_space_scaled(&d.columns(0, q + 1).into_owned(), KERNEL_THRESHOLD, self.reference_scale());
        if let Some(ratio) = ns.gap.ambiguous_ratio() {
            return Err(MpcError::RankAmbiguous {
                ratio,
                threshold: KERNEL_THRESHOLD,
            });
        }
        Ok(ns.dim())
    }

    /// Largest `‖P L_l − p_l L_l‖` with `P L_l` evaluated on the field
    /// matrices themselves rather than through the scalar coefficients.
    pub fn field_level_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        let p = self.spectrum();
        for (idx, l) in self.spec.levels().enumerate() {
            let lc = complexify(&self.intertwiners[idx]);
            let im = &self.images[idx];
            let down_up = if l > 0 { self.raise(&im.lowered, l - 1) } else { CMat::zeros(lc.nrows(), lc.ncols()) };
            let up_down = self.lower(&im.raised, l + 1);
            let field = (down_up - up_down) * Complex64::new(2.0, 0.0);
            worst = worst.max((field - &lc * p[idx]).norm());
        }
        worst
    }

    /// `D′` on a field `X: V_λ → S^l`.
    fn raise(&self, x: &CMat, l: i64) -> CMat {
        raise_field(self.spec.n, l, self.hbar, x, &self.to_zero)
    }

    /// `D″` on a field `X: V_λ → S^l`.
    fn lower(&self, x: &CMat, l: i64) -> CMat {
        lower_field(self.spec.n, l, x, &self.from_zero)
    }
}

/// `Σ_a 2i (z_a/2ħ) X π(E_{a0})`.
fn raise_field(n: usize, l: i64, hbar: f64, x: &CMat, to_zero: &[CMat]) -> CMat {
    let s_up = homogeneous_exponents(n, (l + 1) as u32).len();
    let mut out = CMat::zeros(s_up, x.ncols());
    for var in 0..n {
        let z = complexify(&shift_matrix(n, l, var, true)) * Complex64::new(1.0 / (2.0 * hbar), 0.0);
        out += (z * x * &to_zero[var]) * (I * 2.0);
    }
    out
}

/// `Σ_a (−2i) ∂_a X π(E_{0a})`; empty when `l = 0`.
fn lower_field(n: usize, l: i64, x: &CMat, from_zero: &[CMat]) -> CMat {
    if l == 0 {
        return CMat::zeros(0, x.ncols());
    }
    let s_down = homogeneous_exponents(n, (l - 1) as u32).len();
    let mut out = CMat::zeros(s_down, x.ncols());
    for var in 0..n {
        let d = complexify(&shift_matrix(n, l, var, false));
        out += (d * x * &from_zero[var]) * (I * -2.0);
    }
    out
}
