//! Homomorphic sections of `σ: Mpc → Sp` over the unitary group, pseudo-unitary
//! groups and stabilisers of real and complex Lagrangian subspaces, plus a
//! validator for arbitrary candidate λ-functions.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{MpcError, Result};
use crate::linalg::{self, math, CMat, RMat};
use crate::mpc::{cocycle_log, MpcElement};
use crate::sampling;
use crate::symplectic::{log_det_gl_plus, standard_j, standard_omega, SymplecticSpace};

fn relative(residual: f64, scale: f64) -> f64 {
    residual / scale.max(1.0)
}

/// `(g, 1)` for `g` commuting with `j`.
pub fn lift_unitary(space: &Arc<SymplecticSpace>, g: &RMat) -> Result<MpcElement> {
    space.check_symplectic(g)?;
    let residual = space.complex_linear_residual(g);
    if residual > space.tol() {
        return Err(MpcError::NotUnitary { residual });
    }
    MpcElement::new(Arc::clone(space), g.clone(), Complex64::new(1.0, 0.0))
}

/// A compatible complex structure `j̃` commuting with `j`, possibly indefinite,
/// with the splitting `V = V₊ ⊕ V₋` into the `±1` eigenspaces of `−j j̃`.
#[derive(Debug, Clone)]
pub struct PseudoUnitaryStructure {
    space: Arc<SymplecticSpace>,
    jtilde: RMat,
    v_plus: CMat,
    v_minus: CMat,
}

impl PseudoUnitaryStructure {
    pub fn new(space: Arc<SymplecticSpace>, jtilde: RMat) -> Result<Self> {
        let dim = space.dim();
        if jtilde.nrows() != dim || jtilde.ncols() != dim {
            return Err(MpcError::DimensionMismatch {
                expected: dim,
                found: jtilde.nrows(),
            });
        }
        let id = RMat::identity(dim, dim);
        let tol = space.tol();
        if relative((&jtilde * &jtilde + &id).norm(), 1.0) > tol {
            return Err(MpcError::InvalidStructure("square is not -1"));
        }
        if space.symplectic_residual(&jtilde) > tol {
            return Err(MpcError::InvalidStructure("not symplectic"));
        }
        if space.complex_linear_residual(&jtilde) > tol {
            return Err(MpcError::InvalidStructure("does not commute with j"));
        }
        let involution = -(space.j() * &jtilde);
        let t = space.to_complex_unchecked(&involution);
        let herm = (&t + t.adjoint()) * Complex64::new(0.5, 0.0);
        if (&t - &herm).norm() > tol {
            return Err(MpcError::InvalidStructure("eigenspaces are not orthogonal"));
        }
        let eig = herm.symmetric_eigen();
        let n = space.dim_half();
        let plus: Vec<usize> = (0..n).filter(|&i| eig.eigenvalues[i] > 0.0).collect();
        let minus: Vec<usize> = (0..n).filter(|&i| eig.eigenvalues[i] <= 0.0).collect();
        let v_plus = eig.eigenvectors.select_columns(plus.iter());
        let v_minus = eig.eigenvectors.select_columns(minus.iter());
        Ok(Self {
            space,
            jtilde,
            v_plus,
            v_minus,
        })
    }

    /// `j̃ = j` on the first `p` complex directions and `−j` on the rest.
    pub fn with_signature(space: Arc<SymplecticSpace>, p: usize) -> Result<Self> {
        let n = space.dim_half();
        if p > n {
            return Err(MpcError::DimensionOutOfRange { dim: p, half: n });
        }
        let diag = CMat::from_fn(n, n, |a, b| match (a == b, a < p) {
            (true, true) => linalg::I,
            (true, false) => -linalg::I,
            _ => Complex64::new(0.0, 0.0),
        });
        let jtilde = space.from_complex(&diag);
        Self::new(space, jtilde)
    }

    pub fn space(&self) -> &Arc<SymplecticSpace> {
        &self.space
    }

    pub fn jtilde(&self) -> &RMat {
        &self.jtilde
    }

    /// Orthonormal complex basis of `V₊` (where `j̃ = j`).
    pub fn v_plus(&self) -> &CMat {
        &self.v_plus
    }

    /// Orthonormal complex basis of `V₋` (where `j̃ = −j`).
    pub fn v_minus(&self) -> &CMat {
        &self.v_minus
    }

    pub fn check_member(&self, g: &RMat) -> Result<()> {
        self.space.check_symplectic(g)?;
        let residual = relative((g * &self.jtilde - &self.jtilde * g).norm(), g.norm());
        if residual > self.space.tol() {
            return Err(MpcError::NotPseudoUnitary { residual });
        }
        Ok(())
    }

    /// `Det_j` of the restriction of `C_g` to `V₋`.
    pub fn det_c_minus(&self, g: &RMat) -> Result<Complex64> {
        self.check_member(g)?;
        let c = self.space.cz_unchecked(g).c;
        let f = &self.v_minus;
        if f.ncols() == 0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let image = &c * f;
        let restricted = f.adjoint() * &image;
        let residual = relative((image - f * &restricted).norm(), c.norm());
        if residual > self.space.tol() {
            return Err(MpcError::EigenspaceMismatch { residual });
        }
        Ok(restricted.determinant())
    }

    /// `λ = (Det_j C_g⁻)⁻¹`.
    pub fn lambda(&self, g: &RMat) -> Result<Complex64> {
        Ok(self.det_c_minus(g)?.inv())
    }

    pub fn lift(&self, g: &RMat) -> Result<MpcElement> {
        MpcElement::new(Arc::clone(&self.space), g.clone(), self.lambda(g)?)
    }

    /// `X = ½(A − j̃ A j̃)` for random `A ∈ sp`: commutes with `j̃`.
    pub fn random_algebra<R: Rng + ?Sized>(&self, rng: &mut R, bound: f64) -> RMat {
        let a = sampling::random_sp_algebra(&self.space, rng, 1.0);
        let x = (&a - &self.jtilde * &a * &self.jtilde) * 0.5;
        sampling::scale_to(rng, x, bound)
    }
}

/// A real Lagrangian `F` with a `G_j`-orthonormal basis; `V = F ⊕ jF`.
#[derive(Debug, Clone)]
pub struct LagrangianFrame {
    space: Arc<SymplecticSpace>,
    basis: RMat,
    adapted: RMat,
    adapted_inv: RMat,
}

/// `g` written on `F ⊕ jF`: `A = g|_F` and the symmetric shear `S = A⁻¹B`.
#[derive(Debug, Clone)]
pub struct LagrangianBlocks {
    pub a: RMat,
    pub s: RMat,
}

impl LagrangianFrame {
    pub fn new(space: Arc<SymplecticSpace>, f_basis: &RMat) -> Result<Self> {
        let n = space.dim_half();
        if f_basis.nrows() != space.dim() || f_basis.ncols() != n {
            return Err(MpcError::DimensionMismatch {
                expected: n,
                found: f_basis.ncols(),
            });
        }
        let iso = f_basis.transpose() * space.omega() * f_basis;
        if relative(iso.norm(), f_basis.norm_squared()) > space.tol() {
            return Err(MpcError::InvalidStructure("basis is not isotropic"));
        }
        let metric = space.metric();
        let mut cols: Vec<linalg::RVec> = Vec::with_capacity(n);
        for k in 0..n {
            let mut v = f_basis.column(k).into_owned();
            for _ in 0..2 {
                for u in &cols {
                    let c = u.dot(&(&metric * &v));
                    v -= u * c;
                }
            }
            let norm = math::sqrt(v.dot(&(&metric * &v)).max(0.0));
            if norm < 1e-8 {
                return Err(MpcError::InvalidStructure("basis is degenerate"));
            }
            cols.push(v / norm);
        }
        let basis = RMat::from_columns(&cols);
        let mut adapted = RMat::zeros(2 * n, 2 * n);
        adapted.view_mut((0, 0), (2 * n, n)).copy_from(&basis);
        adapted
            .view_mut((0, n), (2 * n, n))
            .copy_from(&(space.j() * &basis));
        let adapted_inv = adapted.clone().try_inverse().ok_or(MpcError::Singular)?;
        Ok(Self {
            space,
            basis,
            adapted,
            adapted_inv,
        })
    }

    /// `F` spanned by the first `n` vectors of the space's unitary frame.
    pub fn standard(space: Arc<SymplecticSpace>) -> Result<Self> {
        let n = space.dim_half();
        let basis = space.frame().columns(0, n).into_owned();
        Self::new(space, &basis)
    }

    pub fn space(&self) -> &Arc<SymplecticSpace> {
        &self.space
    }

    pub fn f_basis(&self) -> &RMat {
        &self.basis
    }

    pub fn blocks(&self, g: &RMat) -> Result<LagrangianBlocks> {
        self.space.check_symplectic(g)?;
        let n = self.space.dim_half();
        let bar = &self.adapted_inv * g * &self.adapted;
        let lower = bar.view((n, 0), (n, n)).norm();
        let residual = relative(lower, bar.norm());
        if residual > self.space.tol() {
            return Err(MpcError::NotStabilizing { residual });
        }
        let a = bar.view((0, 0), (n, n)).into_owned();
        let b = bar.view((0, n), (n, n)).into_owned();
        let a_inv = a.clone().try_inverse().ok_or(MpcError::Singular)?;
        let s = &a_inv * b;
        let residual = relative((&s - s.transpose()).norm(), s.norm());
        if residual > self.space.tol() {
            return Err(MpcError::NonSymmetricS { residual });
        }
        Ok(LagrangianBlocks { a, s })
    }

    /// `|Det A|^{−½} e^{−½ a_F(½(I + (AᵀA)⁻¹ − iS))}`.
    pub fn lambda(&self, g: &RMat) -> Result<Complex64> {
        let LagrangianBlocks { a, s } = self.blocks(g)?;
        let n = a.nrows();
        let ata_inv = (a.transpose() * &a).try_inverse().ok_or(MpcError::Singular)?;
        let re = (RMat::identity(n, n) + ata_inv) * 0.5;
        let m = CMat::from_fn(n, n, |i, k| Complex64::new(re[(i, k)], -0.5 * s[(i, k)]));
        let log = log_det_gl_plus(&m)?;
        let det_a = a.determinant();
        Ok((-0.5 * log).exp() / math::sqrt(det_a.abs()))
    }

    pub fn lift(&self, g: &RMat) -> Result<MpcElement> {
        MpcElement::new(Arc::clone(&self.space), g.clone(), self.lambda(g)?)
    }

    /// `[[X, Y], [0, −Xᵀ]]` on `F ⊕ jF` with `Y` symmetric.
    pub fn random_algebra<R: Rng + ?Sized>(&self, rng: &mut R, bound: f64) -> RMat {
        let n = self.space.dim_half();
        let x = RMat::from_fn(n, n, |_, _| sampling::uniform(rng));
        let y = sampling::random_symmetric(rng, n);
        let mut bar = RMat::zeros(2 * n, 2 * n);
        bar.view_mut((0, 0), (n, n)).copy_from(&x);
        bar.view_mut((0, n), (n, n)).copy_from(&y);
        bar.view_mut((n, n), (n, n)).copy_from(&(-x.transpose()));
        let a = &self.adapted * bar * &self.adapted_inv;
        sampling::scale_to(rng, a, bound)
    }

    /// `A = diag(−1, 1, …, 1)` on `F`, acting as `A^{−T}` on `jF`: a stabiliser
    /// element off the identity component.
    pub fn reflection(&self) -> RMat {
        let n = self.space.dim_half();
        let mut bar = RMat::identity(2 * n, 2 * n);
        bar[(0, 0)] = -1.0;
        bar[(n, n)] = -1.0;
        &self.adapted * bar * &self.adapted_inv
    }
}

/// A complex Lagrangian `F` given by a real isotropic `D` (the first `d` frame
/// vectors) and a compatible complex structure `j̃′` on `Q = (D + jD)^⊥`
/// commuting with `j′ = j|_Q`.
#[derive(Debug, Clone)]
pub struct ComplexLagrangianData {
    space: Arc<SymplecticSpace>,
    d: usize,
    reduced: PseudoUnitaryStructure,
    adapted: RMat,
    adapted_inv: RMat,
}

/// The block data of `g` on `D ⊕ jD ⊕ Q`.
#[derive(Debug, Clone)]
pub struct IsotropicBlocks {
    /// `a(g) = g|_D`.
    pub a: RMat,
    /// `s(g)`, symmetric on `D`.
    pub s: RMat,
    /// `e(g): D → Q`.
    pub e: RMat,
    /// `e(g)*: Q → D` with `G_j(e*w, v) = Ω(w, e v)`.
    pub e_star: RMat,
    /// `b(g)`: the induced map on `Q ≅ D^⊥/D`.
    pub b: RMat,
}

impl ComplexLagrangianData {
    /// `jtilde_prime` is given in the standard coordinates of `Q`.
    pub fn new(space: Arc<SymplecticSpace>, d: usize, jtilde_prime: RMat) -> Result<Self> {
        let n = space.dim_half();
        if d == 0 || d >= n {
            return Err(MpcError::DimensionOutOfRange { dim: d, half: n });
        }
        let m = n - d;
        let q_space = Arc::new(SymplecticSpace::standard(m, space.hbar())?.with_tolerance(space.tol()));
        let reduced = PseudoUnitaryStructure::new(q_space, jtilde_prime)?;
        let frame = space.frame();
        let order: Vec<usize> = (0..d)
            .chain(n..n + d)
            .chain(d..n)
            .chain(n + d..2 * n)
            .collect();
        let adapted = frame.select_columns(order.iter());
        let adapted_inv = adapted.clone().try_inverse().ok_or(MpcError::Singular)?;
        Ok(Self {
            space,
            d,
            reduced,
            adapted,
            adapted_inv,
        })
    }

    /// `j̃′ = ± j′`.
    pub fn with_sign(space: Arc<SymplecticSpace>, d: usize, positive: bool) -> Result<Self> {
        let m = space.dim_half().saturating_sub(d);
        let j = standard_j(m);
        Self::new(space, d, if positive { j } else { -j })
    }

    pub fn space(&self) -> &Arc<SymplecticSpace> {
        &self.space
    }

    pub fn isotropic_dim(&self) -> usize {
        self.d
    }

    pub fn d_basis(&self) -> RMat {
        self.adapted.columns(0, self.d).into_owned()
    }

    pub fn q_basis(&self) -> RMat {
        let n = self.space.dim_half();
        self.adapted.columns(2 * self.d, 2 * (n - self.d)).into_owned()
    }

    pub fn jtilde_prime(&self) -> &RMat {
        self.reduced.jtilde()
    }

    /// `g` in the adapted basis `D, jD, Q`.
    pub fn adapted_matrix(&self, g: &RMat) -> RMat {
        &self.adapted_inv * g * &self.adapted
    }

    pub fn blocks(&self, g: &RMat) -> Result<IsotropicBlocks> {
        self.space.check_symplectic(g)?;
        let d = self.d;
        let q = self.space.dim() - 2 * d;
        let bar = self.adapted_matrix(g);
        let scale = bar.norm();
        let block = |r0: usize, c0: usize, rows: usize, cols: usize| bar.view((r0, c0), (rows, cols)).into_owned();
        let (dd, jd, qq) = (0, d, 2 * d);
        let stab = block(jd, dd, d, d).norm() + block(qq, dd, q, d).norm() + block(jd, qq, d, q).norm();
        let residual = relative(stab, scale);
        if residual > self.space.tol() {
            return Err(MpcError::NotStabilizing { residual });
        }
        let a = block(dd, dd, d, d);
        let a_inv = a.clone().try_inverse().ok_or(MpcError::Singular)?;
        let residual = relative((block(jd, jd, d, d) - a_inv.transpose()).norm(), scale);
        if residual > self.space.tol() {
            return Err(MpcError::NotStabilizing { residual });
        }
        let b = block(qq, qq, q, q);
        let b_inv = b.clone().try_inverse().ok_or(MpcError::Singular)?;
        let e = &b_inv * block(qq, jd, q, d);
        let e_star = -(e.transpose() * standard_omega(q / 2));
        let residual = relative((block(dd, qq, d, q) + &a * &e_star).norm(), scale);
        if residual > self.space.tol() {
            return Err(MpcError::NotStabilizing { residual });
        }
        let s = &a_inv * block(dd, jd, d, d) + &e_star * &e * 0.5;
        let residual = relative((&s - s.transpose()).norm(), s.norm());
        if residual > self.space.tol() {
            return Err(MpcError::NonSymmetricS { residual });
        }
        self.reduced.check_member(&b).map_err(|err| match err {
            MpcError::NotPseudoUnitary { residual } => MpcError::NotStabilizing { residual },
            other => other,
        })?;
        Ok(IsotropicBlocks { a, s, e, e_star, b })
    }

    /// The matrix on `D^C` whose determinant is `δ_D(g)²`.
    pub fn delta_argument(&self, blocks: &IsotropicBlocks) -> Result<CMat> {
        let IsotropicBlocks { a, s, e, e_star, b } = blocks;
        let d = a.nrows();
        let q = b.nrows();
        let jq = standard_j(q / 2);
        let jbj = &jq * b * &jq;
        let c = (b - &jbj) * 0.5;
        let dz = (b + &jbj) * 0.5;
        let z = c.try_inverse().ok_or(MpcError::Singular)? * dz;
        let ata_inv = (a.transpose() * a).try_inverse().ok_or(MpcError::Singular)?;
        let re = (RMat::identity(d, d) + ata_inv) * 0.5
            - e_star * &jq * e * 0.25
            - e_star * &jq * &z * e * 0.25;
        let im = -(s * 0.5) - e_star * &z * e * 0.25;
        let m = CMat::from_fn(d, d, |i, k| Complex64::new(re[(i, k)], im[(i, k)]));
        let min_eigenvalue = linalg::min_hermitean_eigenvalue(&m);
        if min_eigenvalue <= 0.0 {
            return Err(MpcError::NotInGLPlus { min_eigenvalue });
        }
        Ok(m)
    }

    /// Smooth square root `δ_D(g)` with `δ_D(I) = 1`.
    pub fn delta(&self, g: &RMat) -> Result<Complex64> {
        let blocks = self.blocks(g)?;
        let m = self.delta_argument(&blocks)?;
        Ok((0.5 * log_det_gl_plus(&m)?).exp())
    }

    /// `[|Det a|^{½} Det_{j′}(C′⁻_b) δ]⁻¹`.
    pub fn lambda(&self, g: &RMat) -> Result<Complex64> {
        let blocks = self.blocks(g)?;
        let m = self.delta_argument(&blocks)?;
        let delta = (0.5 * log_det_gl_plus(&m)?).exp();
        let det_a = blocks.a.determinant();
        let det_minus = self.reduced.det_c_minus(&blocks.b)?;
        Ok((math::sqrt(det_a.abs()) * det_minus * delta).inv())
    }

    pub fn lift(&self, g: &RMat) -> Result<MpcElement> {
        MpcElement::new(Arc::clone(&self.space), g.clone(), self.lambda(g)?)
    }

    /// Random element of the stabiliser's Lie algebra, built as `Ω⁻¹S` in the
    /// adapted basis with the zero pattern forced by `g(D) ⊂ D` and a `Q`-block
    /// commuting with `j′` and `j̃′`.
    pub fn random_algebra<R: Rng + ?Sized>(&self, rng: &mut R, bound: f64) -> RMat {
        let d = self.d;
        let q = self.space.dim() - 2 * d;
        let dim = 2 * d + q;
        let mut sym = RMat::zeros(dim, dim);
        let set = |sym: &mut RMat, i: usize, k: usize, x: f64| {
            sym[(i, k)] = x;
            sym[(k, i)] = x;
        };
        for i in 0..d {
            for k in 0..d {
                set(&mut sym, d + i, k, sampling::uniform(rng));
            }
            for k in i..d {
                set(&mut sym, d + i, d + k, sampling::uniform(rng));
            }
            for k in 0..q {
                set(&mut sym, d + i, 2 * d + k, sampling::uniform(rng));
            }
        }
        let q_space = self.reduced.space();
        let y0 = sampling::random_u_algebra(q_space, rng, 1.0);
        let jt = self.reduced.jtilde();
        let y = (&y0 - jt * &y0 * jt) * 0.5;
        let s_qq = q_space.omega() * y;
        sym.view_mut((2 * d, 2 * d), (q, q)).copy_from(&s_qq);
        let mut omega_bar = RMat::zeros(dim, dim);
        for i in 0..d {
            omega_bar[(i, d + i)] = 1.0;
            omega_bar[(d + i, i)] = -1.0;
        }
        omega_bar
            .view_mut((2 * d, 2 * d), (q, q))
            .copy_from(&standard_omega(q / 2));
        let x_bar = omega_bar.try_inverse().expect("standard form is invertible") * sym;
        let x = &self.adapted * x_bar * &self.adapted_inv;
        sampling::scale_to(rng, x, bound)
    }

    /// `−1` on `D + jD` (first direction), identity elsewhere: unitary, with `Det a < 0`.
    pub fn reflection(&self) -> RMat {
        let dim = self.space.dim();
        let mut bar = RMat::identity(dim, dim);
        bar[(0, 0)] = -1.0;
        bar[(self.d, self.d)] = -1.0;
        &self.adapted * bar * &self.adapted_inv
    }
}

/// Worst residuals of the lift criteria over a sample set.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LiftReport {
    pub pairs: usize,
    /// `max |f(g₁g₂) − f(g₁)f(g₂)e^{−½a(1−Z_{g₁}Z_{g₂⁻¹})}| / |f(g₁g₂)|`.
    pub max_f1: f64,
    /// `max | |f(g)² Det_j C_g| − 1 |`.
    pub max_f2: f64,
    /// Pairs where `f` or the cocycle could not be evaluated.
    pub errors: usize,
}

impl LiftReport {
    pub fn passes(&self, tol_f1: f64, tol_f2: f64) -> bool {
        self.errors == 0 && self.max_f1 < tol_f1 && self.max_f2 < tol_f2
    }
}

/// Evaluates both lift criteria for `f` on every pair; never fails.
pub fn verify_lift<F>(space: &SymplecticSpace, f: F, samples: &[(RMat, RMat)]) -> LiftReport
where
    F: Fn(&RMat) -> Result<Complex64>,
{
    let mut report = LiftReport {
        pairs: samples.len(),
        max_f1: 0.0,
        max_f2: 0.0,
        errors: 0,
    };
    let f2 = |g: &RMat, f: Complex64| -> f64 {
        let det = space.cz_unchecked(g).c.determinant();
        ((f * f * det).norm() - 1.0).abs()
    };
    for (g1, g2) in samples {
        let g12 = g1 * g2;
        let evaluated = (|| -> Result<(f64, f64)> {
            let (f1v, f2v, f12) = (f(g1)?, f(g2)?, f(&g12)?);
            let z1 = space.cz_unchecked(g1).z;
            let z2_inv = space.cz_unchecked(&space.symplectic_inverse(g2)).z;
            let cocycle = (-0.5 * cocycle_log(&z1, &z2_inv)?).exp();
            let r1 = (f12 - f1v * f2v * cocycle).norm() / f12.norm().max(f64::MIN_POSITIVE);
            let r2 = f2(g1, f1v).max(f2(g2, f2v)).max(f2(&g12, f12));
            Ok((r1, r2))
        })();
        match evaluated {
            Ok((r1, r2)) if r1.is_finite() && r2.is_finite() => {
                report.max_f1 = report.max_f1.max(r1);
                report.max_f2 = report.max_f2.max(r2);
            }
            _ => {
                report.errors += 1;
                report.max_f1 = f64::INFINITY;
            }
        }
    }
    report
}
