//! Real symplectic spaces with a positive compatible complex structure, the
//! `(C, Z)` coordinates of `Sp(V, Ω)` and the holomorphic log-determinant.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{MpcError, Result};
use crate::linalg::{self, math, CMat, CVec, RMat, RVec};

pub const DEFAULT_TOL: f64 = 1e-9;

/// `(V, Ω, j)` together with `ħ` and a unitary frame that puts `Ω` and `j`
/// into standard block form.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticSpace {
    n: usize,
    omega: RMat,
    j: RMat,
    hbar: f64,
    tol: f64,
    omega_inv: RMat,
    frame: RMat,
    frame_inv: RMat,
}

/// Standard `Ω` with `Ω(e_a, e_{n+a}) = 1`.
pub fn standard_omega(n: usize) -> RMat {
    let mut m = RMat::zeros(2 * n, 2 * n);
    for a in 0..n {
        m[(a, n + a)] = 1.0;
        m[(n + a, a)] = -1.0;
    }
    m
}

/// Standard `j` with `e_a ↦ e_{n+a}`, `e_{n+a} ↦ −e_a`.
pub fn standard_j(n: usize) -> RMat {
    let mut m = RMat::zeros(2 * n, 2 * n);
    for a in 0..n {
        m[(n + a, a)] = 1.0;
        m[(a, n + a)] = -1.0;
    }
    m
}

fn relative(residual: f64, scale: f64) -> f64 {
    residual / scale.max(1.0)
}

impl SymplecticSpace {
    /// The standard model on `R^{2n}`.
    pub fn standard(n: usize, hbar: f64) -> Result<Self> {
        if n == 0 {
            return Err(MpcError::InvalidSpace("dimension must be positive"));
        }
        Self::new(standard_omega(n), standard_j(n), hbar)
    }

    /// Validates `Ω` and `j` and builds a unitary frame by complex Gram–Schmidt.
    pub fn new(omega: RMat, j: RMat, hbar: f64) -> Result<Self> {
        let dim = omega.nrows();
        if dim == 0 || dim % 2 != 0 || omega.ncols() != dim {
            return Err(MpcError::InvalidSpace("omega must be square of even size"));
        }
        if j.nrows() != dim || j.ncols() != dim {
            return Err(MpcError::DimensionMismatch {
                expected: dim,
                found: j.nrows(),
            });
        }
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(MpcError::InvalidSpace("hbar must be positive"));
        }
        let tol = DEFAULT_TOL;
        let scale = omega.norm();
        if relative((&omega + omega.transpose()).norm(), scale) > tol {
            return Err(MpcError::InvalidSpace("omega is not antisymmetric"));
        }
        let omega_inv = omega
            .clone()
            .try_inverse()
            .ok_or(MpcError::InvalidSpace("omega is degenerate"))?;
        let id = RMat::identity(dim, dim);
        if relative((&j * &j + &id).norm(), 1.0) > tol {
            return Err(MpcError::InvalidSpace("j does not square to -1"));
        }
        if relative((j.transpose() * &omega * &j - &omega).norm(), scale) > tol {
            return Err(MpcError::InvalidSpace("j is not symplectic"));
        }
        let g = &omega * &j;
        if relative((&g - g.transpose()).norm(), g.norm()) > tol {
            return Err(MpcError::InvalidSpace("G_j is not symmetric"));
        }
        if g.clone().symmetric_eigenvalues().min() <= 0.0 {
            return Err(MpcError::InvalidSpace("G_j is not positive definite"));
        }
        let n = dim / 2;
        let mut space = Self {
            n,
            omega,
            j,
            hbar,
            tol,
            omega_inv,
            frame: id.clone(),
            frame_inv: id,
        };
        space.frame = space.unitary_frame()?;
        space.frame_inv = space
            .frame
            .clone()
            .try_inverse()
            .ok_or(MpcError::InvalidSpace("frame is singular"))?;
        Ok(space)
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    fn unitary_frame(&self) -> Result<RMat> {
        let dim = 2 * self.n;
        let mut fs: Vec<RVec> = Vec::with_capacity(self.n);
        for k in 0..dim {
            if fs.len() == self.n {
                break;
            }
            let mut v = RVec::zeros(dim);
            v[k] = 1.0;
            for _ in 0..2 {
                for f in &fs {
                    let c = self.hermitean_unchecked(&v, f);
                    v -= f * c.re + &self.j * f * c.im;
                }
            }
            let norm = math::sqrt(self.g_form(&v, &v).max(0.0));
            if norm > 1e-6 {
                fs.push(v / norm);
            }
        }
        if fs.len() != self.n {
            return Err(MpcError::InvalidSpace("could not build a unitary frame"));
        }
        let mut p = RMat::zeros(dim, dim);
        for (a, f) in fs.iter().enumerate() {
            p.set_column(a, f);
            p.set_column(self.n + a, &(&self.j * f));
        }
        Ok(p)
    }

    pub fn dim_half(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn omega(&self) -> &RMat {
        &self.omega
    }

    pub fn omega_inv(&self) -> &RMat {
        &self.omega_inv
    }

    pub fn j(&self) -> &RMat {
        &self.j
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Columns `f_1..f_n, j f_1..j f_n` of a unitary frame.
    pub fn frame(&self) -> &RMat {
        &self.frame
    }

    pub fn frame_inv(&self) -> &RMat {
        &self.frame_inv
    }

    /// Matrix of `G_j(v, w) = Ω(v, jw)`.
    pub fn metric(&self) -> RMat {
        &self.omega * &self.j
    }

    pub fn omega_form(&self, v: &RVec, w: &RVec) -> f64 {
        v.dot(&(&self.omega * w))
    }

    pub fn g_form(&self, v: &RVec, w: &RVec) -> f64 {
        v.dot(&(&self.omega * (&self.j * w)))
    }

    fn check_vec(&self, v: &RVec) -> Result<()> {
        if v.len() != self.dim() {
            return Err(MpcError::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    fn check_square(&self, m: &RMat) -> Result<()> {
        if m.nrows() != self.dim() || m.ncols() != self.dim() {
            return Err(MpcError::DimensionMismatch {
                expected: self.dim(),
                found: m.nrows(),
            });
        }
        Ok(())
    }

    fn hermitean_unchecked(&self, v: &RVec, w: &RVec) -> Complex64 {
        Complex64::new(self.g_form(v, w), -self.omega_form(v, w))
    }

    /// `⟨v, w⟩_j = Ω(v, jw) − iΩ(v, w)`.
    pub fn hermitean_form(&self, v: &RVec, w: &RVec) -> Result<Complex64> {
        self.check_vec(v)?;
        self.check_vec(w)?;
        Ok(self.hermitean_unchecked(v, w))
    }

    /// Complex coordinates `ζ_a = ⟨v, f_a⟩_j` in the unitary frame.
    pub fn coords(&self, v: &RVec) -> Result<CVec> {
        self.check_vec(v)?;
        let x = &self.frame_inv * v;
        let n = self.n;
        Ok(CVec::from_fn(n, |a, _| Complex64::new(x[a], x[n + a])))
    }

    /// Inverse of [`Self::coords`].
    pub fn vector(&self, z: &CVec) -> RVec {
        let n = self.n;
        let x = RVec::from_fn(2 * n, |i, _| if i < n { z[i].re } else { z[i - n].im });
        &self.frame * x
    }

    fn to_frame(&self, m: &RMat) -> RMat {
        &self.frame_inv * m * &self.frame
    }

    fn from_frame(&self, m: &RMat) -> RMat {
        &self.frame * m * &self.frame_inv
    }

    pub fn complex_linear_residual(&self, m: &RMat) -> f64 {
        relative((m * &self.j - &self.j * m).norm(), m.norm())
    }

    /// The `n × n` complex matrix of a `j`-linear operator.
    pub fn to_complex(&self, m: &RMat) -> Result<CMat> {
        self.check_square(m)?;
        let residual = self.complex_linear_residual(m);
        if residual > self.tol {
            return Err(MpcError::NotComplexLinear { residual });
        }
        Ok(self.to_complex_unchecked(m))
    }

    pub(crate) fn to_complex_unchecked(&self, m: &RMat) -> CMat {
        let s = self.to_frame(m);
        let n = self.n;
        CMat::from_fn(n, n, |a, b| {
            Complex64::new(
                0.5 * (s[(a, b)] + s[(n + a, n + b)]),
                0.5 * (s[(n + a, b)] - s[(a, n + b)]),
            )
        })
    }

    /// Real operator of a complex `n × n` matrix.
    pub fn from_complex(&self, c: &CMat) -> RMat {
        let n = self.n;
        let s = RMat::from_fn(2 * n, 2 * n, |i, k| {
            let z = c[(i % n, k % n)];
            match (i < n, k < n) {
                (true, true) | (false, false) => z.re,
                (true, false) => -z.im,
                (false, true) => z.im,
            }
        });
        self.from_frame(&s)
    }

    /// Matrix `M` with action `v ↦ M·conj(v)` of a `j`-antilinear operator.
    pub fn antilinear_to_complex(&self, m: &RMat) -> Result<CMat> {
        self.check_square(m)?;
        let residual = relative((m * &self.j + &self.j * m).norm(), m.norm());
        if residual > self.tol {
            return Err(MpcError::NotAntilinear { residual });
        }
        Ok(self.antilinear_to_complex_unchecked(m))
    }

    pub(crate) fn antilinear_to_complex_unchecked(&self, m: &RMat) -> CMat {
        let s = self.to_frame(m);
        let n = self.n;
        CMat::from_fn(n, n, |a, b| {
            Complex64::new(
                0.5 * (s[(a, b)] - s[(n + a, n + b)]),
                0.5 * (s[(n + a, b)] + s[(a, n + b)]),
            )
        })
    }

    /// Real operator of `v ↦ M·conj(v)`.
    pub fn antilinear_from_complex(&self, c: &CMat) -> RMat {
        let n = self.n;
        let s = RMat::from_fn(2 * n, 2 * n, |i, k| {
            let z = c[(i % n, k % n)];
            match (i < n, k < n) {
                (true, true) => z.re,
                (false, false) => -z.re,
                _ => z.im,
            }
        });
        self.from_frame(&s)
    }

    /// Relative residual of `gᵀΩg = Ω`.
    pub fn symplectic_residual(&self, g: &RMat) -> f64 {
        relative(
            (g.transpose() * &self.omega * g - &self.omega).norm(),
            self.omega.norm(),
        )
    }

    pub fn check_symplectic(&self, g: &RMat) -> Result<()> {
        self.check_square(g)?;
        let residual = self.symplectic_residual(g);
        if residual > self.tol {
            return Err(MpcError::NonSymplectic { residual });
        }
        Ok(())
    }

    /// `g⁻¹ = Ω⁻¹ gᵀ Ω` for symplectic `g`.
    pub fn symplectic_inverse(&self, g: &RMat) -> RMat {
        &self.omega_inv * g.transpose() * &self.omega
    }

    /// Relative residual of `ΩA + AᵀΩ = 0`.
    pub fn sp_residual(&self, a: &RMat) -> f64 {
        relative(
            (&self.omega * a + a.transpose() * &self.omega).norm(),
            a.norm(),
        )
    }

    pub fn check_sp(&self, a: &RMat) -> Result<()> {
        self.check_square(a)?;
        let residual = self.sp_residual(a);
        if residual > self.tol {
            return Err(MpcError::NotInSp { residual });
        }
        Ok(())
    }

    /// `C_g = ½(g − jgj)`, `Z_g = C_g⁻¹ D_g` with `D_g = ½(g + jgj)`.
    pub fn cz_decompose(&self, g: &RMat) -> Result<SiegelPair> {
        self.check_symplectic(g)?;
        Ok(self.cz_unchecked(g))
    }

    pub(crate) fn cz_unchecked(&self, g: &RMat) -> SiegelPair {
        let jgj = &self.j * g * &self.j;
        let c = (g - &jgj) * 0.5;
        let d = (g + &jgj) * 0.5;
        let c_cplx = self.to_complex_unchecked(&c);
        let d_anti = self.antilinear_to_complex_unchecked(&d);
        // Z = C⁻¹D: a linear map composed with an antilinear one stays antilinear.
        let c_inv = c_cplx
            .clone()
            .try_inverse()
            .expect("C_g is invertible for symplectic g");
        SiegelPair {
            c: c_cplx,
            z: c_inv * d_anti,
        }
    }

    /// Complex determinant of a `j`-linear operator.
    pub fn det_j(&self, m: &RMat) -> Result<Complex64> {
        Ok(self.to_complex(m)?.determinant())
    }

    /// `a(m)` with `e^{a(m)} = Det_j m` and `a(I) = 0` on `GL(V, j)₊`.
    pub fn holomorphic_logdet(&self, m: &RMat) -> Result<Complex64> {
        log_det_gl_plus(&self.to_complex(m)?)
    }
}

/// Principal-branch log-determinant on complex matrices with positive definite
/// hermitean part; the eigenvalues then stay in the open right half-plane.
pub fn log_det_gl_plus(m: &CMat) -> Result<Complex64> {
    let min_eigenvalue = linalg::min_hermitean_eigenvalue(m);
    if min_eigenvalue <= 0.0 {
        return Err(MpcError::NotInGLPlus { min_eigenvalue });
    }
    Ok(linalg::principal_log_det(m))
}

/// Determinant of `m` as a complex-linear map for an arbitrary complex
/// structure `structure` (possibly indefinite).
///
/// Works on the `+i` eigenspace of `structure` inside `C^{2n}`, which is
/// independent of any Darboux frame.
pub fn det_in_structure(structure: &RMat, m: &RMat) -> Result<Complex64> {
    let dim = structure.nrows();
    let n = dim / 2;
    let id = CMat::identity(dim, dim);
    let js = linalg::complexify(structure);
    let residual = (&js * &js + &id).norm();
    if residual > 1e-8 {
        return Err(MpcError::InvalidStructure("square is not -1"));
    }
    let proj = &id - js * linalg::I;
    let svd = proj.svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let basis = u.columns(0, n).into_owned();
    let mc = linalg::complexify(m);
    let image = &mc * &basis;
    let restricted = basis.adjoint() * &image;
    let residual = (image - &basis * &restricted).norm() / mc.norm().max(1.0);
    if residual > 1e-8 {
        return Err(MpcError::NotComplexLinear { residual });
    }
    Ok(restricted.determinant())
}

/// `(C_g, Z_g)` with `C_g` stored as a complex matrix and `Z_g` as `M` acting by
/// `v ↦ M·conj(v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SiegelPair {
    pub c: CMat,
    pub z: CMat,
}

/// How far a [`SiegelPair`] is from satisfying its defining identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiegelResiduals {
    /// Smallest eigenvalue of `1 − Z²`.
    pub min_eigenvalue: f64,
    /// `‖M − Mᵀ‖`.
    pub symmetry: f64,
    /// `‖(1 − Z²) − (C*C)⁻¹‖`.
    pub cayley: f64,
}

/// Product of two antilinear maps given by their matrices: a linear map.
pub fn compose_antilinear(z1: &CMat, z2: &CMat) -> CMat {
    z1 * z2.map(|x| x.conj())
}

impl SiegelPair {
    /// `1 − Z²` as a complex matrix.
    pub fn one_minus_z_squared(&self) -> CMat {
        let n = self.z.nrows();
        CMat::identity(n, n) - compose_antilinear(&self.z, &self.z)
    }

    /// Real operator `C(1 + Z)`.
    pub fn reassemble(&self, space: &SymplecticSpace) -> RMat {
        let c = space.from_complex(&self.c);
        let z = space.antilinear_from_complex(&self.z);
        let id = RMat::identity(space.dim(), space.dim());
        c * (id + z)
    }

    pub fn residuals(&self) -> SiegelResiduals {
        let one_minus = self.one_minus_z_squared();
        let min_eigenvalue = linalg::min_hermitean_eigenvalue(&one_minus);
        let symmetry = (&self.z - self.z.transpose()).norm();
        let cayley = match (self.c.adjoint() * &self.c).try_inverse() {
            Some(inv) => (one_minus - inv).norm(),
            None => f64::INFINITY,
        };
        SiegelResiduals {
            min_eigenvalue,
            symmetry,
            cayley,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use rand::SeedableRng;

    fn rng() -> rand_chacha::ChaCha8Rng {
        rand_chacha::ChaCha8Rng::seed_from_u64(11)
    }

    #[test]
    fn standard_n1_matrices() {
        let s = SymplecticSpace::standard(1, 1.0).unwrap();
        assert_eq!(s.omega(), &RMat::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]));
        assert_eq!(s.j(), &RMat::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]));
        assert_eq!(s.frame(), &RMat::identity(2, 2));
    }

    #[test]
    fn standard_n2_blocks() {
        let s = SymplecticSpace::standard(2, 1.0).unwrap();
        assert_eq!(s.omega()[(0, 2)], 1.0);
        assert_eq!(s.omega()[(1, 3)], 1.0);
        assert_eq!(s.j()[(2, 0)], 1.0);
        assert_eq!(s.j()[(0, 2)], -1.0);
        assert!(s.metric().symmetric_eigenvalues().min() > 0.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SymplecticSpace::standard(0, 1.0).is_err());
        assert!(SymplecticSpace::standard(1, 0.0).is_err());
        let bad_j = -standard_j(1);
        // −j is compatible but negative.
        assert_eq!(
            SymplecticSpace::new(standard_omega(1), bad_j, 1.0),
            Err(MpcError::InvalidSpace("G_j is not positive definite"))
        );
    }

    #[test]
    fn hermitean_form_basics() {
        let s = SymplecticSpace::standard(2, 1.0).unwrap();
        let e1 = RVec::from_vec(alloc::vec![1.0, 0.0, 0.0, 0.0]);
        let je1 = s.j() * &e1;
        let h11 = s.hermitean_form(&e1, &e1).unwrap();
        assert!(h11.im.abs() < 1e-15 && h11.re > 0.0);
        let h = s.hermitean_form(&e1, &je1).unwrap();
        assert!((h - (-linalg::I * h11)).norm() < 1e-15);
        assert!(s.hermitean_form(&e1, &RVec::zeros(3)).is_err());
    }

    #[test]
    fn coords_match_hermitean_form() {
        let s = SymplecticSpace::standard(2, 1.0).unwrap();
        let v = RVec::from_vec(alloc::vec![0.3, -1.2, 0.7, 0.1]);
        let w = RVec::from_vec(alloc::vec![-0.5, 0.4, 2.0, -0.9]);
        let zv = s.coords(&v).unwrap();
        let zw = s.coords(&w).unwrap();
        let via_coords: Complex64 = zv.iter().zip(zw.iter()).map(|(a, b)| a * b.conj()).sum();
        assert!((via_coords - s.hermitean_form(&v, &w).unwrap()).norm() < 1e-14);
        assert!((s.vector(&zv) - v).norm() < 1e-15);
    }

    #[test]
    fn general_space_frame_is_unitary() {
        // Conjugate the standard model by a random symplectic matrix.
        let std = SymplecticSpace::standard(2, 1.0).unwrap();
        let p = sampling::random_symplectic(&std, &mut rng(), 1.0);
        let p_inv = p.clone().try_inverse().unwrap();
        let omega = p_inv.transpose() * std.omega() * &p_inv;
        let j = &p * std.j() * &p_inv;
        let s = SymplecticSpace::new(omega, j, 1.0).unwrap();
        let f = s.frame();
        assert!((f.transpose() * s.omega() * f - standard_omega(2)).norm() < 1e-10);
        let f_inv = f.clone().try_inverse().unwrap();
        assert!((f_inv * s.j() * f - standard_j(2)).norm() < 1e-10);
        let g = sampling::random_symplectic(&s, &mut rng(), 1.0);
        let sp = s.cz_decompose(&g).unwrap();
        assert!(linalg::rel_diff(&sp.reassemble(&s), &g) < 1e-10);
    }

    #[test]
    fn complex_round_trips() {
        let s = SymplecticSpace::standard(2, 1.0).unwrap();
        let c = CMat::from_fn(2, 2, |a, b| Complex64::new(a as f64 + 0.5, b as f64 - 0.3));
        let m = s.from_complex(&c);
        assert!(s.complex_linear_residual(&m) < 1e-15);
        assert!((s.to_complex(&m).unwrap() - &c).norm() < 1e-15);
        let a = s.antilinear_from_complex(&c);
        assert!((&a * s.j() + s.j() * &a).norm() < 1e-15);
        assert!((s.antilinear_to_complex(&a).unwrap() - &c).norm() < 1e-15);
    }

    #[test]
    fn antilinear_action_is_conjugate_multiplication() {
        let s = SymplecticSpace::standard(2, 1.0).unwrap();
        let c = CMat::from_fn(2, 2, |a, b| Complex64::new(1.0 + a as f64, 0.5 * b as f64 - 0.2));
        let a = s.antilinear_from_complex(&c);
        let v = RVec::from_vec(alloc::vec![0.3, -0.1, 0.8, 1.1]);
        let lhs = s.coords(&(&a * &v)).unwrap();
        let rhs = &c * s.coords(&v).unwrap().map(|z| z.conj());
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn cz_identity_and_j() {
        let s = SymplecticSpace::standard(2, 1.0).unwrap();
        let id = RMat::identity(4, 4);
        let p = s.cz_decompose(&id).unwrap();
        assert!((p.c.clone() - CMat::identity(2, 2)).norm() < 1e-15);
        assert!(p.z.norm() < 1e-15);
        let p = s.cz_decompose(s.j()).unwrap();
        assert!((p.c.clone() - CMat::identity(2, 2) * linalg::I).norm() < 1e-15);
        assert!(p.z.norm() < 1e-15);
    }

    #[test]
    fn cz_of_squeeze() {
        let s = SymplecticSpace::standard(1, 1.0).unwrap();
        let g = RMat::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.5]);
        let p = s.cz_decompose(&g).unwrap();
        assert!((p.c[(0, 0)] - Complex64::new(1.25, 0.0)).norm() < 1e-15);
        assert!((p.z[(0, 0)] - Complex64::new(0.6, 0.0)).norm() < 1e-15);
        let zr = s.antilinear_from_complex(&p.z);
        assert!((zr - RMat::from_row_slice(2, 2, &[0.6, 0.0, 0.0, -0.6])).norm() < 1e-15);
        let one_minus = p.one_minus_z_squared();
        assert!((one_minus[(0, 0)] - Complex64::new(0.64, 0.0)).norm() < 1e-15);
        let r = p.residuals();
        assert!(r.cayley < 1e-15 && r.symmetry < 1e-15 && r.min_eigenvalue > 0.0);
        assert!((s.det_j(&s.from_complex(&p.c)).unwrap() - Complex64::new(1.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn cz_rejects_non_symplectic() {
        let s = SymplecticSpace::standard(1, 1.0).unwrap();
        let g = RMat::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 1.0]);
        assert!(matches!(s.cz_decompose(&g), Err(MpcError::NonSymplectic { .. })));
    }

    #[test]
    fn det_j_examples() {
        for n in 1..=3 {
            let s = SymplecticSpace::standard(n, 1.0).unwrap();
            let id = RMat::identity(2 * n, 2 * n);
            assert!((s.det_j(&id).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
            assert!((s.det_j(s.j()).unwrap() - linalg::I.powu(n as u32)).norm() < 1e-14);
        }
        let s = SymplecticSpace::standard(1, 1.0).unwrap();
        let m = RMat::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 2.0]);
        assert!(matches!(s.det_j(&m), Err(MpcError::NotComplexLinear { .. })));
    }

    #[test]
    fn det_in_structure_agrees_with_det_j() {
        let s = SymplecticSpace::standard(2, 1.0).unwrap();
        let c = CMat::from_fn(2, 2, |a, b| Complex64::new(a as f64 - 0.4 * b as f64 + 1.0, 0.3 * (a + b) as f64));
        let m = s.from_complex(&c);
        let lhs = det_in_structure(s.j(), &m).unwrap();
        assert!((lhs - c.determinant()).norm() < 1e-12);
        // −j reverses the complex orientation: determinant conjugates.
        let rhs = det_in_structure(&(-s.j()), &m).unwrap();
        assert!((rhs - c.determinant().conj()).norm() < 1e-12);
    }

    #[test]
    fn logdet_examples() {
        let s = SymplecticSpace::standard(3, 1.0).unwrap();
        let id = RMat::identity(6, 6);
        assert!(s.holomorphic_logdet(&id).unwrap().norm() < 1e-15);
        let t = 2.5;
        let a = s.holomorphic_logdet(&(&id * t)).unwrap();
        assert!((a - Complex64::new(3.0 * libm::log(t), 0.0)).norm() < 1e-13);
        assert!(matches!(
            s.holomorphic_logdet(&(-&id)),
            Err(MpcError::NotInGLPlus { .. })
        ));
    }

    #[test]
    fn logdet_of_siegel_products() {
        let s = SymplecticSpace::standard(2, 1.0).unwrap();
        let mut r = rng();
        for _ in 0..20 {
            let g1 = sampling::random_symplectic(&s, &mut r, 2.0);
            let g2 = sampling::random_symplectic(&s, &mut r, 2.0);
            let z1 = s.cz_decompose(&g1).unwrap().z;
            let z2 = s.cz_decompose(&g2).unwrap().z;
            let m = CMat::identity(2, 2) - compose_antilinear(&z1, &z2);
            let a = log_det_gl_plus(&m).unwrap();
            assert!((a.exp() - m.determinant()).norm() < 1e-10);
        }
    }
}
