//! The group `Mpc(V, Ω, j)` in its `(g, λ)` parametrisation.

use alloc::sync::Arc;

use num_complex::Complex64;

use crate::error::{MpcError, Result};
use crate::linalg::{CMat, CVec, RMat};
use crate::symplectic::{compose_antilinear, log_det_gl_plus, SiegelPair, SymplecticSpace};

/// A pair `(g, λ)` with `g` symplectic and `|λ² Det_j C_g| = 1`.
#[derive(Debug, Clone)]
pub struct MpcElement {
    space: Arc<SymplecticSpace>,
    g: RMat,
    lambda: Complex64,
}

fn same_space(a: &Arc<SymplecticSpace>, b: &Arc<SymplecticSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl MpcElement {
    /// Validates that `g` is symplectic and that `λ` has the right modulus.
    pub fn new(space: Arc<SymplecticSpace>, g: RMat, lambda: Complex64) -> Result<Self> {
        space.check_symplectic(&g)?;
        let x = Self { space, g, lambda };
        let residual = x.unimodularity_residual();
        if residual > x.space.tol() {
            return Err(MpcError::NotUnimodular { residual });
        }
        Ok(x)
    }

    pub fn identity(space: Arc<SymplecticSpace>) -> Self {
        let dim = space.dim();
        Self {
            space,
            g: RMat::identity(dim, dim),
            lambda: Complex64::new(1.0, 0.0),
        }
    }

    /// The central element `(I, μ)`.
    pub fn central(space: Arc<SymplecticSpace>, mu: Complex64) -> Result<Self> {
        let dim = space.dim();
        Self::new(space, RMat::identity(dim, dim), mu)
    }

    pub fn space(&self) -> &Arc<SymplecticSpace> {
        &self.space
    }

    /// Projection `σ` to the symplectic group.
    pub fn g(&self) -> &RMat {
        &self.g
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn siegel(&self) -> SiegelPair {
        self.space.cz_unchecked(&self.g)
    }

    fn inverse_siegel(&self) -> SiegelPair {
        self.space.cz_unchecked(&self.space.symplectic_inverse(&self.g))
    }

    pub fn det_c(&self) -> Complex64 {
        self.siegel().c.determinant()
    }

    /// `| |λ² Det_j C_g| − 1 |`.
    pub fn unimodularity_residual(&self) -> f64 {
        (self.eta().norm() - 1.0).abs()
    }

    /// Product law with the cocycle `e^{−½ a(1 − Z_{g₁} Z_{g₂⁻¹})}`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if !same_space(&self.space, &other.space) {
            return Err(MpcError::SpaceMismatch);
        }
        let z1 = self.siegel().z;
        let z2_inv = other.inverse_siegel().z;
        let a = cocycle_log(&z1, &z2_inv)?;
        let lambda = self.lambda * other.lambda * (-0.5 * a).exp();
        let product = Self {
            space: Arc::clone(&self.space),
            g: &self.g * &other.g,
            lambda,
        };
        let residual = product.unimodularity_residual();
        if residual > product.space.tol() {
            return Err(MpcError::NotUnimodular { residual });
        }
        Ok(product)
    }

    /// `(g⁻¹, e^{½ a(1 − Z_g²)} / λ)`.
    pub fn inverse(&self) -> Self {
        let z = self.siegel().z;
        let a = cocycle_log(&z, &z).expect("1 - Z^2 is positive definite");
        Self {
            space: Arc::clone(&self.space),
            g: self.space.symplectic_inverse(&self.g),
            lambda: (0.5 * a).exp() / self.lambda,
        }
    }

    /// The character `η = λ² Det_j C_g`.
    pub fn eta(&self) -> Complex64 {
        self.lambda * self.lambda * self.det_c()
    }

    /// Membership in `Mp`: `η = 1` within the space tolerance.
    pub fn is_metaplectic(&self) -> bool {
        (self.eta() - 1.0).norm() < self.space.tol()
    }

    /// Pointwise kernel `U(z, v)` in the complex coordinates of the space.
    pub fn berezin_kernel(&self, z: &CVec, v: &CVec) -> Result<Complex64> {
        let n = self.space.dim_half();
        for w in [z, v] {
            if w.len() != n {
                return Err(MpcError::DimensionMismatch {
                    expected: n,
                    found: w.len(),
                });
            }
        }
        let pair = self.siegel();
        let c_inv = pair.c.clone().try_inverse().ok_or(MpcError::Singular)?;
        let z_inv = self.inverse_siegel().z;
        let herm = |a: &CVec, b: &CVec| -> Complex64 { a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum() };
        let cross = herm(&(&c_inv * z), v);
        let left = herm(z, &(&z_inv * z.map(|x| x.conj())));
        let right = herm(&(&pair.z * v.map(|x| x.conj())), v);
        let exponent = (2.0 * cross - left - right) / (4.0 * self.space.hbar());
        Ok(self.lambda * exponent.exp())
    }
}

/// `a(1 − Z₁Z₂)` for two points of the Siegel domain.
pub fn cocycle_log(z1: &CMat, z2: &CMat) -> Result<Complex64> {
    let n = z1.nrows();
    log_det_gl_plus(&(CMat::identity(n, n) - compose_antilinear(z1, z2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{self, math};
    use crate::sampling;
    use rand::SeedableRng;

    fn space(n: usize) -> Arc<SymplecticSpace> {
        Arc::new(SymplecticSpace::standard(n, 1.0).unwrap())
    }

    fn random_element<R: rand::Rng>(s: &Arc<SymplecticSpace>, rng: &mut R, bound: f64) -> MpcElement {
        let g = sampling::random_symplectic(s, rng, bound);
        let det = s.cz_decompose(&g).unwrap().c.determinant();
        let phase = Complex64::from_polar(1.0, 3.0 * sampling::uniform(rng));
        let lambda = phase / det.sqrt();
        MpcElement::new(Arc::clone(s), g, lambda).unwrap()
    }

    #[test]
    fn central_elements_multiply() {
        let s = space(2);
        let a = MpcElement::central(Arc::clone(&s), Complex64::from_polar(1.0, 0.4)).unwrap();
        let b = MpcElement::central(Arc::clone(&s), Complex64::from_polar(1.0, -1.1)).unwrap();
        let ab = a.multiply(&b).unwrap();
        assert!((ab.lambda() - Complex64::from_polar(1.0, -0.7)).norm() < 1e-15);
        assert!((ab.g() - RMat::identity(4, 4)).norm() == 0.0);
    }

    #[test]
    fn identity_is_neutral() {
        let s = space(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let e = MpcElement::identity(Arc::clone(&s));
        assert_eq!(e.eta(), Complex64::new(1.0, 0.0));
        assert!(e.is_metaplectic());
        for _ in 0..5 {
            let x = random_element(&s, &mut rng, 2.0);
            let left = e.multiply(&x).unwrap();
            let right = x.multiply(&e).unwrap();
            assert!((left.lambda() - x.lambda()).norm() < 1e-13);
            assert!((right.lambda() - x.lambda()).norm() < 1e-13);
        }
    }

    #[test]
    fn unitary_product_keeps_lambda_one() {
        let s = space(3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        let u1 = sampling::random_unitary(&s, &mut rng, 2.0);
        let u2 = sampling::random_unitary(&s, &mut rng, 2.0);
        let x = MpcElement::new(Arc::clone(&s), u1, Complex64::new(1.0, 0.0)).unwrap();
        let y = MpcElement::new(Arc::clone(&s), u2, Complex64::new(1.0, 0.0)).unwrap();
        let xy = x.multiply(&y).unwrap();
        assert!((xy.lambda() - 1.0).norm() < 1e-13);
        let det = s.det_j(x.g()).unwrap();
        assert!((x.eta() - det).norm() < 1e-13);
    }

    #[test]
    fn squeeze_product_by_hand() {
        let s = space(1);
        let g = RMat::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.5]);
        let lam = Complex64::new(1.0 / math::sqrt(1.25), 0.0);
        let x = MpcElement::new(Arc::clone(&s), g, lam).unwrap();
        let xx = x.multiply(&x).unwrap();
        assert!((xx.g() - RMat::from_row_slice(2, 2, &[4.0, 0.0, 0.0, 0.25])).norm() < 1e-15);
        let expected = 1.0 / (1.25 * math::sqrt(1.36));
        assert!((xx.lambda() - expected).norm() < 1e-14);
        assert!((xx.lambda().norm_sqr() * 2.125 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn inverse_examples() {
        let s = space(2);
        let mu = Complex64::from_polar(1.0, 0.9);
        let c = MpcElement::central(Arc::clone(&s), mu).unwrap();
        assert!((c.inverse().lambda() - mu.inv()).norm() < 1e-15);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let u = sampling::random_unitary(&s, &mut rng, 1.0);
        let x = MpcElement::new(Arc::clone(&s), u.clone(), Complex64::new(1.0, 0.0)).unwrap();
        let xi = x.inverse();
        assert!((xi.lambda() - 1.0).norm() < 1e-13);
        assert!(linalg::rel_diff(xi.g(), &u.try_inverse().unwrap()) < 1e-13);
        for _ in 0..10 {
            let x = random_element(&s, &mut rng, 2.0);
            let xi = x.inverse();
            for p in [x.multiply(&xi).unwrap(), xi.multiply(&x).unwrap()] {
                assert!((p.lambda() - 1.0).norm() < 1e-9);
                assert!((p.g() - RMat::identity(4, 4)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn eta_examples() {
        let s = space(1);
        let i = MpcElement::central(Arc::clone(&s), linalg::I).unwrap();
        assert!((i.eta() + 1.0).norm() < 1e-15);
        assert!(!i.is_metaplectic());
        let m = MpcElement::central(Arc::clone(&s), Complex64::new(-1.0, 0.0)).unwrap();
        assert!(m.is_metaplectic());
    }

    #[test]
    fn rejects_bad_lambda_and_mixed_spaces() {
        let s = space(1);
        assert!(matches!(
            MpcElement::central(Arc::clone(&s), Complex64::new(2.0, 0.0)),
            Err(MpcError::NotUnimodular { .. })
        ));
        let other = Arc::new(SymplecticSpace::standard(1, 2.0).unwrap());
        let a = MpcElement::identity(s);
        let b = MpcElement::identity(other);
        assert_eq!(a.multiply(&b).unwrap_err(), MpcError::SpaceMismatch);
    }

    #[test]
    fn kernel_at_origin_and_unitary_kernel() {
        let s = space(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        let x = random_element(&s, &mut rng, 1.5);
        let zero = CVec::zeros(2);
        assert!((x.berezin_kernel(&zero, &zero).unwrap() - x.lambda()).norm() < 1e-15);
        let u = sampling::random_unitary(&s, &mut rng, 1.5);
        let k = s.to_complex(&u).unwrap();
        let y = MpcElement::new(Arc::clone(&s), u, Complex64::new(1.0, 0.0)).unwrap();
        let z = CVec::from_fn(2, |a, _| Complex64::new(0.3 * a as f64 - 0.2, 0.5));
        let v = CVec::from_fn(2, |a, _| Complex64::new(-0.1, 0.4 * a as f64 + 0.1));
        let kinv_z = k.try_inverse().unwrap() * &z;
        let herm: Complex64 = kinv_z.iter().zip(v.iter()).map(|(a, b)| a * b.conj()).sum();
        let expected = (herm / 2.0).exp();
        assert!((y.berezin_kernel(&z, &v).unwrap() - expected).norm() < 1e-13);
    }
}
