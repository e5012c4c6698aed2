//! Random elements of `sp(V, Ω)` and its subalgebras, exponentiated to group
//! elements. Norms are spectral and bounded so that `C_g` stays well conditioned.

use alloc::sync::Arc;

use num_complex::Complex64;
use rand::Rng;

use crate::linalg::{expm, CMat, RMat};
use crate::mpc::MpcElement;
use crate::symplectic::SymplecticSpace;

pub fn uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(-1.0..1.0)
}

pub fn random_symmetric<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> RMat {
    let mut s = RMat::zeros(dim, dim);
    for i in 0..dim {
        for k in i..dim {
            let x = uniform(rng);
            s[(i, k)] = x;
            s[(k, i)] = x;
        }
    }
    s
}

pub fn spectral_norm(a: &RMat) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.clone().singular_values().max()
}

/// Rescales `a` to spectral norm `bound · t` with `t` uniform in `[0.1, 1]`.
pub fn scale_to<R: Rng + ?Sized>(rng: &mut R, a: RMat, bound: f64) -> RMat {
    let norm = spectral_norm(&a);
    if norm == 0.0 {
        return a;
    }
    let t = rng.random_range(0.1..=1.0);
    a * (bound * t / norm)
}

/// `A = Ω⁻¹S` with `S` symmetric, rescaled to spectral norm at most `bound`.
pub fn random_sp_algebra<R: Rng + ?Sized>(space: &SymplecticSpace, rng: &mut R, bound: f64) -> RMat {
    let s = random_symmetric(rng, space.dim());
    scale_to(rng, space.omega_inv() * s, bound)
}

/// A `j`-linear element of `sp(V, Ω)`: an anti-hermitean complex matrix.
pub fn random_u_algebra<R: Rng + ?Sized>(space: &SymplecticSpace, rng: &mut R, bound: f64) -> RMat {
    let n = space.dim_half();
    let k = CMat::from_fn(n, n, |_, _| Complex64::new(uniform(rng), uniform(rng)));
    let anti = (&k - k.adjoint()) * Complex64::new(0.5, 0.0);
    scale_to(rng, space.from_complex(&anti), bound)
}

pub fn random_symplectic<R: Rng + ?Sized>(space: &SymplecticSpace, rng: &mut R, bound: f64) -> RMat {
    expm(&random_sp_algebra(space, rng, bound))
}

pub fn random_unitary<R: Rng + ?Sized>(space: &SymplecticSpace, rng: &mut R, bound: f64) -> RMat {
    expm(&random_u_algebra(space, rng, bound))
}

/// A random element over [`random_symplectic`] with `λ = e^{iφ}/√Det_j C_g`.
pub fn random_mpc<R: Rng + ?Sized>(space: &Arc<SymplecticSpace>, rng: &mut R, bound: f64) -> MpcElement {
    let g = random_symplectic(space, rng, bound);
    let det = space.cz_unchecked(&g).c.determinant();
    let phase = Complex64::from_polar(1.0, core::f64::consts::PI * uniform(rng));
    MpcElement::new(Arc::clone(space), g, phase / det.sqrt()).expect("λ chosen with unit modulus")
}
