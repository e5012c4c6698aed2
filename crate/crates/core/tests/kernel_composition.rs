//! The Berezin kernel of a product equals the composition integral of the
//! kernels, evaluated by Gauss–Hermite quadrature.

use std::sync::Arc;

use mpc_core::linalg::{CVec, RMat};
use mpc_core::{sampling, MpcElement, SymplecticSpace};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Nodes and weights for `∫ f(s) e^{−s²} ds` by Golub–Welsch.
fn gauss_hermite(count: usize) -> Vec<(f64, f64)> {
    let jacobi = DMatrix::<f64>::from_fn(count, count, |i, k| {
        if i + 1 == k || k + 1 == i {
            (i.max(k) as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    });
    let eig = jacobi.symmetric_eigen();
    (0..count)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], std::f64::consts::PI.sqrt() * v0 * v0)
        })
        .collect()
}

#[test]
fn quadrature_integrates_gaussian_moments() {
    let rule = gauss_hermite(40);
    let total: f64 = rule.iter().map(|(_, w)| w).sum();
    let second: f64 = rule.iter().map(|(x, w)| w * x * x).sum();
    assert!((total - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    assert!((second - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-12);
}

fn composed_kernel(a: &MpcElement, b: &MpcElement, z: &CVec, v: &CVec, rule: &[(f64, f64)]) -> Complex64 {
    let scale = (2.0 * a.space().hbar()).sqrt();
    let mut sum = Complex64::new(0.0, 0.0);
    for &(s, ws) in rule {
        for &(t, wt) in rule {
            let w = CVec::from_vec(vec![Complex64::new(scale * s, scale * t)]);
            let value = a.berezin_kernel(z, &w).unwrap() * b.berezin_kernel(&w, v).unwrap();
            sum += value * ws * wt;
        }
    }
    sum / std::f64::consts::PI
}

#[test]
fn kernel_of_product_is_composition_of_kernels() {
    let rule = gauss_hermite(80);
    for hbar in [1.0, 0.5] {
        let space = Arc::new(SymplecticSpace::standard(1, hbar).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..4 {
            let mut element = || {
                let g: RMat = sampling::random_symplectic(&space, &mut rng, 0.4);
                let phase = Complex64::from_polar(1.0, sampling::uniform(&mut rng));
                let det = space.cz_decompose(&g).unwrap().c.determinant();
                let lambda = phase / det.sqrt();
                MpcElement::new(Arc::clone(&space), g, lambda).unwrap()
            };
            let a = element();
            let b = element();
            let product = a.multiply(&b).unwrap();
            let z = CVec::from_vec(vec![Complex64::new(0.3, -0.2)]);
            let v = CVec::from_vec(vec![Complex64::new(-0.1, 0.4)]);
            let expected = product.berezin_kernel(&z, &v).unwrap();
            let integral = composed_kernel(&a, &b, &z, &v, &rule);
            assert!(
                (integral - expected).norm() < 1e-9 * expected.norm(),
                "hbar {hbar}: {integral} vs {expected}"
            );
        }
    }
}
