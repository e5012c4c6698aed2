//! Dense helpers shared by every module: type aliases, the matrix exponential,
//! principal log-determinants and SVD-based null spaces.

use alloc::vec::Vec;

use nalgebra::{ComplexField, DMatrix, DVector};
use num_complex::Complex64;

pub type RMat = DMatrix<f64>;
pub type CMat = DMatrix<Complex64>;
pub type RVec = DVector<f64>;
pub type CVec = DVector<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub(crate) mod math {
    pub fn sqrt(x: f64) -> f64 {
        libm::sqrt(x)
    }
    pub fn log2(x: f64) -> f64 {
        libm::log2(x)
    }
    pub fn ceil(x: f64) -> f64 {
        libm::ceil(x)
    }
}

pub fn complexify(m: &RMat) -> CMat {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Frobenius distance `‖a − b‖` normalised by `max(1, ‖b‖)`.
pub fn rel_diff<T: ComplexField<RealField = f64>>(a: &DMatrix<T>, b: &DMatrix<T>) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// Matrix exponential by scaling and squaring with a Taylor core.
pub fn expm<T: ComplexField<RealField = f64> + Copy>(a: &DMatrix<T>) -> DMatrix<T> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm needs a square matrix");
    let norm = a.norm();
    let squarings = if norm > 0.5 {
        math::ceil(math::log2(norm / 0.5)) as u32
    } else {
        0
    };
    let scale = T::from_real(1.0 / f64::from(1u32 << squarings.min(30)));
    let scaled = a * scale;
    let mut term = DMatrix::<T>::identity(n, n);
    let mut sum = term.clone();
    for k in 1..=24u32 {
        term = &term * &scaled * T::from_real(1.0 / f64::from(k));
        sum += &term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    for _ in 0..squarings.min(30) {
        sum = &sum * &sum;
    }
    sum
}

/// Eigenvalues of a complex square matrix via the complex Schur form.
pub fn eigenvalues(m: &CMat) -> Vec<Complex64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let schur = m.clone().schur();
    let (_, t) = schur.unpack();
    (0..t.nrows()).map(|i| t[(i, i)]).collect()
}

/// Sum of principal logarithms of the eigenvalues.
pub fn principal_log_det(m: &CMat) -> Complex64 {
    eigenvalues(m).into_iter().map(|z| z.ln()).sum()
}

/// Smallest eigenvalue of the hermitean part `(m + m*)/2`.
pub fn min_hermitean_eigenvalue(m: &CMat) -> f64 {
    if m.nrows() == 0 {
        return f64::INFINITY;
    }
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    h.symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Where the singular values of a system sit relative to the rank threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpectralGap {
    /// Smallest singular value counted in the rank, relative to the largest.
    pub smallest_kept: Option<f64>,
    /// Largest singular value treated as zero, relative to the largest.
    pub largest_dropped: Option<f64>,
    pub threshold: f64,
}

impl SpectralGap {
    /// True when some relative singular value lies within two decades of the threshold.
    pub fn is_ambiguous(&self) -> bool {
        let near = |s: f64| s > self.threshold * 1e-2 && s < self.threshold * 1e2;
        self.smallest_kept.is_some_and(near) || self.largest_dropped.is_some_and(near)
    }

    /// The offending ratio when ambiguous.
    pub fn ambiguous_ratio(&self) -> Option<f64> {
        if !self.is_ambiguous() {
            return None;
        }
        let near = |s: &f64| *s > self.threshold * 1e-2 && *s < self.threshold * 1e2;
        self.smallest_kept
            .filter(near)
            .or(self.largest_dropped.filter(near))
    }
}

#[derive(Debug, Clone)]
pub struct NullSpace {
    /// Orthonormal basis of the null space, one column per vector.
    pub basis: CMat,
    pub singular_values: Vec<f64>,
    pub rank: usize,
    pub gap: SpectralGap,
}

impl NullSpace {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }
}

/// Null space by singular values, counting `σ > rel_threshold·σ_max` as rank.
///
/// A zero matrix (including one without rows) has full null space.
pub fn null_space(a: &CMat, rel_threshold: f64) -> NullSpace {
    null_space_scaled(a, rel_threshold, 0.0)
}

/// Like [`null_space`], with `σ` measured against `max(σ_max, reference)` so that
/// a block consisting only of round-off is recognised as zero.
pub fn null_space_scaled(a: &CMat, rel_threshold: f64, reference: f64) -> NullSpace {
    let cols = a.ncols();
    let gap_none = SpectralGap {
        smallest_kept: None,
        largest_dropped: None,
        threshold: rel_threshold,
    };
    if cols == 0 {
        return NullSpace {
            basis: CMat::zeros(0, 0),
            singular_values: Vec::new(),
            rank: 0,
            gap: gap_none,
        };
    }
    let max_abs = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max_abs == 0.0 {
        return NullSpace {
            basis: CMat::identity(cols, cols),
            singular_values: alloc::vec![0.0; cols],
            rank: 0,
            gap: gap_none,
        };
    }
    let padded = if a.nrows() < cols {
        let mut p = CMat::zeros(cols, cols);
        p.view_mut((0, 0), (a.nrows(), cols)).copy_from(a);
        p
    } else if a.nrows() > 2 * cols {
        // Same singular values and right vectors, much smaller SVD.
        a.clone().qr().r()
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let vt = svd.v_t.expect("right singular vectors requested");
    let smax = sv[0].max(reference);
    let rank = sv.iter().filter(|&&s| s > rel_threshold * smax).count();
    let basis = vt.rows(rank, cols - rank).adjoint();
    let gap = SpectralGap {
        smallest_kept: rank.checked_sub(1).map(|i| sv[i] / smax),
        largest_dropped: sv.get(rank).map(|s| s / smax),
        threshold: rel_threshold,
    };
    NullSpace {
        basis,
        singular_values: sv,
        rank,
        gap,
    }
}

/// Numerical rank with the same convention as [`null_space`].
pub fn rank(a: &CMat, rel_threshold: f64) -> (usize, SpectralGap) {
    let ns = null_space(a, rel_threshold);
    (ns.rank, ns.gap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm_of_rotation_generator() {
        let t = 1.3;
        let a = RMat::from_row_slice(2, 2, &[0.0, -t, t, 0.0]);
        let e = expm(&a);
        let expected = RMat::from_row_slice(
            2,
            2,
            &[libm::cos(t), -libm::sin(t), libm::sin(t), libm::cos(t)],
        );
        assert!(rel_diff(&e, &expected) < 1e-14);
    }

    #[test]
    fn expm_large_norm_diagonal() {
        let a = RMat::from_diagonal(&RVec::from_vec(alloc::vec![3.0, -2.5, 0.1]));
        let e = expm(&a);
        for (i, x) in [3.0, -2.5, 0.1].iter().enumerate() {
            assert!((e[(i, i)] - libm::exp(*x)).abs() < 1e-12 * libm::exp(*x));
        }
    }

    #[test]
    fn expm_inverse_pair() {
        let a = CMat::from_fn(3, 3, |i, j| Complex64::new((i + 2 * j) as f64 * 0.3 - 0.7, (i as f64) - 0.4 * j as f64));
        let prod = expm(&a) * expm(&(-a));
        assert!(rel_diff(&prod, &CMat::identity(3, 3)) < 1e-12);
    }

    #[test]
    fn log_det_matches_det() {
        let m = CMat::from_row_slice(
            2,
            2,
            &[
                Complex64::new(2.0, 0.5),
                Complex64::new(0.3, 0.0),
                Complex64::new(-0.1, 0.2),
                Complex64::new(1.5, -0.4),
            ],
        );
        let lhs = principal_log_det(&m).exp();
        assert!((lhs - m.determinant()).norm() < 1e-12);
    }

    #[test]
    fn null_space_of_wide_matrix() {
        let a = CMat::from_row_slice(
            1,
            3,
            &[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        );
        let ns = null_space(&a, 1e-7);
        assert_eq!(ns.rank, 1);
        assert_eq!(ns.dim(), 2);
        assert!((&a * &ns.basis).norm() < 1e-12);
    }

    #[test]
    fn zero_matrix_has_full_null_space() {
        let ns = null_space(&CMat::zeros(4, 3), 1e-7);
        assert_eq!(ns.dim(), 3);
        let ns = null_space(&CMat::zeros(0, 2), 1e-7);
        assert_eq!(ns.dim(), 2);
    }

    #[test]
    fn ambiguity_is_reported() {
        let a = CMat::from_diagonal(&CVec::from_vec(alloc::vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(3e-8, 0.0)
        ]));
        let ns = null_space(&a, 1e-7);
        assert!(ns.gap.is_ambiguous());
        let b = CMat::from_diagonal(&CVec::from_vec(alloc::vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(1e-16, 0.0)
        ]));
        assert!(!null_space(&b, 1e-7).gap.is_ambiguous());
    }
}
