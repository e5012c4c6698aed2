//! Holomorphic polynomials of bounded degree on `(V, j)` with the creation,
//! annihilation and Clifford operators, the embedding `ν` of `sp(V, Ω)` and the
//! action of the unitary part of `Mpc`.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{MpcError, Result};
use crate::linalg::{CMat, RMat, RVec};
use crate::mpc::MpcElement;
use crate::symplectic::SymplecticSpace;

pub type Exponent = Vec<u32>;

/// Exponents `α` with `|α| = degree` in lexicographically decreasing order.
pub fn homogeneous_exponents(vars: usize, degree: u32) -> Vec<Exponent> {
    fn fill(prefix: &mut Exponent, vars: usize, left: u32, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == vars {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=left).rev() {
            prefix.push(first);
            fill(prefix, vars, left - first, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if vars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    fill(&mut Vec::with_capacity(vars), vars, degree, &mut out);
    out
}

/// `C(n + l − 1, l)`.
pub fn homogeneous_dim(vars: usize, degree: u32) -> usize {
    if vars == 0 {
        return usize::from(degree == 0);
    }
    binomial(vars as u64 + u64::from(degree) - 1, u64::from(degree)) as usize
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

pub fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// Graded-lexicographic monomial basis `z^α`, `|α| ≤ q`, with lookup tables for
/// multiplication and differentiation by a single variable.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialBasis {
    vars: usize,
    max_degree: u32,
    exponents: Vec<Exponent>,
    index: BTreeMap<Exponent, usize>,
    offsets: Vec<usize>,
}

impl MonomialBasis {
    pub fn new(vars: usize, max_degree: u32) -> Self {
        let mut exponents = Vec::new();
        let mut offsets = Vec::with_capacity(max_degree as usize + 2);
        for l in 0..=max_degree {
            offsets.push(exponents.len());
            exponents.extend(homogeneous_exponents(vars, l));
        }
        offsets.push(exponents.len());
        let index = exponents
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        Self {
            vars,
            max_degree,
            exponents,
            index,
            offsets,
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponent(&self, i: usize) -> &Exponent {
        &self.exponents[i]
    }

    pub fn exponents(&self) -> &[Exponent] {
        &self.exponents
    }

    pub fn index_of(&self, alpha: &[u32]) -> Option<usize> {
        self.index.get(alpha).copied()
    }

    pub fn degree_of(&self, i: usize) -> u32 {
        self.exponents[i].iter().sum()
    }

    /// Index range of the degree-`l` monomials.
    pub fn degree_range(&self, l: u32) -> core::ops::Range<usize> {
        let l = l as usize;
        self.offsets[l]..self.offsets[l + 1]
    }

    /// Number of monomials of degree at most `l`.
    pub fn prefix_len(&self, l: u32) -> usize {
        self.offsets[(l.min(self.max_degree) + 1) as usize]
    }

    pub fn degree_dims(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Index of `z_var · z^α`, or `None` past the top degree.
    pub fn raise(&self, i: usize, var: usize) -> Option<usize> {
        let mut alpha = self.exponents[i].clone();
        alpha[var] += 1;
        self.index_of(&alpha)
    }

    /// `∂_var z^α = α_var z^{α − e_var}` as `(factor, index)`.
    pub fn lower(&self, i: usize, var: usize) -> Option<(f64, usize)> {
        let mut alpha = self.exponents[i].clone();
        let k = alpha[var];
        if k == 0 {
            return None;
        }
        alpha[var] -= 1;
        self.index_of(&alpha).map(|j| (f64::from(k), j))
    }
}

/// How an operator moves polynomial degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeShift {
    Fixed(i8),
    Unconstrained,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    pub matrix: CMat,
    pub shift: DegreeShift,
}

impl FockOperator {
    fn new(matrix: CMat, shift: DegreeShift) -> Self {
        Self { matrix, shift }
    }

    /// True if every nonzero entry moves degree by the declared shift.
    pub fn shift_is_consistent(&self, basis: &MonomialBasis) -> bool {
        let DegreeShift::Fixed(shift) = self.shift else {
            return true;
        };
        (0..self.matrix.nrows()).all(|r| {
            (0..self.matrix.ncols()).all(|c| {
                self.matrix[(r, c)] == Complex64::new(0.0, 0.0)
                    || i64::from(basis.degree_of(r)) - i64::from(basis.degree_of(c)) == i64::from(shift)
            })
        })
    }

    pub fn compose(&self, other: &Self) -> Self {
        let shift = match (self.shift, other.shift) {
            (DegreeShift::Fixed(a), DegreeShift::Fixed(b)) => DegreeShift::Fixed(a + b),
            _ => DegreeShift::Unconstrained,
        };
        Self::new(&self.matrix * &other.matrix, shift)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        let shift = match (self.shift, other.shift) {
            (DegreeShift::Fixed(a), DegreeShift::Fixed(b)) => DegreeShift::Fixed(a + b),
            _ => DegreeShift::Unconstrained,
        };
        Self::new(&self.matrix * &other.matrix - &other.matrix * &self.matrix, shift)
    }

    /// Frobenius norm of the columns of degree at most `degree`.
    pub fn norm_on_degrees(&self, basis: &MonomialBasis, degree: u32) -> f64 {
        self.matrix.columns(0, basis.prefix_len(degree)).norm()
    }
}

fn combine(shift_a: DegreeShift, shift_b: DegreeShift) -> DegreeShift {
    if shift_a == shift_b {
        shift_a
    } else {
        DegreeShift::Unconstrained
    }
}

impl core::ops::Sub for &FockOperator {
    type Output = FockOperator;
    fn sub(self, rhs: &FockOperator) -> FockOperator {
        FockOperator::new(&self.matrix - &rhs.matrix, combine(self.shift, rhs.shift))
    }
}

impl core::ops::Add for &FockOperator {
    type Output = FockOperator;
    fn add(self, rhs: &FockOperator) -> FockOperator {
        FockOperator::new(&self.matrix + &rhs.matrix, combine(self.shift, rhs.shift))
    }
}

/// Polynomials of degree at most `q` on `(V, j)`.
#[derive(Debug, Clone)]
pub struct FockTrunc {
    space: Arc<SymplecticSpace>,
    basis: MonomialBasis,
}

impl FockTrunc {
    pub fn new(space: Arc<SymplecticSpace>, max_degree: u32) -> Self {
        let basis = MonomialBasis::new(space.dim_half(), max_degree);
        Self { space, basis }
    }

    pub fn space(&self) -> &Arc<SymplecticSpace> {
        &self.space
    }

    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    pub fn max_degree(&self) -> u32 {
        self.basis.max_degree()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `⟨z^α, z^α⟩ = α! (2ħ)^{|α|}`; the basis is orthogonal.
    pub fn norm_squared(&self, i: usize) -> f64 {
        let alpha = self.basis.exponent(i);
        let degree: u32 = alpha.iter().sum();
        alpha.iter().map(|&k| factorial(k)).product::<f64>() * libm::pow(2.0 * self.space.hbar(), f64::from(degree))
    }

    pub fn gram(&self) -> CMat {
        CMat::from_fn(self.dim(), self.dim(), |r, c| {
            if r == c {
                Complex64::new(self.norm_squared(r), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Adjoint with respect to the Fock inner product.
    pub fn adjoint(&self, op: &FockOperator) -> FockOperator {
        let shift = match op.shift {
            DegreeShift::Fixed(s) => DegreeShift::Fixed(-s),
            DegreeShift::Unconstrained => DegreeShift::Unconstrained,
        };
        let m = CMat::from_fn(self.dim(), self.dim(), |r, c| {
            op.matrix[(c, r)].conj() * self.norm_squared(c) / self.norm_squared(r)
        });
        FockOperator::new(m, shift)
    }

    fn unitary_coords(&self, v: &RVec) -> Vec<Complex64> {
        let xi = self.space.frame_inv() * v;
        let n = self.space.dim_half();
        (0..n).map(|a| Complex64::new(xi[a], xi[n + a])).collect()
    }

    /// `c(v) f = (1/2ħ) ⟨z, v⟩_j f`, dropping the part above degree `q`.
    pub fn creation(&self, v: &RVec) -> FockOperator {
        let xi = self.unitary_coords(v);
        let scale = 1.0 / (2.0 * self.space.hbar());
        let mut m = CMat::zeros(self.dim(), self.dim());
        for col in 0..self.dim() {
            for (a, x) in xi.iter().enumerate() {
                if let Some(row) = self.basis.raise(col, a) {
                    m[(row, col)] += x.conj() * scale;
                }
            }
        }
        FockOperator::new(m, DegreeShift::Fixed(1))
    }

    /// `a(v) f = (∂f)(v)`.
    pub fn annihilation(&self, v: &RVec) -> FockOperator {
        let xi = self.unitary_coords(v);
        let mut m = CMat::zeros(self.dim(), self.dim());
        for col in 0..self.dim() {
            for (a, x) in xi.iter().enumerate() {
                if let Some((k, row)) = self.basis.lower(col, a) {
                    m[(row, col)] += x * k;
                }
            }
        }
        FockOperator::new(m, DegreeShift::Fixed(-1))
    }

    /// `cl(v) = c(v) − a(v)`.
    pub fn clifford(&self, v: &RVec) -> FockOperator {
        let m = self.creation(v).matrix - self.annihilation(v).matrix;
        FockOperator::new(m, DegreeShift::Unconstrained)
    }

    /// `cl(ν(A)) = −(iħ/2) Σ_{ab} M_{ab} cl(e_a) cl(e_b)` where `A = M Ω`.
    pub fn nu_embed(&self, a: &RMat) -> Result<FockOperator> {
        self.space.check_sp(a)?;
        let m = a * self.space.omega_inv();
        let dim = self.space.dim();
        let cls: Vec<CMat> = (0..dim)
            .map(|k| self.clifford(&RVec::from_fn(dim, |i, _| f64::from(u8::from(i == k)))).matrix)
            .collect();
        let mut out = CMat::zeros(self.dim(), self.dim());
        for p in 0..dim {
            let mut row = CMat::zeros(self.dim(), self.dim());
            for q in 0..dim {
                if m[(p, q)] != 0.0 {
                    row += &cls[q] * Complex64::new(m[(p, q)], 0.0);
                }
            }
            out += &cls[p] * row;
        }
        let coeff = Complex64::new(0.0, -self.space.hbar() / 2.0);
        Ok(FockOperator::new(out * coeff, DegreeShift::Unconstrained))
    }

    /// `(Uf)(z) = λ f(k⁻¹ z)` for `g = k` commuting with `j`.
    pub fn muc_action(&self, x: &MpcElement) -> Result<FockOperator> {
        let residual = self.space.complex_linear_residual(x.g());
        if residual > self.space.tol() {
            return Err(MpcError::NotUnitary { residual });
        }
        let k = self.space.to_complex(x.g())?;
        let k_inv = k.try_inverse().ok_or(MpcError::Singular)?;
        let n = self.space.dim_half();
        let mut m = CMat::zeros(self.dim(), self.dim());
        for col in 0..self.dim() {
            let alpha = self.basis.exponent(col).clone();
            let mut poly = alloc::vec![Complex64::new(0.0, 0.0); self.dim()];
            poly[0] = x.lambda();
            for (a, &power) in alpha.iter().enumerate() {
                for _ in 0..power {
                    let mut next = alloc::vec![Complex64::new(0.0, 0.0); self.dim()];
                    for (i, coeff) in poly.iter().enumerate() {
                        if *coeff == Complex64::new(0.0, 0.0) {
                            continue;
                        }
                        for b in 0..n {
                            if let Some(j) = self.basis.raise(i, b) {
                                next[j] += coeff * k_inv[(a, b)];
                            }
                        }
                    }
                    poly = next;
                }
            }
            for (row, coeff) in poly.into_iter().enumerate() {
                m[(row, col)] = coeff;
            }
        }
        Ok(FockOperator::new(m, DegreeShift::Fixed(0)))
    }

    /// `U_*(X) = cl(ν(Y)) + ½(2iθ + tr_C Y)` for `X = (Y, iθ) ∈ u(V, j) ⊕ u(1)`.
    pub fn infinitesimal_action(&self, y: &RMat, theta: f64) -> Result<FockOperator> {
        let residual = self.space.complex_linear_residual(y);
        if residual > self.space.tol() {
            return Err(MpcError::NotUnitary { residual });
        }
        let trace = self.space.to_complex(y)?.trace();
        let scalar = (Complex64::new(0.0, 2.0 * theta) + trace) * 0.5;
        let mut op = self.nu_embed(y)?;
        for i in 0..self.dim() {
            op.matrix[(i, i)] += scalar;
        }
        Ok(op)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{expm, I};
    use crate::sampling;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fock(n: usize, q: u32, hbar: f64) -> FockTrunc {
        FockTrunc::new(Arc::new(SymplecticSpace::standard(n, hbar).unwrap()), q)
    }

    fn unit(dim: usize, k: usize) -> RVec {
        RVec::from_fn(dim, |i, _| f64::from(u8::from(i == k)))
    }

    #[test]
    fn basis_layout() {
        let b = MonomialBasis::new(2, 2);
        assert_eq!(b.len(), 6);
        assert_eq!(b.exponents()[3..].to_vec(), alloc::vec![alloc::vec![2, 0], alloc::vec![1, 1], alloc::vec![0, 2]]);
        assert_eq!(b.degree_dims(), alloc::vec![1, 2, 3]);
        assert_eq!(MonomialBasis::new(3, 4).len() as u128, binomial(7, 4));
        assert_eq!(homogeneous_dim(3, 2), 6);
        assert_eq!(homogeneous_dim(0, 0), 1);
    }

    #[test]
    fn creation_examples() {
        let f = fock(2, 3, 0.5);
        let c = f.creation(&unit(4, 0));
        let z1 = f.basis().index_of(&[1, 0]).unwrap();
        assert_eq!(c.matrix[(z1, 0)], Complex64::new(1.0, 0.0));
        let cj = f.creation(&(f.space().j() * unit(4, 0)));
        assert!((&cj.matrix - &c.matrix * (-I)).norm() < 1e-15);
        let top = f.basis().index_of(&[3, 0]).unwrap();
        assert!(c.matrix.column(top).norm() == 0.0);
        assert!(c.shift_is_consistent(f.basis()));
    }

    #[test]
    fn annihilation_examples() {
        let f = fock(2, 3, 1.0);
        let a = f.annihilation(&unit(4, 0));
        assert!(a.matrix.column(0).norm() == 0.0);
        let z1sq = f.basis().index_of(&[2, 0]).unwrap();
        let z1 = f.basis().index_of(&[1, 0]).unwrap();
        assert_eq!(a.matrix[(z1, z1sq)], Complex64::new(2.0, 0.0));
        let aj = f.annihilation(&(f.space().j() * unit(4, 1)));
        assert!((&aj.matrix - &f.annihilation(&unit(4, 1)).matrix * I).norm() < 1e-15);
        assert!(a.shift_is_consistent(f.basis()));
    }

    #[test]
    fn creation_and_annihilation_are_adjoint() {
        let f = fock(2, 4, 0.7);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v = RVec::from_fn(4, |_, _| sampling::uniform(&mut rng));
        let c_adj = f.adjoint(&f.creation(&v));
        let a = f.annihilation(&v);
        let below = f.basis().prefix_len(3);
        let diff = (&c_adj.matrix - &a.matrix).columns(0, f.dim()).rows(0, below).into_owned();
        assert!(diff.norm() < 1e-12);
    }

    #[test]
    fn clifford_relation_below_top_degree() {
        let f = fock(3, 5, 0.8);
        let dim = 6;
        for p in 0..dim {
            for q in 0..dim {
                let (u, v) = (unit(dim, p), unit(dim, q));
                let comm = f.clifford(&u).commutator(&f.clifford(&v));
                let expected = Complex64::new(0.0, f.space().omega_form(&u, &v) / 0.8);
                let mut diff = comm.matrix.clone();
                for i in 0..f.dim() {
                    diff[(i, i)] -= expected;
                }
                let r = diff.columns(0, f.basis().prefix_len(4)).norm();
                assert!(r < 1e-12, "{p} {q} {r}");
            }
        }
        assert_eq!(f.clifford(&RVec::zeros(6)).matrix.norm(), 0.0);
    }

    #[test]
    fn nu_commutation_and_homomorphism() {
        let f = fock(2, 6, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = sampling::random_sp_algebra(f.space(), &mut rng, 1.0);
        let b = sampling::random_sp_algebra(f.space(), &mut rng, 1.0);
        let na = f.nu_embed(&a).unwrap();
        let nb = f.nu_embed(&b).unwrap();
        for k in 0..4 {
            let v = unit(4, k);
            let lhs = na.commutator(&f.clifford(&v));
            let rhs = f.clifford(&(&a * &v));
            assert!((&lhs - &rhs).norm_on_degrees(f.basis(), 4) < 1e-10);
        }
        let bracket = &a * &b - &b * &a;
        let lhs = f.nu_embed(&bracket).unwrap();
        let rhs = na.commutator(&nb);
        assert!((&lhs - &rhs).norm_on_degrees(f.basis(), 3) < 1e-10);
        assert!(matches!(f.nu_embed(&RMat::identity(4, 4)), Err(MpcError::NotInSp { .. })));
        assert_eq!(f.nu_embed(&RMat::zeros(4, 4)).unwrap().matrix.norm(), 0.0);
    }

    #[test]
    fn muc_action_examples() {
        let f = fock(2, 3, 1.0);
        let space = Arc::clone(f.space());
        let mu = Complex64::from_polar(1.0, 0.4);
        let central = MpcElement::central(Arc::clone(&space), mu).unwrap();
        let u = f.muc_action(&central).unwrap();
        assert!((&u.matrix - CMat::identity(f.dim(), f.dim()) * mu).norm() < 1e-14);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = sampling::random_unitary(&space, &mut rng, 2.0);
        let x = MpcElement::new(Arc::clone(&space), g.clone(), mu).unwrap();
        let u = f.muc_action(&x).unwrap();
        assert!(u.shift_is_consistent(f.basis()));
        let deg1 = f.basis().degree_range(1);
        let block = u.matrix.view((deg1.start, deg1.start), (2, 2)).into_owned();
        let k_inv = space.to_complex(&g).unwrap().try_inverse().unwrap();
        assert!((block.trace() - mu * k_inv.trace()).norm() < 1e-13);
        // Unitary on each degree with respect to the Fock inner product.
        let adj = f.adjoint(&u);
        assert!((adj.matrix * &u.matrix - CMat::identity(f.dim(), f.dim())).norm() < 1e-12);
        let squeeze = RMat::from_diagonal(&RVec::from_vec(alloc::vec![2.0, 1.0, 0.5, 1.0]));
        let y = MpcElement::new(Arc::clone(&space), squeeze, Complex64::new(0.8, 0.0));
        if let Ok(y) = y {
            assert!(matches!(f.muc_action(&y), Err(MpcError::NotUnitary { .. })));
        }
    }

    #[test]
    fn infinitesimal_action_matches_finite_difference() {
        let f = fock(2, 4, 1.0);
        let space = Arc::clone(f.space());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let y = sampling::random_u_algebra(&space, &mut rng, 1.0);
        let theta = 0.37;
        let h = 1e-4;
        let at = |t: f64| {
            let x = MpcElement::new(Arc::clone(&space), expm(&(&y * t)), Complex64::from_polar(1.0, theta * t)).unwrap();
            f.muc_action(&x).unwrap().matrix
        };
        let derivative = (at(h) - at(-h)) / Complex64::new(2.0 * h, 0.0);
        let expected = f.infinitesimal_action(&y, theta).unwrap();
        let r = (derivative - &expected.matrix).columns(0, f.basis().prefix_len(3)).norm();
        assert!(r < 1e-5, "{r}");
    }
}
