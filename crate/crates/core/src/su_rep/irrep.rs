//! Highest-weight representations of `su(n+1)` as explicit matrices.
//!
//! `V_λ` is realised inside the polynomials in the entries of an
//! `(n+1) × n` matrix `x`, where `E_{ab}` acts by `Σ_i x_{ai} ∂/∂x_{bi}`. The
//! highest-weight vector is a product of leading minors; lowering operators
//! generate the rest and each weight space is orthonormalised for the Fischer
//! inner product `⟨x^α, x^β⟩ = α! δ_{αβ}`, which makes `π(E_{ab})* = π(E_{ba})`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_rational::Rational64;

use super::weights::{self, Algebra, Weight};
use crate::error::{MpcError, Result};
use crate::linalg::{math, CMat, RMat};

pub const DEFAULT_DIM_CAP: usize = 5000;

type Monomial = Vec<u8>;

/// Polynomial with coefficients stored as `c_α √α!`, so the Fischer product is
/// the Euclidean one on the stored values.
#[derive(Debug, Clone, Default)]
struct Poly(BTreeMap<Monomial, f64>);

impl Poly {
    fn dot(&self, other: &Self) -> f64 {
        let (small, large) = if self.0.len() <= other.0.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .0
            .iter()
            .filter_map(|(m, c)| large.0.get(m).map(|d| c * d))
            .sum()
    }

    fn norm(&self) -> f64 {
        math::sqrt(self.dot(self))
    }

    fn axpy(&mut self, s: f64, other: &Self) {
        for (m, c) in &other.0 {
            *self.0.entry(m.clone()).or_insert(0.0) += s * c;
        }
    }

    fn scale(&mut self, s: f64) {
        for c in self.0.values_mut() {
            *c *= s;
        }
    }

    fn prune(&mut self, threshold: f64) {
        self.0.retain(|_, c| c.abs() > threshold);
    }
}

struct Model {
    rows: usize,
    cols: usize,
}

impl Model {
    fn var(&self, a: usize, i: usize) -> usize {
        a * self.cols + i
    }

    /// `Σ_i x_{ai} ∂/∂x_{bi}` in normalised coordinates.
    fn apply(&self, a: usize, b: usize, p: &Poly) -> Poly {
        let mut out = BTreeMap::new();
        for (m, &c) in &p.0 {
            for i in 0..self.cols {
                let vb = self.var(b, i);
                let eb = m[vb];
                if eb == 0 {
                    continue;
                }
                if a == b {
                    *out.entry(m.clone()).or_insert(0.0) += c * f64::from(eb);
                    continue;
                }
                let va = self.var(a, i);
                let factor = math::sqrt(f64::from(eb) * (f64::from(m[va]) + 1.0));
                let mut m2 = m.clone();
                m2[vb] -= 1;
                m2[va] += 1;
                *out.entry(m2).or_insert(0.0) += c * factor;
            }
        }
        Poly(out)
    }

    /// `E_{aa}` eigenvalues of a monomial: total degree in each row.
    fn row_degrees(&self, m: &Monomial) -> Vec<i64> {
        (0..self.rows)
            .map(|a| (0..self.cols).map(|i| i64::from(m[self.var(a, i)])).sum())
            .collect()
    }

    /// Leading `k × k` minor of `x` in plain coefficients.
    fn minor(&self, k: usize) -> BTreeMap<Monomial, f64> {
        let mut out = BTreeMap::new();
        let mut perm: Vec<usize> = (0..k).collect();
        permutations(&mut perm, 0, &mut |p, sign| {
            let mut m = alloc::vec![0u8; self.rows * self.cols];
            for (i, &a) in p.iter().enumerate() {
                m[self.var(a, i)] += 1;
            }
            *out.entry(m).or_insert(0.0) += sign;
        });
        out
    }
}

fn permutations(p: &mut Vec<usize>, start: usize, visit: &mut impl FnMut(&[usize], f64)) {
    fn go(p: &mut Vec<usize>, start: usize, sign: f64, visit: &mut impl FnMut(&[usize], f64)) {
        if start == p.len() {
            visit(p, sign);
            return;
        }
        for i in start..p.len() {
            p.swap(start, i);
            go(p, start + 1, if i == start { sign } else { -sign }, visit);
            p.swap(start, i);
        }
    }
    go(p, start, 1.0, visit);
}

fn multiply(a: &BTreeMap<Monomial, f64>, b: &BTreeMap<Monomial, f64>) -> BTreeMap<Monomial, f64> {
    let mut out = BTreeMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            *out.entry(m).or_insert(0.0) += ca * cb;
        }
    }
    out.retain(|_, c: &mut f64| *c != 0.0);
    out
}

fn normalise_coeffs(plain: BTreeMap<Monomial, f64>) -> Poly {
    Poly(
        plain
            .into_iter()
            .map(|(m, c)| {
                let fact: f64 = m.iter().map(|&k| crate::fock::factorial(u32::from(k))).product();
                (m, c * math::sqrt(fact))
            })
            .collect(),
    )
}

/// `π(E_{ab})`, `0 ≤ a, b ≤ n`, on an orthonormal weight basis of `V_λ`. The
/// diagonal generators are shifted by `−|λ|/(n+1)` so that traceless
/// combinations give the `su(n+1)` action; all matrices are real.
#[derive(Debug, Clone)]
pub struct Irrep {
    n: usize,
    highest_weight: Weight,
    weights: Vec<Vec<i64>>,
    generators: Vec<RMat>,
}

impl Irrep {
    pub fn build(hw: &Weight) -> Result<Self> {
        Self::build_with_cap(hw, DEFAULT_DIM_CAP)
    }

    pub fn build_with_cap(hw: &Weight, cap: usize) -> Result<Self> {
        let dim = weights::weyl_dimension(hw)?;
        if dim > cap as u128 {
            return Err(MpcError::DimensionOverflow { dim, cap });
        }
        let n = hw.rank();
        let m = hw.to_ints().expect("dominant weights are integral");
        let model = Model { rows: n + 1, cols: n };
        let mut top = BTreeMap::new();
        top.insert(alloc::vec![0u8; (n + 1) * n], 1.0);
        for k in 1..=n {
            let power = m[k - 1] - m.get(k).copied().unwrap_or(0);
            if power > 0 {
                let minor = model.minor(k);
                for _ in 0..power {
                    top = multiply(&top, &minor);
                }
            }
        }
        let mut v = normalise_coeffs(top);
        let norm = v.norm();
        v.scale(1.0 / norm);

        let mut basis: Vec<Poly> = Vec::new();
        let mut gl_weights: Vec<Vec<i64>> = Vec::new();
        let mut by_weight: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        let weight_of = |p: &Poly| model.row_degrees(p.0.keys().next().expect("nonzero vector"));
        let push = |p: Poly, basis: &mut Vec<Poly>, gl_weights: &mut Vec<Vec<i64>>, by_weight: &mut BTreeMap<Vec<i64>, Vec<usize>>| {
            let w = weight_of(&p);
            by_weight.entry(w.clone()).or_default().push(basis.len());
            gl_weights.push(w);
            basis.push(p);
        };
        push(v, &mut basis, &mut gl_weights, &mut by_weight);
        let mut next = 0;
        while next < basis.len() {
            for a in 0..=n {
                for b in 0..a {
                    let mut w = model.apply(a, b, &basis[next]);
                    let raw = w.norm();
                    if raw < 1e-12 {
                        continue;
                    }
                    let key = weight_of(&w);
                    let peers = by_weight.get(&key).cloned().unwrap_or_default();
                    for _ in 0..2 {
                        for &j in &peers {
                            let c = basis[j].dot(&w);
                            w.axpy(-c, &basis[j]);
                        }
                    }
                    let left = w.norm();
                    if left > 1e-9 * raw.max(1.0) {
                        w.scale(1.0 / left);
                        w.prune(1e-15);
                        push(w, &mut basis, &mut gl_weights, &mut by_weight);
                        if basis.len() > cap {
                            return Err(MpcError::DimensionOverflow {
                                dim: basis.len() as u128,
                                cap,
                            });
                        }
                    }
                }
            }
            next += 1;
        }
        if basis.len() as u128 != dim {
            return Err(MpcError::OracleMismatch("constructed dimension differs from the Weyl dimension"));
        }

        let size = basis.len();
        let shift = m.iter().sum::<i64>() as f64 / (n + 1) as f64;
        let mut generators = Vec::with_capacity((n + 1) * (n + 1));
        for a in 0..=n {
            for b in 0..=n {
                let mut g = RMat::zeros(size, size);
                for (j, u) in basis.iter().enumerate() {
                    let image = model.apply(a, b, u);
                    if image.0.is_empty() {
                        continue;
                    }
                    let key = weight_of(&image);
                    if let Some(peers) = by_weight.get(&key) {
                        for &i in peers {
                            g[(i, j)] = basis[i].dot(&image);
                        }
                    }
                }
                if a == b {
                    for i in 0..size {
                        g[(i, i)] -= shift;
                    }
                }
                generators.push(g);
            }
        }
        let weights = gl_weights
            .iter()
            .map(|w| (0..n).map(|i| w[i] - w[n]).collect())
            .collect();
        Ok(Self {
            n,
            highest_weight: hw.clone(),
            weights,
            generators,
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn highest_weight(&self) -> &Weight {
        &self.highest_weight
    }

    /// `ε`-weight of each basis vector.
    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn weight_multiset(&self) -> BTreeMap<Vec<i64>, u64> {
        let mut out = BTreeMap::new();
        for w in &self.weights {
            *out.entry(w.clone()).or_insert(0) += 1;
        }
        out
    }

    /// `π(E_{ab})` (shifted to be traceless when `a = b`).
    pub fn generator(&self, a: usize, b: usize) -> &RMat {
        &self.generators[a * (self.n + 1) + b]
    }

    /// `π(X) = Σ X_{ab} π(E_{ab})` for a traceless `(n+1) × (n+1)` matrix.
    pub fn represent(&self, x: &CMat) -> CMat {
        let mut out = CMat::zeros(self.dim(), self.dim());
        for a in 0..=self.n {
            for b in 0..=self.n {
                let c = x[(a, b)];
                if c != Complex64::new(0.0, 0.0) {
                    out += self.generator(a, b).map(|v| c * v);
                }
            }
        }
        out
    }

    /// Largest violation of `[E_{ab}, E_{cd}] = δ_{bc}E_{ad} − δ_{da}E_{cb}`.
    pub fn commutation_residual(&self) -> f64 {
        let n1 = self.n + 1;
        let id = RMat::identity(self.dim(), self.dim());
        // Traceless shifts cancel in commutators except through δ-terms on
        // the diagonal, so compare against unshifted generators.
        let shift = self.highest_weight.to_ints().expect("integral").iter().sum::<i64>() as f64 / n1 as f64;
        let raw = |a: usize, b: usize| {
            if a == b {
                self.generator(a, b) + &id * shift
            } else {
                self.generator(a, b).clone()
            }
        };
        let mut worst: f64 = 0.0;
        for a in 0..n1 {
            for b in 0..n1 {
                for c in 0..n1 {
                    for d in 0..n1 {
                        let (x, y) = (raw(a, b), raw(c, d));
                        let mut expected = RMat::zeros(self.dim(), self.dim());
                        if b == c {
                            expected += raw(a, d);
                        }
                        if d == a {
                            expected -= raw(c, b);
                        }
                        worst = worst.max((&x * &y - &y * &x - expected).norm());
                    }
                }
            }
        }
        worst
    }

    /// `Σ B̃^{rs} π(X_r) π(X_s)` with `B̃(X, Y) = −½ Tr(XY)`, over a basis of
    /// `su(n+1)` or of `k`.
    pub fn casimir_matrix(&self, algebra: Algebra) -> CMat {
        let basis = compact_basis(self.n, algebra);
        casimir_from(&basis, |x| self.represent(x), self.dim())
    }

    /// `⟨λ, 2ρ + λ⟩`.
    pub fn casimir_constant(&self) -> Rational64 {
        weights::casimir_constant_unchecked(&self.highest_weight, Algebra::Full)
    }
}

/// A real basis of `su(n+1)` (or of `k`) as complex matrices.
pub fn compact_basis(n: usize, algebra: Algebra) -> Vec<CMat> {
    let n1 = n + 1;
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    let mut out = Vec::new();
    let first = match algebra {
        Algebra::Full => 0,
        Algebra::Isotropy => 1,
    };
    for a in first..n1 {
        for b in a + 1..n1 {
            let mut x = CMat::zeros(n1, n1);
            x[(a, b)] = one;
            x[(b, a)] = -one;
            out.push(x);
            let mut y = CMat::zeros(n1, n1);
            y[(a, b)] = i;
            y[(b, a)] = i;
            out.push(y);
        }
    }
    for a in 0..n {
        let mut h = CMat::zeros(n1, n1);
        h[(a, a)] = i;
        h[(a + 1, a + 1)] = -i;
        out.push(h);
    }
    out
}

/// `Σ B̃^{rs} ρ(X_r) ρ(X_s)` for a representation `ρ` given as a closure.
pub fn casimir_from(basis: &[CMat], rep: impl Fn(&CMat) -> CMat, dim: usize) -> CMat {
    let k = basis.len();
    let gram = RMat::from_fn(k, k, |r, s| -0.5 * (&basis[r] * &basis[s]).trace().re);
    let inv = gram.try_inverse().expect("invariant form is non-degenerate");
    let images: Vec<CMat> = basis.iter().map(&rep).collect();
    let mut out = CMat::zeros(dim, dim);
    for r in 0..k {
        for s in 0..k {
            if inv[(r, s)].abs() > 1e-14 {
                out += &images[r] * &images[s] * Complex64::new(inv[(r, s)], 0.0);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn build(m: &[i64]) -> Irrep {
        Irrep::build(&Weight::from_ints(m)).unwrap()
    }

    #[test]
    fn su2_irreps() {
        for m in 0..5 {
            let v = build(&[m]);
            assert_eq!(v.dim(), m as usize + 1);
            let h = v.generator(0, 0) - v.generator(1, 1);
            let mut diag: Vec<f64> = (0..v.dim()).map(|i| h[(i, i)]).collect();
            diag.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let expected: Vec<f64> = (0..=m).map(|k| (2 * k - m) as f64).collect();
            assert_eq!(diag, expected);
        }
    }

    #[test]
    fn defining_representation() {
        let v = build(&[1, 0]);
        assert_eq!(v.dim(), 3);
        assert!(v.commutation_residual() < 1e-12);
        let off = v.generator(1, 0);
        assert!((off.norm() - 1.0).abs() < 1e-12);
        assert!((v.generator(0, 0).trace()).abs() < 1e-12);
    }

    #[test]
    fn dimension_27() {
        let v = build(&[4, 2]);
        assert_eq!(v.dim(), 27);
        assert!(v.commutation_residual() < 1e-9);
        assert_eq!(v.weight_multiset(), weights::su_character(&Weight::from_ints(&[4, 2])).unwrap());
    }

    #[test]
    fn compact_form_is_antihermitean() {
        let v = build(&[2, 1]);
        for x in compact_basis(2, Algebra::Full) {
            let p = v.represent(&x);
            assert!((&p + p.adjoint()).norm() < 1e-12);
        }
    }

    #[test]
    fn casimir_matches_pairing() {
        for m in [[1, 0], [2, 1], [3, 0], [2, 2]] {
            let v = build(&m);
            let c = v.casimir_matrix(Algebra::Full);
            let expected = v.casimir_constant().to_f64().unwrap();
            let diff = &c - CMat::identity(v.dim(), v.dim()) * Complex64::new(expected, 0.0);
            assert!(diff.norm() < 1e-10, "{m:?}: {expected}");
        }
        let c = build(&[1, 0]).casimir_constant();
        assert!(c < Rational64::from_integer(0));
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(matches!(Irrep::build(&Weight::from_ints(&[0, 1])), Err(MpcError::NotDominant)));
        assert!(matches!(
            Irrep::build_with_cap(&Weight::from_ints(&[4, 2]), 20),
            Err(MpcError::DimensionOverflow { dim: 27, cap: 20 })
        ));
    }

    #[test]
    fn rank_three() {
        let v = build(&[2, 1, 0]);
        assert_eq!(v.dim(), 20);
        assert!(v.commutation_residual() < 1e-9);
    }
}
