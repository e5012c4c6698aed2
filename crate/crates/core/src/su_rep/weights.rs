//! Exact weight arithmetic for `su(n+1)` and `k ≅ u(n)` in the `ε`-basis, the
//! invariant pairing, Casimir constants and Weyl-type character data.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{MpcError, Result};

/// `b₁ε₁ + … + bₙεₙ` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(Vec<Rational64>);

impl Weight {
    pub fn new(coeffs: Vec<Rational64>) -> Self {
        Self(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self(coeffs.iter().map(|&c| Rational64::from_integer(c)).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self(alloc::vec![Rational64::zero(); n])
    }

    /// `ε_i`, one-based as in the usual notation.
    pub fn epsilon(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "ε index out of range");
        let mut w = Self::zero(n);
        w.0[i - 1] = Rational64::from_integer(1);
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coeffs(&self) -> &[Rational64] {
        &self.0
    }

    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Rational64, Rational64) -> Rational64) -> Self {
        assert_eq!(self.rank(), other.rank(), "weights of different rank");
        Self(self.0.iter().zip(&other.0).map(|(&a, &b)| f(a, b)).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|&c| -c).collect())
    }
}

impl Mul<Rational64> for &Weight {
    type Output = Weight;
    fn mul(self, rhs: Rational64) -> Weight {
        Weight(self.0.iter().map(|&c| c * rhs).collect())
    }
}

/// Which Casimir: the full `su(n+1)` or the isotropy algebra `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Algebra {
    Full,
    Isotropy,
}

/// Half the sum of the positive roots of `su(n+1)`: `nε₁ + (n−1)ε₂ + … + εₙ`.
pub fn rho(n: usize) -> Weight {
    Weight::from_ints(&(0..n).map(|i| (n - i) as i64).collect::<Vec<_>>())
}

/// Half the sum of the positive roots of `k`.
pub fn rho_k(n: usize) -> Weight {
    let mut two: Vec<i64> = (0..n).map(|i| 2 * (n - i) as i64).collect();
    two[0] = n as i64 - 1;
    &Weight::from_ints(&two) * Rational64::new(1, 2)
}

pub fn rho_for(n: usize, algebra: Algebra) -> Weight {
    match algebra {
        Algebra::Full => rho(n),
        Algebra::Isotropy => rho_k(n),
    }
}

/// `⟨κ, κ′⟩ = −2(Σ k_j k′_j − (Σ k_j)(Σ k′_i)/(n+1))`.
pub fn pairing(kappa: &Weight, other: &Weight) -> Rational64 {
    assert_eq!(kappa.rank(), other.rank(), "weights of different rank");
    let n = kappa.rank() as i64;
    let dot: Rational64 = kappa.0.iter().zip(&other.0).map(|(a, b)| a * b).sum();
    let s1: Rational64 = kappa.0.iter().sum();
    let s2: Rational64 = other.0.iter().sum();
    Rational64::from_integer(-2) * (dot - s1 * s2 / Rational64::from_integer(n + 1))
}

/// Non-increasing, non-negative integers.
pub fn is_dominant(hw: &Weight) -> bool {
    match hw.to_ints() {
        Some(m) => m.windows(2).all(|w| w[0] >= w[1]) && m.last().map_or(true, |&x| x >= 0),
        None => false,
    }
}

/// `k₂ ≥ … ≥ kₙ ≥ 0` with integer `k₁`.
pub fn is_k_dominant(hw: &Weight) -> bool {
    match hw.to_ints() {
        Some(k) => k[1..].windows(2).all(|w| w[0] >= w[1]) && (k.len() < 2 || k[k.len() - 1] >= 0),
        None => false,
    }
}

/// `⟨hw, 2ρ + hw⟩` for the chosen algebra; `hw` need not be integral when
/// the caller has already established it is a highest weight (the `β`, `γ`
/// weights of the spinor module carry half-integers).
pub fn casimir_constant_unchecked(hw: &Weight, algebra: Algebra) -> Rational64 {
    let two_rho = &rho_for(hw.rank(), algebra) * Rational64::from_integer(2);
    pairing(hw, &(&two_rho + hw))
}

pub fn casimir_constant(hw: &Weight, algebra: Algebra) -> Result<Rational64> {
    let ok = match algebra {
        Algebra::Full => is_dominant(hw),
        Algebra::Isotropy => is_k_dominant(hw),
    };
    if !ok {
        return Err(MpcError::NotDominant);
    }
    Ok(casimir_constant_unchecked(hw, algebra))
}

/// `(2l−k)ε₁ + lε₂ + … + lεₙ`: the `K`-type of `S^l(ℂⁿ)` twisted by `χ_k`.
pub fn slcn_ktype(n: usize, l: i64, k: i64) -> Weight {
    let mut c = alloc::vec![l; n];
    c[0] = 2 * l - k;
    Weight::from_ints(&c)
}

/// Weyl dimension of the `gl(N)` irrep with non-increasing integer highest weight.
pub fn gl_dimension(hw: &[i64]) -> u128 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..hw.len() {
        for j in i + 1..hw.len() {
            num *= (hw[i] - hw[j] + (j - i) as i64) as u128;
            den *= (j - i) as u128;
        }
    }
    num / den
}

/// Dimension of the `su(n+1)` irrep with highest weight `(m₁, …, mₙ)`.
pub fn weyl_dimension(hw: &Weight) -> Result<u128> {
    if !is_dominant(hw) {
        return Err(MpcError::NotDominant);
    }
    let mut p = hw.to_ints().expect("dominant weights are integral");
    p.push(0);
    Ok(gl_dimension(&p))
}

/// The `U(n)` weight on the lower block of `K` of an `ε`-weight.
pub fn to_unitary_coords(b: &[i64]) -> Vec<i64> {
    let n = b.len();
    let mut u: Vec<i64> = (1..n).map(|i| b[i] - b[0]).collect();
    u.push(-b[0]);
    u
}

/// Inverse of [`to_unitary_coords`].
pub fn from_unitary_coords(u: &[i64]) -> Vec<i64> {
    let n = u.len();
    let k1 = -u[n - 1];
    let mut k = alloc::vec![k1];
    k.extend((0..n - 1).map(|i| u[i] + k1));
    k
}

/// Dimension of the `K`-irrep with `K`-dominant highest weight `(k₁, …, kₙ)`.
pub fn k_dimension(hw: &Weight) -> Result<u128> {
    if !is_k_dominant(hw) {
        return Err(MpcError::NotDominant);
    }
    Ok(gl_dimension(&to_unitary_coords(&hw.to_ints().expect("integral"))))
}

/// Weight multiplicities of the `gl(N)` irrep of highest weight `top`
/// (non-increasing integers), by Gelfand–Tsetlin patterns. Keys list the
/// eigenvalues of `E₁₁, …, E_NN`.
pub fn gl_character(top: &[i64]) -> BTreeMap<Vec<i64>, u64> {
    fn descend(row: &[i64], sums: &mut Vec<i64>, out: &mut BTreeMap<Vec<i64>, u64>) {
        sums.push(row.iter().sum());
        if row.len() == 1 {
            let mut weight = Vec::with_capacity(sums.len());
            let mut below = 0;
            for s in sums.iter().rev() {
                weight.push(s - below);
                below = *s;
            }
            *out.entry(weight).or_insert(0) += 1;
            sums.pop();
            return;
        }
        let mut next = alloc::vec![0i64; row.len() - 1];
        fn choose(row: &[i64], next: &mut Vec<i64>, i: usize, sums: &mut Vec<i64>, out: &mut BTreeMap<Vec<i64>, u64>) {
            if i == next.len() {
                let snapshot = next.clone();
                descend(&snapshot, sums, out);
                return;
            }
            for x in row[i + 1]..=row[i] {
                next[i] = x;
                choose(row, next, i + 1, sums, out);
            }
        }
        choose(row, &mut next, 0, sums, out);
        sums.pop();
    }
    let mut out = BTreeMap::new();
    if top.is_empty() {
        out.insert(Vec::new(), 1);
        return out;
    }
    descend(top, &mut Vec::new(), &mut out);
    out
}

/// Weight multiplicities of the `su(n+1)` irrep in `ε`-coordinates.
pub fn su_character(hw: &Weight) -> Result<BTreeMap<Vec<i64>, u64>> {
    if !is_dominant(hw) {
        return Err(MpcError::NotDominant);
    }
    let mut p = hw.to_ints().expect("integral");
    p.push(0);
    let n = p.len() - 1;
    let mut out = BTreeMap::new();
    for (w, mult) in gl_character(&p) {
        let b: Vec<i64> = (0..n).map(|i| w[i] - w[n]).collect();
        *out.entry(b).or_insert(0) += mult;
    }
    Ok(out)
}

/// Splits a `K`-invariant multiset of `ε`-weights into `K`-irreps by peeling
/// off highest weights.
pub fn decompose_under_k(character: &BTreeMap<Vec<i64>, u64>) -> Result<BTreeMap<Vec<i64>, u64>> {
    let mut left: BTreeMap<Vec<i64>, i64> = character
        .iter()
        .map(|(b, &m)| (to_unitary_coords(b), m as i64))
        .collect();
    let mut out = BTreeMap::new();
    while let Some((top, &mult)) = left.iter().next_back() {
        let top = top.clone();
        if mult <= 0 || top.windows(2).any(|w| w[0] < w[1]) {
            return Err(MpcError::OracleMismatch("character is not a sum of K-irreps"));
        }
        for (w, m) in gl_character(&top) {
            let e = left.entry(w).or_insert(0);
            *e -= mult * m as i64;
        }
        left.retain(|_, m| *m != 0);
        if left.values().any(|&m| m < 0) {
            return Err(MpcError::OracleMismatch("character is not a sum of K-irreps"));
        }
        out.insert(from_unitary_coords(&top), mult as u64);
    }
    Ok(out)
}
