//! `K`-equivariant maps `V_λ → S^l(ℂⁿ) ⊗ χ_k` as explicit matrices.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{MpcError, Result};
use crate::fock::homogeneous_exponents;
use crate::linalg::{null_space, CMat, RMat};
use crate::su_rep::Irrep;

/// Relative singular-value threshold for the equivariance system.
pub const INTERTWINER_THRESHOLD: f64 = 1e-7;

/// Solution space of the equivariance equations at one degree.
#[derive(Debug, Clone)]
pub struct IntertwinerSpace {
    pub level: i64,
    /// Number of unknowns left after the torus-weight restriction.
    pub unknowns: usize,
    /// Each basis element is a real `dim S^l × dim V_λ` matrix.
    pub basis: Vec<RMat>,
}

impl IntertwinerSpace {
    pub fn nullity(&self) -> usize {
        self.basis.len()
    }
}

/// Solves `L·π(W) = ρ′(W)·L` for all off-diagonal `W = E_{ab}`, `1 ≤ a ≠ b ≤ n`,
/// where `ρ′(E_{ab}) = −z_b ∂_a` on `S^l(ℂⁿ)`.
///
/// The diagonal equations are imposed by allowing only the entries whose torus
/// weights agree, so the unknowns are `L[β, v]` with
/// `(π(E_{aa} − E_{00}))` eigenvalue of `v` equal to `(k − l) − β_a`.
pub fn solve_intertwiner(irrep: &Irrep, k: i64, l: i64) -> Result<IntertwinerSpace> {
    let n = irrep.rank();
    let d = irrep.dim();
    if l < 0 {
        return Ok(IntertwinerSpace {
            level: l,
            unknowns: 0,
            basis: Vec::new(),
        });
    }
    let monomials = homogeneous_exponents(n, l as u32);
    let index: BTreeMap<&[u32], usize> = monomials
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_slice(), i))
        .collect();

    // Torus weight of a basis vector under E_aa − E_00, a = 1..n.
    let relative = |w: &[i64]| -> Vec<i64> {
        (1..=n)
            .map(|a| if a < n { w[a] - w[0] } else { -w[0] })
            .collect()
    };
    let mut by_target: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    for (v, w) in irrep.weights().iter().enumerate() {
        let rel = relative(w);
        let beta: Option<Vec<u32>> = rel
            .iter()
            .map(|&x| u32::try_from(k - l - x).ok())
            .collect();
        if let Some(beta) = beta {
            if index.contains_key(beta.as_slice()) {
                by_target.entry(beta).or_default().push(v);
            }
        }
    }
    let mut unknown_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (beta, vs) in &by_target {
        let row = index[beta.as_slice()];
        for &v in vs {
            let next = unknown_of.len();
            unknown_of.insert((row, v), next);
        }
    }
    let unknowns = unknown_of.len();
    if unknowns == 0 {
        return Ok(IntertwinerSpace {
            level: l,
            unknowns,
            basis: Vec::new(),
        });
    }

    // Equation rows keyed by (a, b, output row, output column).
    let mut rows: BTreeMap<(usize, usize, usize, usize), Vec<(usize, f64)>> = BTreeMap::new();
    for a in 1..=n {
        for b in 1..=n {
            if a == b {
                continue;
            }
            let g = irrep.generator(a, b);
            for (&(mu, i), &u) in &unknown_of {
                // (L·G)[mu, j] += L[mu, i] G[i, j]
                for j in 0..d {
                    let c = g[(i, j)];
                    if c != 0.0 {
                        rows.entry((a, b, mu, j)).or_default().push((u, c));
                    }
                }
                // −(ρ′ L)[nu, i] with ρ′ z^β = −β_a z^{β − e_a + e_b}
                let beta = &monomials[mu];
                let ea = beta[a - 1];
                if ea > 0 {
                    let mut target = beta.clone();
                    target[a - 1] -= 1;
                    target[b - 1] += 1;
                    let nu = index[target.as_slice()];
                    rows.entry((a, b, nu, i)).or_default().push((u, f64::from(ea)));
                }
            }
        }
    }
    let mut system = CMat::zeros(rows.len(), unknowns);
    for (r, entries) in rows.values().enumerate() {
        for &(u, c) in entries {
            system[(r, u)] += Complex64::new(c, 0.0);
        }
    }
    let ns = null_space(&system, INTERTWINER_THRESHOLD);
    if let Some(ratio) = ns.gap.ambiguous_ratio() {
        return Err(MpcError::RankAmbiguous {
            ratio,
            threshold: INTERTWINER_THRESHOLD,
        });
    }
    let s = monomials.len();
    let basis = (0..ns.dim())
        .map(|c| {
            let col = ns.basis.column(c);
            // Real system: rotate the phase away before taking real parts.
            let pivot = col.iter().copied().fold(Complex64::new(0.0, 0.0), |acc, z| {
                if z.norm() > acc.norm() {
                    z
                } else {
                    acc
                }
            });
            let phase = pivot.conj() / pivot.norm();
            let mut m = RMat::zeros(s, d);
            for (&(mu, i), &u) in &unknown_of {
                m[(mu, i)] = (col[u] * phase).re;
            }
            m
        })
        .collect();
    Ok(IntertwinerSpace {
        level: l,
        unknowns,
        basis,
    })
}

/// The unique intertwiner at level `l`, normalised to unit Frobenius norm with
/// its largest entry positive.
pub fn normalized_intertwiner(irrep: &Irrep, k: i64, l: i64) -> Result<RMat> {
    let space = solve_intertwiner(irrep, k, l)?;
    if space.nullity() != 1 {
        return Err(MpcError::OracleMismatch("intertwiner space is not one-dimensional"));
    }
    let mut m = space.basis.into_iter().next().expect("one basis element");
    let norm = m.norm();
    m /= norm;
    let largest = m.iamax_full();
    if m[largest] < 0.0 {
        m = -m;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac::hom_dimension;
    use crate::su_rep::Weight;

    #[test]
    fn nullity_matches_prediction_small() {
        for (m, k) in [(alloc::vec![3i64, 0], 0i64), (alloc::vec![2, 1], 0), (alloc::vec![4, 2], 0), (alloc::vec![2, 0], 1)] {
            let hw = Weight::from_ints(&m);
            let irrep = Irrep::build(&hw).unwrap();
            for l in 0..=4 {
                let space = solve_intertwiner(&irrep, k, l).unwrap();
                assert_eq!(space.nullity(), usize::from(hom_dimension(2, k, &hw, l)), "m={m:?} k={k} l={l}");
            }
        }
    }

    #[test]
    fn intertwiner_is_equivariant() {
        let hw = Weight::from_ints(&[4, 2]);
        let irrep = Irrep::build(&hw).unwrap();
        let l = 1;
        let m = normalized_intertwiner(&irrep, 0, l).unwrap();
        assert!((m.norm() - 1.0).abs() < 1e-12);
        let monomials = homogeneous_exponents(2, l as u32);
        let idx = |e: &[u32]| monomials.iter().position(|x| x.as_slice() == e).unwrap();
        // W = E_12: ρ′ z^β = −β_1 z^{β − e_1 + e_2}
        let s = monomials.len();
        let mut rho = RMat::zeros(s, s);
        for (j, e) in monomials.iter().enumerate() {
            if e[0] > 0 {
                let mut t = e.clone();
                t[0] -= 1;
                t[1] += 1;
                rho[(idx(&t), j)] -= f64::from(e[0]);
            }
        }
        let lhs = &m * irrep.generator(1, 2);
        let rhs = &rho * &m;
        assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn n_one_has_no_equations() {
        let hw = Weight::from_ints(&[2]);
        let irrep = Irrep::build(&hw).unwrap();
        let dims: Vec<usize> = (0..4).map(|l| solve_intertwiner(&irrep, 0, l).unwrap().nullity()).collect();
        assert_eq!(dims, alloc::vec![1, 1, 0, 0]);
    }
}
