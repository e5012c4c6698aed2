//! Restriction of `su(n+1)` irreps to `K ≅ U(n)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::weights::{self, Weight};
use crate::error::{MpcError, Result};

/// `K`-types of an `su(n+1)` irrep with their multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchingTable {
    pub highest_weight: Weight,
    pub entries: Vec<(Weight, u64)>,
}

impl BranchingTable {
    pub fn total_dimension(&self) -> u128 {
        self.entries
            .iter()
            .map(|(w, m)| weights::k_dimension(w).expect("K-dominant entry") * u128::from(*m))
            .sum()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.entries.iter().all(|(_, m)| *m == 1)
    }

    pub fn contains(&self, k_type: &Weight) -> bool {
        self.entries.iter().any(|(w, _)| w == k_type)
    }

    /// Entries keyed by integer `K`-weight.
    pub fn as_map(&self) -> BTreeMap<Vec<i64>, u64> {
        self.entries
            .iter()
            .map(|(w, m)| (w.to_ints().expect("integral"), *m))
            .collect()
    }
}

/// Enumerates the `K`-types of `V_λ` by the interlacing rule
/// `m₁ ≥ k₂+k̃ ≥ m₂ ≥ … ≥ kₙ+k̃ ≥ mₙ ≥ k̃ ≥ 0`, `k₁ = Σm − Σ_{j≥2} k_j − (n+1)k̃`.
pub fn branch_to_k(hw: &Weight) -> Result<BranchingTable> {
    if !weights::is_dominant(hw) {
        return Err(MpcError::NotDominant);
    }
    let m = hw.to_ints().expect("integral");
    let n = m.len();
    let total: i64 = m.iter().sum();
    let mut counts: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    for kt in 0..=m[n - 1] {
        let mut tail = alloc::vec![0i64; n - 1];
        fn fill(
            m: &[i64],
            kt: i64,
            j: usize,
            tail: &mut Vec<i64>,
            total: i64,
            counts: &mut BTreeMap<Vec<i64>, u64>,
        ) {
            let n = m.len();
            if j == n - 1 {
                let k1 = total - tail.iter().sum::<i64>() - (n as i64 + 1) * kt;
                let mut k = alloc::vec![k1];
                k.extend_from_slice(tail);
                *counts.entry(k).or_insert(0) += 1;
                return;
            }
            for x in (m[j + 1] - kt)..=(m[j] - kt) {
                tail[j] = x;
                fill(m, kt, j + 1, tail, total, counts);
            }
        }
        fill(&m, kt, 0, &mut tail, total, &mut counts);
    }
    Ok(BranchingTable {
        highest_weight: hw.clone(),
        entries: counts
            .into_iter()
            .map(|(k, c)| (Weight::from_ints(&k), c))
            .collect(),
    })
}

/// `K`-types obtained by decomposing a weight multiset under `K`.
pub fn branch_from_character(hw: &Weight, character: &BTreeMap<Vec<i64>, u64>) -> Result<BranchingTable> {
    let decomposed = weights::decompose_under_k(character)?;
    Ok(BranchingTable {
        highest_weight: hw.clone(),
        entries: decomposed
            .into_iter()
            .map(|(k, c)| (Weight::from_ints(&k), c))
            .collect(),
    })
}
