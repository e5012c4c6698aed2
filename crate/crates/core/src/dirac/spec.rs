//! Which `V_λ` occur in the spinor fields of the `χ_k` structure and in which
//! polynomial degrees.

use alloc::vec::Vec;
use core::ops::RangeInclusive;

use crate::error::{MpcError, Result};
use crate::su_rep::{is_dominant, Weight};

/// Dimension (0 or 1) of `Hom_{K,(k)}(V_λ, S^l(ℂⁿ))`.
pub fn hom_dimension(n: usize, k: i64, hw: &Weight, l: i64) -> u8 {
    if !is_dominant(hw) || hw.rank() != n || l < 0 {
        return 0;
    }
    let m = hw.to_ints().expect("dominant weights are integral");
    let ok = if n == 1 {
        let total = m[0] + k;
        total >= 0 && total % 2 == 0 && {
            let r = total / 2;
            (r - m[0]).max(0) <= l && l <= r
        }
    } else {
        let total = m[0] + m[n - 1] + k;
        total >= 0 && total % 3 == 0 && {
            let r = total / 3;
            m[n - 1] <= r
                && r <= m[0]
                && r - m[n - 1] <= l
                && l <= r
                && m[1..n - 1].iter().all(|&x| x == r)
        }
    };
    u8::from(ok)
}

/// One `su(n+1)`-isotypic piece `V_λ ⊗ (⊕_{l=b}^{r} Hom_{K,(k)}(V_λ, S^l))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpinorBlockSpec {
    pub n: usize,
    pub k: i64,
    pub r: i64,
    pub b: i64,
}

impl SpinorBlockSpec {
    pub fn new(n: usize, k: i64, r: i64, b: i64) -> Result<Self> {
        if n == 0 {
            return Err(MpcError::InvalidSpec("n must be positive"));
        }
        if r < 0 || b < 0 || b > r {
            return Err(MpcError::InvalidSpec("need 0 <= b <= r"));
        }
        if r + b < k {
            return Err(MpcError::InvalidSpec("need r + b >= k"));
        }
        if n == 1 && b != (k - r).max(0) {
            return Err(MpcError::InvalidSpec("for n = 1 the bottom degree is max(0, k - r)"));
        }
        Ok(Self { n, k, r, b })
    }

    /// `(2r+b−k)ε₁ + rε₂ + … + rε_{n−1} + (r−b)εₙ`; for `n = 1`, `(2r−k)ε₁`.
    pub fn lambda(&self) -> Weight {
        if self.n == 1 {
            return Weight::from_ints(&[2 * self.r - self.k]);
        }
        let mut m = alloc::vec![self.r; self.n];
        m[0] = 2 * self.r + self.b - self.k;
        m[self.n - 1] = self.r - self.b;
        Weight::from_ints(&m)
    }

    pub fn levels(&self) -> RangeInclusive<i64> {
        self.b..=self.r
    }

    pub fn level_count(&self) -> usize {
        (self.r - self.b + 1) as usize
    }

    /// Every spec with `r ≤ r_max`, ordered by `(r, b)`.
    pub fn enumerate(n: usize, k: i64, r_max: i64) -> Vec<Self> {
        let mut out = Vec::new();
        for r in 0..=r_max {
            if n == 1 {
                if let Ok(s) = Self::new(n, k, r, (k - r).max(0)) {
                    out.push(s);
                }
                continue;
            }
            for b in 0..=r {
                if let Ok(s) = Self::new(n, k, r, b) {
                    out.push(s);
                }
            }
        }
        out
    }
}
