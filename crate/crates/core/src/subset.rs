//! Left-vertex subsets and the bitmask sweeps over them.

use serde::{Deserialize, Serialize};

/// A set of left-vertex positions, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct LeftSet(Vec<usize>);

impl LeftSet {
    pub fn new(mut positions: Vec<usize>) -> Self {
        positions.sort_unstable();
        positions.dedup();
        LeftSet(positions)
    }

    pub fn empty() -> Self {
        LeftSet(Vec::new())
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        LeftSet((0..n).collect())
    }

    pub fn from_mask(mask: u64) -> Self {
        LeftSet(mask_positions(mask).collect())
    }

    /// `None` when a position does not fit in 64 bits.
    pub fn to_mask(&self) -> Option<u64> {
        self.0
            .iter()
            .try_fold(0u64, |m, &p| (p < 64).then(|| m | (1 << p)))
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn is_subset(&self, other: &LeftSet) -> bool {
        self.0.iter().all(|&p| other.contains(p))
    }

    pub fn union(&self, other: &LeftSet) -> LeftSet {
        LeftSet::new(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn with(&self, p: usize) -> LeftSet {
        let mut v = self.0.clone();
        v.push(p);
        LeftSet::new(v)
    }

    /// Membership flags over `0..n`.
    pub fn flags(&self, n: usize) -> Vec<bool> {
        let mut f = vec![false; n];
        for &p in &self.0 {
            if p < n {
                f[p] = true;
            }
        }
        f
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<usize> for LeftSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        LeftSet::new(iter.into_iter().collect())
    }
}

pub fn mask_positions(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let p = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(p)
        }
    })
}

/// Every subset of an `n`-set as a mask, ordered by ascending popcount and
/// then by numeric value. `n` must be below 64.
pub fn masks_by_popcount(n: usize) -> Vec<u64> {
    assert!(n < 64);
    let mut out = Vec::with_capacity(1usize << n);
    for k in 0..=n {
        if k == 0 {
            out.push(0);
            continue;
        }
        // Gosper's hack walks the k-subsets in increasing numeric order.
        let mut m: u64 = (1 << k) - 1;
        let limit: u64 = 1 << n;
        while m < limit {
            out.push(m);
            let c = m & m.wrapping_neg();
            let r = m + c;
            m = (((r ^ m) >> 2) / c) | r;
        }
    }
    out
}

/// Total order used for witnesses: popcount first, then numeric value.
pub fn popcount_key(mask: u64) -> (u32, u64) {
    (mask.count_ones(), mask)
}

/// All submasks of `mask`, including `mask` and `0`.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & mask)
        };
        Some(cur)
    })
}
