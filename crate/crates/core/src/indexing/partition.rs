//! Order isomorphisms between infinite index sets, the seven-piece
//! partition of ℕ⁺, and triangular block indexing.

use std::ops::RangeInclusive;

use crate::error::Result;
use crate::indexing::InfSet;
use crate::Index;

/// Injective partial map on ℕ⁺ assembled from order isomorphisms between
/// pairwise disjoint sources and pairwise disjoint targets.
#[derive(Clone, Debug)]
pub struct IndexMap {
    pieces: Vec<(InfSet, InfSet)>,
}

impl IndexMap {
    pub fn piecewise(pieces: Vec<(InfSet, InfSet)>) -> Self {
        IndexMap { pieces }
    }

    pub fn try_apply(&self, k: Index) -> Result<Option<Index>> {
        for (src, dst) in &self.pieces {
            if let Some(j) = src.rank(k)? {
                return dst.nth(j).map(Some);
            }
        }
        Ok(None)
    }

    pub fn try_inverse(&self, k: Index) -> Result<Option<Index>> {
        for (src, dst) in &self.pieces {
            if let Some(j) = dst.rank(k)? {
                return src.nth(j).map(Some);
            }
        }
        Ok(None)
    }

    /// Image of `k`, `None` outside the domain.
    ///
    /// Panics if an underlying enumeration stalls; use [`IndexMap::try_apply`]
    /// for scanned sets.
    pub fn apply(&self, k: Index) -> Option<Index> {
        self.try_apply(k).expect("index map enumeration stalled")
    }

    /// Preimage of `k`, `None` outside the image.
    pub fn inverse(&self, k: Index) -> Option<Index> {
        self.try_inverse(k).expect("index map enumeration stalled")
    }
}

/// `src.nth(j) ↦ dst.nth(j)`, with its partial inverse.
pub fn order_iso(src: InfSet, dst: InfSet) -> IndexMap {
    IndexMap::piecewise(vec![(src, dst)])
}

/// Σ_i = {k : k ≡ i (mod 7)} for i = 1..7 (with 7 ≡ 0).
#[derive(Clone, Copy, Debug, Default)]
pub struct SevenPartition;

impl SevenPartition {
    pub fn class_of(&self, k: Index) -> usize {
        assert!(k >= 1);
        ((k - 1) % 7 + 1) as usize
    }

    pub fn piece(&self, i: usize) -> InfSet {
        assert!((1..=7).contains(&i), "pieces are numbered 1..=7");
        InfSet::residue_class(7, i as u64 % 7)
    }

    /// Union of several pieces, as one enumerable set.
    pub fn union(&self, pieces: &[usize]) -> InfSet {
        let residues: Vec<u64> = pieces.iter().map(|&i| i as u64 % 7).collect();
        InfSet::periodic(7, &residues)
    }
}

pub fn seven_partition() -> SevenPartition {
    SevenPartition
}

/// `T(i) = i(i+1)/2`.
pub fn triangular(i: u64) -> u64 {
    i * (i + 1) / 2
}

/// Block `[T(i−1)+1, T(i)]` of width `i`.
pub fn tri_block(i: u64) -> RangeInclusive<Index> {
    assert!(i >= 1);
    triangular(i - 1) + 1..=triangular(i)
}

/// Inverse of the block layout: `r = T(i−1) + k` with `1 ≤ k ≤ i`.
pub fn tri_locate(r: Index) -> (u64, u64) {
    assert!(r >= 1);
    let mut i = ((2.0 * r as f64).sqrt()) as u64;
    while i > 1 && triangular(i - 1) >= r {
        i -= 1;
    }
    while triangular(i) < r {
        i += 1;
    }
    (i, r - triangular(i - 1))
}
