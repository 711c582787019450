//! Seeded samplers for finite-support test matrices.

use std::collections::BTreeMap;

use rand::Rng;

use crate::ring::BaseRing;
use crate::rowfin::{FinVec, RowFiniteMap};
use crate::Index;

/// Integer entries are drawn from `[-INT_BOUND, INT_BOUND]`.
pub const INT_BOUND: i64 = 9;

/// Up to `nonzeros` random entries inside the `corner × corner` block.
pub fn random_sparse<R: Rng + ?Sized>(ring: &BaseRing, rng: &mut R, corner: Index, nonzeros: usize) -> RowFiniteMap {
    let mut rows: BTreeMap<Index, FinVec> = BTreeMap::new();
    for _ in 0..nonzeros {
        let a = rng.gen_range(1..=corner);
        let b = rng.gen_range(1..=corner);
        let c = ring.random(rng, INT_BOUND);
        rows.entry(a).or_insert_with(|| FinVec::zero(ring)).add_at(b, &c);
    }
    RowFiniteMap::from_rows(ring, "random", rows)
}

/// Entries `(i, k)` with `1 ≤ k ≤ i ≤ n`, each drawn independently.
pub fn random_lower<R: Rng + ?Sized>(ring: &BaseRing, rng: &mut R, n: Index) -> RowFiniteMap {
    random_band(ring, rng, n, |i| 1..=i)
}

/// Entries `(i, k)` with `i ≤ k ≤ n`, each drawn independently.
pub fn random_upper<R: Rng + ?Sized>(ring: &BaseRing, rng: &mut R, n: Index) -> RowFiniteMap {
    random_band(ring, rng, n, |i| i..=n)
}

/// Entries `(i, k)` with `i, k ≤ n`.
pub fn random_square<R: Rng + ?Sized>(ring: &BaseRing, rng: &mut R, n: Index) -> RowFiniteMap {
    random_band(ring, rng, n, |_| 1..=n)
}

fn random_band<R: Rng + ?Sized>(
    ring: &BaseRing,
    rng: &mut R,
    n: Index,
    cols: impl Fn(Index) -> std::ops::RangeInclusive<Index>,
) -> RowFiniteMap {
    let rows: BTreeMap<Index, FinVec> = (1..=n)
        .map(|i| (i, FinVec::from_entries(ring, cols(i).map(|k| (k, ring.random(rng, INT_BOUND))).collect::<Vec<_>>())))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    RowFiniteMap::from_rows(ring, "random", rows)
}
