//! Turning a family of infinite index sets into either a nested chain or a
//! pairwise disjoint family of infinite subsets.
//!
//! Which of the two shapes a given family admits is not decidable; callers
//! pick the procedure and supply the evidence it needs.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::indexing::InfSet;
use crate::Index;

/// `bars(1) = family(1)`, `bars(j+1) = bars(j) ∩ family(j+1)`, for the first
/// `depth` members. Each bar is probed once so an empty prefix intersection
/// surfaces as a stall here rather than later.
pub fn nested_refine(family: &[InfSet], depth: usize, stall_bound: u64) -> Result<Vec<InfSet>> {
    let depth = depth.min(family.len());
    let mut bars: Vec<InfSet> = Vec::with_capacity(depth);
    for (j, set) in family.iter().take(depth).enumerate() {
        let bar = match bars.last() {
            None => set.clone(),
            Some(prev) => InfSet::intersection(vec![prev.clone(), set.clone()], stall_bound),
        };
        bar.nth(1).map_err(|e| match e {
            Error::Stall { set, probes } => Error::Stall { set: format!("bar {} = {set}", j + 1), probes },
            other => other,
        })?;
        bars.push(bar);
    }
    Ok(bars)
}

/// `bars(1) = Δ₁`, `bars(j) = Δ_j ∖ ⋃_{i<j} overlaps(i, j)`.
///
/// `overlaps(i, j)` (1-based, `i < j`) must be exactly `Δ_i ∩ Δ_j`. That is
/// spot-checked on every element of `Δ_j` up to `spot_bound`, and every listed
/// overlap element must lie in both sets.
pub fn disjointify(
    deltas: &[InfSet],
    overlaps: impl Fn(usize, usize) -> BTreeSet<Index>,
    spot_bound: Index,
) -> Result<Vec<InfSet>> {
    let mut bars = Vec::with_capacity(deltas.len());
    for j in 1..=deltas.len() {
        let dj = &deltas[j - 1];
        let mut removed = BTreeSet::new();
        let probe = dj.elements_upto(spot_bound)?;
        for i in 1..j {
            let di = &deltas[i - 1];
            let given = overlaps(i, j);
            if let Some(&bad) = given.iter().find(|&&k| !(di.contains(k) && dj.contains(k))) {
                return Err(Error::Descriptor(format!(
                    "overlap ({i}, {j}) lists {bad}, which is not in both sets"
                )));
            }
            if let Some(&missing) = probe.iter().find(|&&k| di.contains(k) && !given.contains(&k)) {
                return Err(Error::IncompleteOverlap { i, j, element: missing });
            }
            removed.extend(given);
        }
        bars.push(if removed.is_empty() { dj.clone() } else { InfSet::difference(dj.clone(), removed) });
    }
    Ok(bars)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_examples() {
        let family: Vec<InfSet> = (1..=5).map(|j| InfSet::multiples(1 << j)).collect();
        let bars = nested_refine(&family, 5, 10_000).unwrap();
        for (j, bar) in bars.iter().enumerate() {
            let m = 1u64 << (j + 1);
            assert_eq!(bar.first(20).unwrap(), (1..=20).map(|t| t * m).collect::<Vec<_>>());
        }

        let bars = nested_refine(&[InfSet::evens(), InfSet::multiples(3)], 2, 10_000).unwrap();
        assert_eq!(bars[1].first(5).unwrap(), [6, 12, 18, 24, 30]);

        let err = nested_refine(&[InfSet::evens(), InfSet::odds()], 2, 10_000).unwrap_err();
        assert!(matches!(err, Error::Stall { probes: 10_000, .. }));
    }

    #[test]
    fn nested_bars_shrink() {
        let family = vec![
            InfSet::periodic(3, &[0, 1]),
            InfSet::evens(),
            InfSet::periodic(5, &[0, 2, 4]),
            InfSet::tail(40),
        ];
        let bars = nested_refine(&family, 4, 100_000).unwrap();
        for j in 1..bars.len() {
            for x in bars[j].first(30).unwrap() {
                assert!(bars[j - 1].contains(x));
                assert!(family[j].contains(x));
            }
        }
    }

    #[test]
    fn disjointify_examples() {
        let deltas = vec![InfSet::powers(2), InfSet::powers(3)];
        let bars = disjointify(&deltas, |_, _| [1].into(), 1000).unwrap();
        assert_eq!(bars[1].first(4).unwrap(), [3, 9, 27, 81]);
        let common: Vec<Index> =
            bars[1].elements_upto(100_000).unwrap().into_iter().filter(|&k| bars[0].contains(k)).collect();
        assert!(common.is_empty());

        // already disjoint: unchanged
        let deltas = vec![InfSet::evens(), InfSet::odds()];
        let bars = disjointify(&deltas, |_, _| BTreeSet::new(), 1000).unwrap();
        assert_eq!(bars[1].first(10).unwrap(), deltas[1].first(10).unwrap());

        // overlap listing that misses the common element 1
        let deltas = vec![InfSet::powers(2), InfSet::powers(3)];
        let err = disjointify(&deltas, |_, _| BTreeSet::new(), 1000).unwrap_err();
        assert_eq!(err, Error::IncompleteOverlap { i: 1, j: 2, element: 1 });
    }

    #[test]
    fn disjointified_family_is_pairwise_disjoint() {
        // powers of distinct primes share only 1
        let primes = [2u64, 3, 5, 7, 11, 13];
        let deltas: Vec<InfSet> = primes.iter().map(|&p| InfSet::powers(p)).collect();
        let bars = disjointify(&deltas, |_, _| [1].into(), 10_000).unwrap();
        for a in 0..bars.len() {
            for b in 0..bars.len() {
                if a == b {
                    continue;
                }
                for x in bars[a].elements_upto(10_000).unwrap() {
                    assert!(!bars[b].contains(x), "{x} in bars {a} and {b}");
                }
            }
        }
    }
}
