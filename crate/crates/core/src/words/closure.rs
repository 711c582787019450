use std::collections::{BTreeMap, BTreeSet};

use crate::rowfin::{FinVec, RowFiniteMap};
use crate::Index;

type SourceFn = Box<dyn Fn(Index) -> BTreeSet<Index> + Send + Sync>;

/// One closure step: `Γ ↦ ⋃_{α ∈ Γ} ⋃_sources source(α)`. Each source must
/// return a finite superset of the supports of `e_α f` over the maps `f` it
/// stands for.
#[derive(Default)]
pub struct SupportStep {
    sources: Vec<(String, SourceFn)>,
}

impl SupportStep {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_source(mut self, name: impl Into<String>, f: impl Fn(Index) -> BTreeSet<Index> + Send + Sync + 'static) -> Self {
        self.sources.push((name.into(), Box::new(f)));
        self
    }

    /// Exact row supports of a single map.
    pub fn with_map(self, name: impl Into<String>, f: &RowFiniteMap) -> Self {
        let f = f.clone();
        self.with_source(name, move |a| f.row_support(a))
    }

    /// Step for the constants `0, ±1`: every coordinate maps to itself.
    pub fn with_identity(self) -> Self {
        self.with_source("1", |a| [a].into())
    }

    fn step(&self, frontier: &BTreeSet<Index>, known: &BTreeSet<Index>, census: &mut BTreeMap<String, usize>) -> BTreeSet<Index> {
        let mut fresh = BTreeSet::new();
        for (name, f) in &self.sources {
            for &a in frontier {
                for b in f(a) {
                    if !known.contains(&b) && fresh.insert(b) {
                        *census.entry(name.clone()).or_insert(0) += 1;
                    }
                }
            }
        }
        fresh
    }
}

/// Finite superset of the supports of all `y` within word distance `radius`
/// of `center`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportBallReport {
    pub center: FinVec,
    pub radius: u64,
    pub cover: BTreeSet<Index>,
    /// New indices first reached through each source.
    pub census: BTreeMap<String, usize>,
    /// `|Γ_0|, |Γ_1|, …, |Γ_radius|`.
    pub layer_sizes: Vec<usize>,
}

/// `Γ_0 = supp(x)`, `Γ_{k+1} = Γ_k ∪ step(Γ_k)`; returns `Γ_radius`.
///
/// A word of length `r` is a sum of products of at most `r` letters, and
/// each letter moves supports by one step, so `supp(x·w) ⊆ Γ_r`.
pub fn support_closure(x: &FinVec, step: &SupportStep, radius: u64) -> SupportBallReport {
    let mut cover = x.support();
    let mut frontier = cover.clone();
    let mut census = BTreeMap::new();
    let mut layer_sizes = vec![cover.len()];
    for _ in 0..radius {
        // Γ_k ∖ Γ_{k−1} suffices: step distributes over unions
        let fresh = step.step(&frontier, &cover, &mut census);
        cover.extend(fresh.iter().copied());
        layer_sizes.push(cover.len());
        frontier = fresh;
    }
    SupportBallReport { center: x.clone(), radius, cover, census, layer_sizes }
}
