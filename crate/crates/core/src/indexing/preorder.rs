//! Preorders on ℕ⁺ given by a decidable relation plus finiteness metadata.
//!
//! Whether an up-set is infinite is not recoverable from the relation alone,
//! so descriptors carry the up-sets and the set of indices with infinite
//! up-sets explicitly; [`PreorderDescriptor::spot_check`] validates those
//! tags against the relation up to a bound.
//!
//! DSL: `diag`, `le`, `ge`, `full`, `mod:<m>:<pairs>`, `union-finite:<pairs>`
//! where `<pairs>` is a list such as `{(1,0),(2,3)}`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::indexing::InfSet;
use crate::Index;

/// A subset of ℕ⁺ that is either listed or enumerable.
#[derive(Clone, Debug)]
pub enum IndexSupport {
    Finite(BTreeSet<Index>),
    Infinite(InfSet),
}

impl IndexSupport {
    pub fn contains(&self, k: Index) -> bool {
        match self {
            IndexSupport::Finite(s) => s.contains(&k),
            IndexSupport::Infinite(e) => e.contains(k),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, IndexSupport::Finite(_))
    }

    /// Up to `count` smallest elements.
    pub fn first(&self, count: u64) -> Result<Vec<Index>> {
        match self {
            IndexSupport::Finite(s) => Ok(s.iter().copied().take(count as usize).collect()),
            IndexSupport::Infinite(e) => e.first(count),
        }
    }

    pub fn singleton(k: Index) -> Self {
        IndexSupport::Finite([k].into())
    }

    pub fn empty() -> Self {
        IndexSupport::Finite(BTreeSet::new())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Nested,
    Disjoint,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Nested => "nested",
            Branch::Disjoint => "disjoint",
        })
    }
}

type AnchorFn = Arc<dyn Fn(u64) -> Index + Send + Sync>;
type BarFn = Arc<dyn Fn(u64) -> InfSet + Send + Sync>;
type LocateFn = Arc<dyn Fn(Index) -> Option<(u64, u64)> + Send + Sync>;

/// Distinct anchors `α_j` with infinite `bars(j) ⊆ upset(α_j)` that are
/// either nested or pairwise disjoint.
#[derive(Clone)]
pub struct Refinement {
    branch: Branch,
    anchors: AnchorFn,
    bars: BarFn,
    locate: Option<LocateFn>,
}

impl Refinement {
    pub fn new(
        branch: Branch,
        anchors: impl Fn(u64) -> Index + Send + Sync + 'static,
        bars: impl Fn(u64) -> InfSet + Send + Sync + 'static,
    ) -> Self {
        Refinement { branch, anchors: Arc::new(anchors), bars: Arc::new(bars), locate: None }
    }

    /// Closed-form inverse of `(j, k) ↦ bars(j).nth(k)` for disjoint families.
    pub fn with_locate(mut self, locate: impl Fn(Index) -> Option<(u64, u64)> + Send + Sync + 'static) -> Self {
        self.locate = Some(Arc::new(locate));
        self
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn anchor(&self, j: u64) -> Index {
        (self.anchors)(j)
    }

    pub fn bar(&self, j: u64) -> InfSet {
        (self.bars)(j)
    }

    /// Finds `(j, k)` with `bars(j).nth(k) = β`, searching `j ≤ search_limit`
    /// when no closed form was supplied.
    pub fn locate(&self, beta: Index, search_limit: u64) -> Result<Option<(u64, u64)>> {
        if let Some(f) = &self.locate {
            return Ok(f(beta));
        }
        for j in 1..=search_limit {
            if let Some(k) = self.bar(j).rank(beta)? {
                return Ok(Some((j, k)));
            }
        }
        Ok(None)
    }
}

impl fmt::Debug for Refinement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Refinement({}, α₁={}, bars(1)={})", self.branch, self.anchor(1), self.bar(1))
    }
}

type RelFn = Arc<dyn Fn(Index, Index) -> bool + Send + Sync>;
type UpsetFn = Arc<dyn Fn(Index) -> IndexSupport + Send + Sync>;

#[derive(Clone)]
pub struct PreorderDescriptor {
    name: String,
    rel: RelFn,
    upset: UpsetFn,
    infinite_upsets: IndexSupport,
    refinement: Option<Refinement>,
}

impl fmt::Debug for PreorderDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PreorderDescriptor")
            .field("name", &self.name)
            .field("infinite_upsets", &self.infinite_upsets)
            .field("refinement", &self.refinement)
            .finish()
    }
}

impl PreorderDescriptor {
    pub fn new(
        name: impl Into<String>,
        rel: impl Fn(Index, Index) -> bool + Send + Sync + 'static,
        upset: impl Fn(Index) -> IndexSupport + Send + Sync + 'static,
        infinite_upsets: IndexSupport,
    ) -> Self {
        PreorderDescriptor {
            name: name.into(),
            rel: Arc::new(rel),
            upset: Arc::new(upset),
            infinite_upsets,
            refinement: None,
        }
    }

    pub fn with_refinement(mut self, refinement: Refinement) -> Self {
        self.refinement = Some(refinement);
        self
    }

    /// Replaces the infinite-up-set tag; the CLI uses this to inject
    /// inconsistent descriptors.
    pub fn with_infinite_upsets(mut self, tag: IndexSupport) -> Self {
        self.infinite_upsets = tag;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn relates(&self, alpha: Index, beta: Index) -> bool {
        (self.rel)(alpha, beta)
    }

    pub fn upset(&self, alpha: Index) -> IndexSupport {
        (self.upset)(alpha)
    }

    pub fn infinite_upsets(&self) -> &IndexSupport {
        &self.infinite_upsets
    }

    pub fn refinement(&self) -> Option<&Refinement> {
        self.refinement.as_ref()
    }

    pub fn diag() -> Self {
        Self::new("diag", |a, b| a == b, IndexSupport::singleton, IndexSupport::empty())
    }

    /// `α ≥ β`; up-sets `{1..α}`.
    pub fn ge() -> Self {
        Self::new("ge", |a, b| a >= b, |a| IndexSupport::Finite((1..=a).collect()), IndexSupport::empty())
    }

    /// `α ≤ β`, with the nested refinement `α_j = j`, `bars(j) = {β ≥ j}`.
    pub fn le() -> Self {
        Self::new("le", |a, b| a <= b, |a| IndexSupport::Infinite(InfSet::tail(a)), IndexSupport::Infinite(InfSet::naturals()))
            .with_refinement(Refinement::new(Branch::Nested, |j| j, InfSet::tail))
    }

    pub fn full() -> Self {
        Self::new("full", |_, _| true, |_| IndexSupport::Infinite(InfSet::naturals()), IndexSupport::Infinite(InfSet::naturals()))
            .with_refinement(Refinement::new(Branch::Nested, |j| j, |_| InfSet::naturals()))
    }

    /// Preorder on residue classes mod `m` generated by `pairs`, lifted to ℕ⁺.
    ///
    /// Every up-set is a union of residue classes, hence infinite. The derived
    /// refinement is disjoint: anchors run through the class with the largest
    /// up-set `U`, and `bars(j)` takes the elements of `U` at positions
    /// `2^(j−1)·(2t−1)`.
    pub fn modular(m: u64, pairs: &[(u64, u64)]) -> Result<Self> {
        if m == 0 {
            return Err(Error::PreorderSyntax("modulus must be positive".into()));
        }
        let n = m as usize;
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            if a >= m || b >= m {
                return Err(Error::PreorderSyntax(format!("class pair ({a},{b}) outside 0..{m}")));
            }
            reach[a as usize][b as usize] = true;
        }
        transitive_close(&mut reach);
        let reach = Arc::new(reach);
        let class_upset = {
            let reach = reach.clone();
            move |c: usize| -> InfSet {
                let residues: Vec<u64> = (0..n).filter(|&d| reach[c][d]).map(|d| d as u64).collect();
                InfSet::periodic(m, &residues)
            }
        };
        // residues in index order 1, 2, …, m−1, 0; ties keep the earliest
        let order: Vec<usize> = (1..=n).map(|r| r % n).collect();
        let anchor_class = order
            .iter()
            .copied()
            .fold(None::<(usize, usize)>, |best, c| {
                let size = reach[c].iter().filter(|&&x| x).count();
                match best {
                    Some((_, s)) if s >= size => best,
                    _ => Some((c, size)),
                }
            })
            .map(|(c, _)| c)
            .expect("m ≥ 1");
        let big = class_upset(anchor_class);
        let anchors = InfSet::residue_class(m, anchor_class as u64);
        let refinement = {
            let big_for_bars = big.clone();
            let big_for_locate = big.clone();
            Refinement::new(
                Branch::Disjoint,
                move |j| anchors.nth(j).expect("closed form"),
                move |j| InfSet::dyadic_slice(big_for_bars.clone(), (j - 1) as u32),
            )
            .with_locate(move |beta| {
                let n = big_for_locate.rank(beta).ok()??;
                let level = n.trailing_zeros();
                Some((level as u64 + 1, ((n >> level) + 1) / 2))
            })
        };
        let pair_text: Vec<String> = pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
        let rel_reach = reach.clone();
        Ok(Self::new(
            format!("mod:{m}:{{{}}}", pair_text.join(",")),
            move |a, b| rel_reach[(a % m) as usize][(b % m) as usize],
            move |a| IndexSupport::Infinite(class_upset((a % m) as usize)),
            IndexSupport::Infinite(InfSet::naturals()),
        )
        .with_refinement(refinement))
    }

    /// Diagonal plus finitely many pairs, transitively closed.
    pub fn union_finite(pairs: &[(Index, Index)]) -> Result<Self> {
        if let Some(&(a, b)) = pairs.iter().find(|(a, b)| *a == 0 || *b == 0) {
            return Err(Error::PreorderSyntax(format!("pair ({a},{b}): indices start at 1")));
        }
        let nodes: Vec<Index> =
            pairs.iter().flat_map(|&(a, b)| [a, b]).collect::<BTreeSet<_>>().into_iter().collect();
        let pos = |k: Index| nodes.binary_search(&k).ok();
        let mut reach = vec![vec![false; nodes.len()]; nodes.len()];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            reach[pos(a).unwrap()][pos(b).unwrap()] = true;
        }
        transitive_close(&mut reach);
        let mut closed: BTreeSet<(Index, Index)> = BTreeSet::new();
        for (i, row) in reach.iter().enumerate() {
            for (j, &r) in row.iter().enumerate() {
                if r && i != j {
                    closed.insert((nodes[i], nodes[j]));
                }
            }
        }
        let closed = Arc::new(closed);
        let rel_closed = closed.clone();
        let pair_text: Vec<String> = pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
        Ok(Self::new(
            format!("union-finite:{{{}}}", pair_text.join(",")),
            move |a, b| a == b || rel_closed.contains(&(a, b)),
            move |a| {
                let mut up: BTreeSet<Index> = closed.range((a, 0)..=(a, Index::MAX)).map(|&(_, b)| b).collect();
                up.insert(a);
                IndexSupport::Finite(up)
            },
            IndexSupport::empty(),
        ))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        match text {
            "diag" => return Ok(Self::diag()),
            "le" => return Ok(Self::le()),
            "ge" => return Ok(Self::ge()),
            "full" => return Ok(Self::full()),
            _ => {}
        }
        if let Some(rest) = text.strip_prefix("mod:") {
            let (m, pairs) = rest.split_once(':').unwrap_or((rest, ""));
            let m: u64 = m.trim().parse().map_err(|_| Error::PreorderSyntax(format!("bad modulus in `{text}`")))?;
            return Self::modular(m, &parse_pairs(pairs)?);
        }
        if let Some(rest) = text.strip_prefix("union-finite:") {
            return Self::union_finite(&parse_pairs(rest)?);
        }
        Err(Error::PreorderSyntax(format!("unknown preorder `{text}`")))
    }

    /// Validates reflexivity, transitivity, the up-set tags, and any
    /// refinement against the relation, on indices up to `bound`.
    pub fn spot_check(&self, bound: Index, seed: u64) -> Result<()> {
        let fail = |msg: String| Err(Error::Descriptor(format!("{}: {msg}", self.name)));
        let bound = bound.max(2);
        for a in 1..=bound {
            if !self.relates(a, a) {
                return fail(format!("not reflexive at {a}"));
            }
        }
        let small = bound.min(12);
        for a in 1..=small {
            for b in 1..=small {
                if !self.relates(a, b) {
                    continue;
                }
                for c in 1..=small {
                    if self.relates(b, c) && !self.relates(a, c) {
                        return fail(format!("not transitive at ({a},{b},{c})"));
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..4000 {
            let [a, b, c] = [0; 3].map(|_| rng.gen_range(1..=bound));
            if self.relates(a, b) && self.relates(b, c) && !self.relates(a, c) {
                return fail(format!("not transitive at ({a},{b},{c})"));
            }
        }
        for a in 1..=bound {
            let up = self.upset(a);
            for b in 1..=bound {
                if self.relates(a, b) != up.contains(b) {
                    return fail(format!("upset({a}) disagrees with the relation at {b}"));
                }
            }
            if let IndexSupport::Finite(s) = &up {
                if let Some(b) = s.iter().find(|&&b| !self.relates(a, b)) {
                    return fail(format!("upset({a}) lists unrelated {b}"));
                }
            }
            if self.infinite_upsets.contains(a) == up.is_finite() {
                return fail(format!("infinite-up-set tag wrong at {a}"));
            }
        }
        if let Some(r) = &self.refinement {
            let depth = bound.min(8);
            let probe = 8;
            let anchors: Vec<Index> = (1..=depth).map(|j| r.anchor(j)).collect();
            if anchors.iter().collect::<BTreeSet<_>>().len() != anchors.len() {
                return fail("refinement anchors repeat".into());
            }
            for j in 1..=depth {
                let bar = r.bar(j).first(probe)?;
                if let Some(b) = bar.iter().find(|&&b| !self.relates(anchors[j as usize - 1], b)) {
                    return fail(format!("bars({j}) element {b} outside upset of anchor {}", anchors[j as usize - 1]));
                }
                for jp in 1..=depth {
                    let other = r.bar(jp);
                    let ok = match r.branch() {
                        Branch::Nested if jp < j => bar.iter().all(|&b| other.contains(b)),
                        Branch::Disjoint if jp != j => bar.iter().all(|&b| !other.contains(b)),
                        _ => true,
                    };
                    if !ok {
                        return fail(format!("{} refinement violated between bars {j} and {jp}", r.branch()));
                    }
                }
            }
        }
        Ok(())
    }
}

fn transitive_close(reach: &mut [Vec<bool>]) {
    let n = reach.len();
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
}

/// Reads the integers of `{(a,b),(c,d)}` (brackets optional) as pairs.
fn parse_pairs(text: &str) -> Result<Vec<(u64, u64)>> {
    let mut nums = Vec::new();
    let mut cur = String::new();
    for ch in text.chars().chain(std::iter::once(' ')) {
        if ch.is_ascii_digit() {
            cur.push(ch);
        } else {
            if !cur.is_empty() {
                nums.push(cur.parse::<u64>().map_err(|_| Error::PreorderSyntax(format!("bad number `{cur}`")))?);
                cur.clear();
            }
            if !matches!(ch, '{' | '}' | '(' | ')' | ',' | ';' | '-' | '>') && !ch.is_whitespace() {
                return Err(Error::PreorderSyntax(format!("unexpected `{ch}` in pair list `{text}`")));
            }
        }
    }
    if nums.len() % 2 != 0 {
        return Err(Error::PreorderSyntax(format!("odd number of entries in `{text}`")));
    }
    Ok(nums.chunks(2).map(|p| (p[0], p[1])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dsl_descriptors_pass_spot_checks() {
        for dsl in ["diag", "le", "ge", "full", "mod:2:{(1,0)}", "mod:3:{(1,2),(2,0)}", "mod:1:", "union-finite:{(1,2),(2,5),(7,3)}"] {
            let p = PreorderDescriptor::parse(dsl).unwrap();
            p.spot_check(40, 1).unwrap_or_else(|e| panic!("{dsl}: {e}"));
            p.spot_check(80, 2).unwrap();
        }
    }

    #[test]
    fn union_finite_is_closed() {
        let p = PreorderDescriptor::parse("union-finite:{(1,2),(2,3)}").unwrap();
        assert!(p.relates(1, 3));
        assert!(!p.relates(3, 1));
        match p.upset(1) {
            IndexSupport::Finite(s) => assert_eq!(s, [1, 2, 3].into()),
            _ => panic!(),
        }
    }

    #[test]
    fn modular_upsets_and_refinement() {
        let p = PreorderDescriptor::parse("mod:2:{(1,0)}").unwrap();
        assert!(p.relates(3, 4));
        assert!(!p.relates(4, 3));
        assert!(p.upset(2).contains(6) && !p.upset(2).contains(5));
        let r = p.refinement().unwrap();
        assert_eq!(r.branch(), Branch::Disjoint);
        // odd anchors have the whole line as up-set
        assert_eq!([r.anchor(1), r.anchor(2)], [1, 3]);
        for j in 1..=5 {
            for (k, b) in r.bar(j).first(6).unwrap().into_iter().enumerate() {
                assert_eq!(r.locate(b, 0).unwrap(), Some((j, k as u64 + 1)));
            }
        }
    }

    #[test]
    fn parse_errors() {
        assert!(PreorderDescriptor::parse("lt").is_err());
        assert!(PreorderDescriptor::parse("mod:2:{(1,2)}").is_err());
        assert!(PreorderDescriptor::parse("mod:x:").is_err());
        assert!(PreorderDescriptor::parse("union-finite:{(0,1)}").is_err());
        assert!(PreorderDescriptor::parse("union-finite:{(1,2),(3)}").is_err());
    }

    #[test]
    fn spot_check_catches_bad_tags() {
        let bad = PreorderDescriptor::le().with_infinite_upsets(IndexSupport::empty());
        assert!(matches!(bad.spot_check(20, 0), Err(Error::Descriptor(_))));
        let not_transitive = PreorderDescriptor::new(
            "adjacent",
            |a, b| a == b || a + 1 == b,
            |a| IndexSupport::Finite([a, a + 1].into()),
            IndexSupport::empty(),
        );
        assert!(not_transitive.spot_check(20, 0).is_err());
        let bad_bars = PreorderDescriptor::ge().with_refinement(Refinement::new(Branch::Nested, |j| j, InfSet::tail));
        assert!(bad_bars.spot_check(20, 0).is_err());
    }
}
