//! Subrings `S` described by row supports: `supp(α)` bounds the support of
//! `e_α f` for every `f ∈ S`. `S` is fearing when every `supp(α)` is finite
//! and weakly fearing when only finitely many are infinite.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constructions::check::Check;
use crate::constructions::preorder_ring::preorder_membership;
use crate::error::{Error, Result};
use crate::indexing::{IndexSupport, InfSet, PreorderDescriptor};
use crate::ring::BaseRing;
use crate::rowfin::random::INT_BOUND;
use crate::rowfin::{FinVec, RowFiniteMap, Window};
use crate::words::{support_closure, SupportStep, WordEnv};
use crate::Index;

type SuppFn = Arc<dyn Fn(Index) -> IndexSupport + Send + Sync>;
type MemberFn = Arc<dyn Fn(&RowFiniteMap, Window) -> Option<(Index, Index)> + Send + Sync>;
type SampleFn = Arc<dyn Fn(u64) -> RowFiniteMap + Send + Sync>;

/// Infinite supports are sampled on this many leading elements.
const SAMPLE_WIDTH: u64 = 4;

#[derive(Clone)]
pub struct FearingDescriptor {
    name: String,
    ring: BaseRing,
    supp: SuppFn,
    infinite_rows: IndexSupport,
    member: MemberFn,
    sample: SampleFn,
}

impl std::fmt::Debug for FearingDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FearingDescriptor({}, {})", self.name, self.ring)
    }
}

/// Row `α` of a sample draws from its own ChaCha stream, so rows do not
/// depend on evaluation order.
fn row_rng(seed: u64, alpha: Index) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(alpha);
    rng
}

/// Random entries on `cols`.
fn random_row(ring: &BaseRing, seed: u64, alpha: Index, cols: impl IntoIterator<Item = Index>) -> FinVec {
    let mut rng = row_rng(seed, alpha);
    FinVec::from_entries(ring, cols.into_iter().map(|c| (c, ring.random(&mut rng, INT_BOUND))).collect::<Vec<_>>())
}

fn support_sample(s: &IndexSupport) -> Vec<Index> {
    s.first(SAMPLE_WIDTH).unwrap_or_default()
}

/// First entry of rows `1..=n` outside `supp`.
fn support_violation(f: &RowFiniteMap, w: Window, supp: &(dyn Fn(Index) -> IndexSupport + Send + Sync)) -> Option<(Index, Index)> {
    w.rows().find_map(|a| {
        let s = supp(a);
        f.row(a).support().into_iter().find(|&b| !s.contains(b)).map(|b| (a, b))
    })
}

impl FearingDescriptor {
    /// `S` given by arbitrary row supports; membership is support containment.
    pub fn from_supports(
        ring: &BaseRing,
        name: impl Into<String>,
        supp: impl Fn(Index) -> IndexSupport + Send + Sync + 'static,
        infinite_rows: IndexSupport,
    ) -> Self {
        let supp: SuppFn = Arc::new(supp);
        let (sm, ss) = (supp.clone(), supp.clone());
        let r = ring.clone();
        FearingDescriptor {
            name: name.into(),
            ring: ring.clone(),
            supp,
            infinite_rows,
            member: Arc::new(move |f, w| support_violation(f, w, &*sm)),
            sample: Arc::new(move |seed| {
                let (r2, s2) = (r.clone(), ss.clone());
                RowFiniteMap::from_fn(&r, format!("sample{seed}"), move |a| random_row(&r2, seed, a, support_sample(&s2(a))))
            }),
        }
    }

    /// Finite supports `supp(α)` for every `α`.
    pub fn from_finite_supports(
        ring: &BaseRing,
        name: impl Into<String>,
        supp: impl Fn(Index) -> BTreeSet<Index> + Send + Sync + 'static,
    ) -> Self {
        Self::from_supports(ring, name, move |a| IndexSupport::Finite(supp(a)), IndexSupport::empty())
    }

    /// The diagonal ring `D`.
    pub fn diagonal(ring: &BaseRing) -> Self {
        Self::from_finite_supports(ring, "D", |a| [a].into())
    }

    /// `E(ρ)`, with supports the up-sets of `ρ`.
    pub fn from_preorder(ring: &BaseRing, rho: &PreorderDescriptor) -> Self {
        let up = rho.clone();
        let mut d = Self::from_supports(ring, format!("E({})", rho.name()), move |a| up.upset(a), rho.infinite_upsets().clone());
        let rel = rho.clone();
        d.member = Arc::new(move |f, w| preorder_membership(f, &rel, w).violations.first().copied());
        d
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn supp(&self, alpha: Index) -> IndexSupport {
        (self.supp)(alpha)
    }

    pub fn infinite_rows(&self) -> &IndexSupport {
        &self.infinite_rows
    }

    /// First entry of the window breaking membership.
    pub fn violation(&self, f: &RowFiniteMap, w: Window) -> Option<(Index, Index)> {
        (self.member)(f, w)
    }

    pub fn is_member_on(&self, f: &RowFiniteMap, w: Window) -> bool {
        self.violation(f, w).is_none()
    }

    /// Deterministic element of `S` for the seed.
    pub fn sample(&self, seed: u64) -> RowFiniteMap {
        (self.sample)(seed)
    }

    /// Same set with extra membership conditions and narrowed supports.
    fn restricted(
        &self,
        name: String,
        supp: impl Fn(Index) -> IndexSupport + Send + Sync + 'static,
        infinite_rows: IndexSupport,
        extra: impl Fn(&RowFiniteMap, Window) -> Option<(Index, Index)> + Send + Sync + 'static,
    ) -> Self {
        let mut d = Self::from_supports(&self.ring, name, supp, infinite_rows);
        let base = self.member.clone();
        d.member = Arc::new(move |f, w| base(f, w).or_else(|| extra(f, w)));
        d
    }

    /// `supp(α)` as a finite set; fails on an infinite row.
    pub fn finite_supp(&self, alpha: Index) -> Result<BTreeSet<Index>> {
        match self.supp(alpha) {
            IndexSupport::Finite(s) => Ok(s),
            IndexSupport::Infinite(_) => Err(Error::NotFearing),
        }
    }

    fn require_fearing(&self) -> Result<()> {
        match &self.infinite_rows {
            IndexSupport::Finite(s) if s.is_empty() => Ok(()),
            _ => Err(Error::NotFearing),
        }
    }
}

/// `S ⊆ S′ + S″` where `S′` is diagonal on the finite set `Σ` of rows with
/// infinite support and `S″` is diagonal off `Σ`.
#[derive(Clone, Debug)]
pub struct WeakSplit {
    pub sigma: BTreeSet<Index>,
    pub s_prime: FearingDescriptor,
    pub s_double: FearingDescriptor,
}

pub fn split_weak_fearing(s: &FearingDescriptor) -> Result<WeakSplit> {
    let sigma = match s.infinite_rows() {
        IndexSupport::Finite(set) => set.clone(),
        IndexSupport::Infinite(_) => return Err(Error::NotWeaklyFearing),
    };
    let (sig1, sig2, sig3, sig4) = (sigma.clone(), sigma.clone(), sigma.clone(), sigma.clone());
    let base1 = s.clone();
    let s_prime = s.restricted(
        format!("{}′", s.name()),
        move |a| if sig1.contains(&a) { IndexSupport::singleton(a) } else { base1.supp(a) },
        IndexSupport::empty(),
        move |f, w| w.rows().filter(|a| sig2.contains(a)).find_map(|a| off_diagonal(f, a)),
    );
    let base2 = s.clone();
    let s_double = s.restricted(
        format!("{}″", s.name()),
        move |a| if sig3.contains(&a) { base2.supp(a) } else { IndexSupport::singleton(a) },
        s.infinite_rows().clone(),
        move |f, w| w.rows().filter(|a| !sig4.contains(a)).find_map(|a| off_diagonal(f, a)),
    );
    Ok(WeakSplit { sigma, s_prime, s_double })
}

fn off_diagonal(f: &RowFiniteMap, a: Index) -> Option<(Index, Index)> {
    f.row(a).support().into_iter().find(|&b| b != a).map(|b| (a, b))
}

impl WeakSplit {
    /// For each sampled `f ∈ S`: `π_{Ω∖Σ} f + π_Σ f = f`, with the parts in
    /// `S′` and `S″` on the window.
    pub fn verify(&self, s: &FearingDescriptor, seeds: impl IntoIterator<Item = u64>, w: Window) -> Vec<Check> {
        let ring = s.ring();
        let (inside, outside) = (self.sigma.clone(), self.sigma.clone());
        let pi_sigma = RowFiniteMap::projection_where(ring, "π_Σ", move |a| inside.contains(&a));
        let pi_rest = RowFiniteMap::projection_where(ring, "π_{Ω∖Σ}", move |a| !outside.contains(&a));
        let mut checks = Vec::new();
        for seed in seeds {
            let f = s.sample(seed);
            let p1 = pi_rest.compose(&f).expect("same ring");
            let p2 = pi_sigma.compose(&f).expect("same ring");
            checks.push(Check::rows_equal(format!("sample {seed}: parts re-sum"), &f, &p1.add(&p2).expect("same ring"), w));
            for (part, d, label) in [(&p1, &self.s_prime, "S′"), (&p2, &self.s_double, "S″")] {
                let name = format!("sample {seed}: part in {label}");
                checks.push(match d.violation(part, w) {
                    None => Check::pass(name),
                    Some((a, b)) => Check::fail(name, format!("entry ({a},{b})"), "allowed support", "outside"),
                });
            }
        }
        checks
    }
}

/// `f` (row `l′_k` is `e_k`) and `g` (row `k` is `e_{l′_k}`) with `g·f = 1`
/// and `f·h` lower-triangular for `h ∈ S`, where `l′` is the least strictly
/// increasing majorant of `l_k = max ⋃_{j ≤ k} supp(j)`.
#[derive(Clone, Debug)]
pub struct LowerEmbed {
    pub g: RowFiniteMap,
    pub f: RowFiniteMap,
    levels: Arc<Levels>,
}

/// Lazily extended `(l_k, l′_k)` table.
struct Levels {
    descriptor: FearingDescriptor,
    table: Mutex<Vec<(Index, Index)>>,
}

impl std::fmt::Debug for Levels {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Levels({})", self.descriptor.name())
    }
}

impl Levels {
    fn ensure(&self, k: u64) -> Vec<(Index, Index)> {
        let mut t = self.table.lock().expect("levels poisoned");
        while (t.len() as u64) < k {
            let j = t.len() as u64 + 1;
            let m = self.descriptor.finite_supp(j).expect("fearing").into_iter().max().unwrap_or(0);
            let (l_prev, lp_prev) = t.last().copied().unwrap_or((0, 0));
            let l = l_prev.max(m);
            t.push((l, l.max(lp_prev + 1)));
        }
        t[..k as usize].to_vec()
    }

    fn l_prime(&self, k: u64) -> Index {
        self.ensure(k)[k as usize - 1].1
    }

    /// `k` with `l′_k = m`; `l′_k ≥ k` bounds the search.
    fn position(&self, m: Index) -> Option<u64> {
        let t = self.ensure(m);
        t.binary_search_by_key(&m, |&(_, lp)| lp).ok().map(|i| i as u64 + 1)
    }
}

pub fn fear_lower_embed(s: &FearingDescriptor) -> Result<LowerEmbed> {
    s.require_fearing()?;
    let levels = Arc::new(Levels { descriptor: s.clone(), table: Mutex::new(Vec::new()) });
    let (lg, lf) = (levels.clone(), levels.clone());
    let (rg, rf) = (s.ring().clone(), s.ring().clone());
    let g = RowFiniteMap::from_fn(s.ring(), "g", move |k| FinVec::unit(&rg, lg.l_prime(k)));
    let f = RowFiniteMap::from_fn(s.ring(), "f", move |m| match lf.position(m) {
        Some(k) => FinVec::unit(&rf, k),
        None => FinVec::zero(&rf),
    });
    Ok(LowerEmbed { g, f, levels })
}

impl LowerEmbed {
    /// `(l_k, l′_k)` for `k = 1..=n`.
    pub fn levels(&self, n: u64) -> Vec<(Index, Index)> {
        self.levels.ensure(n)
    }

    /// `g·f = 1`; for each sampled `h`: `f·h` lower-triangular on the rows
    /// `l′_k` it fills and `g·(f·h) = h`.
    pub fn verify(&self, s: &FearingDescriptor, seeds: impl IntoIterator<Item = u64>, w: Window) -> Vec<Check> {
        let ring = s.ring();
        let mut checks =
            vec![Check::rows_equal("g·f = 1", &RowFiniteMap::identity(ring), &self.g.compose(&self.f).expect("same ring"), w)];
        let reach = Window::new(self.levels.l_prime(w.n()));
        for seed in seeds {
            let h = s.sample(seed);
            let fh = self.f.compose(&h).expect("same ring");
            let name = format!("sample {seed}: f·h lower-triangular");
            checks.push(match crate::constructions::sandwich::upper_entry(&fh, reach) {
                None => Check::pass(name),
                Some((a, b)) => Check::fail(name, format!("entry ({a},{b})"), "column ≤ row", "column > row"),
            });
            let back = self.g.compose(&fh).expect("same ring");
            checks.push(Check::rows_equal(format!("sample {seed}: g·(f·h) = h"), &h, &back, w));
        }
        checks
    }
}

/// One escape step: `x = e_m`, `y = e_escape` with `escape` outside the
/// radius-`j` cover of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FearPair {
    pub j: u64,
    pub m: Index,
    pub x: FinVec,
    pub y: FinVec,
    pub cover: BTreeSet<Index>,
    pub escape: Index,
}

#[derive(Clone, Debug)]
pub struct FearWitness {
    pub pairs: Vec<FearPair>,
    /// Row `m_j` is `e_{escape_j}`, all other rows zero.
    pub g: RowFiniteMap,
    pub blocks: Vec<BTreeSet<Index>>,
}

/// Closure step for words in `S ∪ U`: rows move within `supp` or along the
/// supports of the maps in `U`.
pub fn fear_step(s: &FearingDescriptor, u: &[(String, RowFiniteMap)]) -> SupportStep {
    let d = s.clone();
    let mut step = SupportStep::new().with_source(s.name().to_string(), move |a| d.finite_supp(a).expect("fearing"));
    for (name, f) in u {
        step = step.with_map(name.clone(), f);
    }
    step
}

pub fn fear_witness(s: &FearingDescriptor, u: &[(String, RowFiniteMap)], count: u64) -> Result<FearWitness> {
    s.require_fearing()?;
    for (_, f) in u {
        s.ring().ensure_same(f.ring())?;
    }
    let ring = s.ring();
    let step = fear_step(s, u);
    let mut pairs = Vec::new();
    let mut blocks: Vec<BTreeSet<Index>> = Vec::new();
    let mut used_max: Index = 0;
    for j in 1..=count {
        let m = used_max + 1;
        let x = FinVec::unit(ring, m);
        let cover = support_closure(&x, &step, j).cover;
        let escape = cover.iter().copied().max().unwrap_or(0).max(used_max) + 1;
        used_max = escape;
        blocks.push([m, escape].into());
        pairs.push(FearPair { j, m, x, y: FinVec::unit(ring, escape), cover, escape });
    }
    let rows: BTreeMap<Index, FinVec> = pairs.iter().map(|p| (p.m, p.y.clone())).collect();
    let g = RowFiniteMap::from_rows(ring, "g", rows);
    Ok(FearWitness { pairs, g, blocks })
}

impl FearWitness {
    /// Escape certificates, disjoint blocks and `x_j·g = y_j`.
    pub fn verify(&self) -> Vec<Check> {
        let mut checks = Vec::new();
        for p in &self.pairs {
            let name = format!("escape {} outside cover {}", p.j, p.j);
            checks.push(if p.cover.contains(&p.escape) || !p.y.support().contains(&p.escape) {
                Check::fail(name, format!("j = {}", p.j), "escape ∉ cover", format!("escape {} ∈ {:?}", p.escape, p.cover))
            } else {
                Check::pass(name)
            });
            let xg = p.x.apply(&self.g).expect("same ring");
            checks.push(if xg == p.y {
                Check::pass(format!("x{}·g = y{}", p.j, p.j))
            } else {
                Check::fail(format!("x{}·g = y{}", p.j, p.j), format!("j = {}", p.j), p.y.to_string(), xg.to_string())
            });
        }
        let mut seen = BTreeSet::new();
        let overlap = self.blocks.iter().flatten().find(|&&k| !seen.insert(k));
        checks.push(match overlap {
            None => Check::pass("blocks pairwise disjoint"),
            Some(k) => Check::fail("blocks pairwise disjoint", format!("index {k}"), "one block", "two blocks"),
        });
        checks
    }
}

/// Word environment that is exact for `D ∪ U` on vectors supported in
/// `cover`: every diagonal map acts there as the projection onto the set of
/// coordinates where its entry is `1`, so over GF(2) the projections `π_A`,
/// `A ⊆ cover`, stand in for all of `D`.
pub fn diagonal_oracle_env(ring: &BaseRing, cover: &BTreeSet<Index>, u: &[(String, RowFiniteMap)]) -> Result<WordEnv> {
    if ring.cardinality() != Some(2) {
        return Err(Error::Verification("diagonal oracle environment needs a two-element ring".into()));
    }
    let cover: Vec<Index> = cover.iter().copied().collect();
    if cover.len() > 12 {
        return Err(Error::BoundExceeded(format!("{} coordinates in the cover", cover.len())));
    }
    let mut env = WordEnv::new(ring);
    for (name, f) in u {
        env.bind(name.clone(), f.clone())?;
    }
    for mask in 0u32..(1 << cover.len()) {
        let a: BTreeSet<Index> = cover.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &k)| k).collect();
        let name = format!("d_{}", a.iter().map(u64::to_string).collect::<Vec<_>>().join("_"));
        env.bind(name.clone(), RowFiniteMap::projection_where(ring, name, move |k| a.contains(&k)))?;
    }
    Ok(env)
}

/// Built-in descriptors used by the lower-embedding checks.
pub fn doubling_supports(ring: &BaseRing) -> FearingDescriptor {
    FearingDescriptor::from_finite_supports(ring, "supp(k) = 1..2k", |k| (1..=2 * k).collect())
}

/// `l_k = 5` for `k ≤ 5`: repeated levels.
pub fn plateau_supports(ring: &BaseRing) -> FearingDescriptor {
    FearingDescriptor::from_finite_supports(ring, "supp(k) = 1..max(k,5)", |k| (1..=k.max(5)).collect())
}

/// `E(diag ∪ {(1, β)})`: one row with infinite support.
pub fn first_row_full(ring: &BaseRing) -> FearingDescriptor {
    let rho = PreorderDescriptor::new(
        "diag+row1",
        |a, b| a == b || a == 1,
        |a| if a == 1 { IndexSupport::Infinite(InfSet::naturals()) } else { IndexSupport::singleton(a) },
        IndexSupport::singleton(1),
    );
    FearingDescriptor::from_preorder(ring, &rho)
}
