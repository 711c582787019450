use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use crate::error::Result;
use crate::indexing::{IndexMap, InfSet};
use crate::ring::{BaseRing, Elem};
use crate::rowfin::FinVec;
use crate::Index;

/// Number of leading rows `1..=n` on which identities are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window(u64);

impl Window {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1, "window size must be positive");
        Window(n)
    }

    pub fn n(self) -> u64 {
        self.0
    }

    pub fn rows(self) -> std::ops::RangeInclusive<Index> {
        1..=self.0
    }
}

type RowFn = dyn Fn(Index) -> FinVec + Send + Sync;

struct Inner {
    ring: BaseRing,
    tag: String,
    row_fn: Box<RowFn>,
    memo: RwLock<HashMap<Index, Arc<FinVec>>>,
    evaluations: AtomicU64,
}

/// Endomorphism of `⊕_{ℕ⁺} R` acting on the right, stored as a lazy,
/// memoized row function. Row `α` is the image of `e_α`.
///
/// Cloning shares the memo table. Rows are computed outside the lock; when
/// two threads race on one row the first stored value wins, and both values
/// are equal because row functions are pure.
#[derive(Clone)]
pub struct RowFiniteMap(Arc<Inner>);

/// First row on which two maps differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowDiscrepancy {
    pub row: Index,
    pub left: FinVec,
    pub right: FinVec,
}

impl fmt::Display for RowDiscrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row {}: expected {}, got {}", self.row, self.left, self.right)
    }
}

/// Dense `n × m` corner, `m` the largest column used by rows `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseWindow {
    pub rows: Vec<Vec<Elem>>,
    pub cols: u64,
}

impl RowFiniteMap {
    pub fn from_fn(ring: &BaseRing, tag: impl Into<String>, row: impl Fn(Index) -> FinVec + Send + Sync + 'static) -> Self {
        RowFiniteMap(Arc::new(Inner {
            ring: ring.clone(),
            tag: tag.into(),
            row_fn: Box::new(row),
            memo: RwLock::new(HashMap::new()),
            evaluations: AtomicU64::new(0),
        }))
    }

    /// Finitely many nonzero rows; all others zero.
    pub fn from_rows(ring: &BaseRing, tag: impl Into<String>, rows: BTreeMap<Index, FinVec>) -> Self {
        let zero = FinVec::zero(ring);
        Self::from_fn(ring, tag, move |a| rows.get(&a).cloned().unwrap_or_else(|| zero.clone()))
    }

    pub fn identity(ring: &BaseRing) -> Self {
        let r = ring.clone();
        Self::from_fn(ring, "1", move |a| FinVec::unit(&r, a))
    }

    pub fn zero(ring: &BaseRing) -> Self {
        let r = ring.clone();
        Self::from_fn(ring, "0", move |_| FinVec::zero(&r))
    }

    /// `e_ij`: row `i` is `e_j`, all other rows zero.
    pub fn matrix_unit(ring: &BaseRing, i: Index, j: Index) -> Self {
        let r = ring.clone();
        Self::from_fn(ring, format!("e{i},{j}"), move |a| if a == i { FinVec::unit(&r, j) } else { FinVec::zero(&r) })
    }

    /// `π_Σ`: row `α` is `e_α` for `α ∈ Σ`, zero otherwise.
    pub fn projection(ring: &BaseRing, sigma: InfSet) -> Self {
        let r = ring.clone();
        Self::from_fn(ring, format!("π[{sigma}]"), move |a| {
            if sigma.contains(a) {
                FinVec::unit(&r, a)
            } else {
                FinVec::zero(&r)
            }
        })
    }

    /// Projection onto a decidable set given as a predicate.
    pub fn projection_where(ring: &BaseRing, tag: impl Into<String>, keep: impl Fn(Index) -> bool + Send + Sync + 'static) -> Self {
        let r = ring.clone();
        Self::from_fn(ring, tag, move |a| if keep(a) { FinVec::unit(&r, a) } else { FinVec::zero(&r) })
    }

    /// Row `α` is `d(α)·e_α`.
    pub fn diagonal(ring: &BaseRing, tag: impl Into<String>, d: impl Fn(Index) -> Elem + Send + Sync + 'static) -> Self {
        let r = ring.clone();
        Self::from_fn(ring, tag, move |a| FinVec::monomial(&r, a, d(a)))
    }

    /// `Δ(s)`: constant diagonal.
    pub fn scalar(ring: &BaseRing, s: Elem) -> Self {
        let tag = format!("Δ({})", ring.format_elem(&s));
        Self::diagonal(ring, tag, move |_| s.clone())
    }

    /// Row `k` is `e_{k+1}`.
    pub fn shift(ring: &BaseRing) -> Self {
        let r = ring.clone();
        Self::from_fn(ring, "shift", move |a| FinVec::unit(&r, a + 1))
    }

    /// Row `k` is `e_{m(k)}` where defined, zero elsewhere.
    pub fn from_index_map(ring: &BaseRing, tag: impl Into<String>, m: IndexMap) -> Self {
        let r = ring.clone();
        Self::from_fn(ring, tag, move |a| match m.apply(a) {
            Some(b) => FinVec::unit(&r, b),
            None => FinVec::zero(&r),
        })
    }

    pub fn ring(&self) -> &BaseRing {
        &self.0.ring
    }

    pub fn tag(&self) -> &str {
        &self.0.tag
    }

    /// Same rows under a new label, sharing nothing but the source map.
    pub fn retagged(&self, tag: impl Into<String>) -> Self {
        let src = self.clone();
        Self::from_fn(self.ring(), tag, move |a| (*src.row(a)).clone())
    }

    /// Row `α` (the image of `e_α`), memoized.
    pub fn row(&self, alpha: Index) -> Arc<FinVec> {
        assert!(alpha >= 1, "rows start at 1");
        if let Some(v) = self.0.memo.read().expect("memo poisoned").get(&alpha) {
            return v.clone();
        }
        let computed = Arc::new((self.0.row_fn)(alpha));
        self.0.evaluations.fetch_add(1, Ordering::Relaxed);
        let mut memo = self.0.memo.write().expect("memo poisoned");
        memo.entry(alpha).or_insert(computed).clone()
    }

    pub fn entry(&self, alpha: Index, beta: Index) -> Elem {
        self.row(alpha).get(beta)
    }

    pub fn row_support(&self, alpha: Index) -> BTreeSet<Index> {
        self.row(alpha).support()
    }

    /// How many times the row function has run.
    pub fn evaluated_rows(&self) -> u64 {
        self.0.evaluations.load(Ordering::Relaxed)
    }

    pub fn add(&self, other: &RowFiniteMap) -> Result<Self> {
        self.ring().ensure_same(other.ring())?;
        let (f, g) = (self.clone(), other.clone());
        Ok(Self::from_fn(self.ring(), format!("({} + {})", self.tag(), other.tag()), move |a| {
            let mut v = (*f.row(a)).clone();
            for (k, c) in g.row(a).entries() {
                v.add_at(k, c);
            }
            v
        }))
    }

    pub fn neg(&self) -> Self {
        let f = self.clone();
        Self::from_fn(self.ring(), format!("-{}", self.tag()), move |a| f.row(a).neg())
    }

    pub fn sub(&self, other: &RowFiniteMap) -> Result<Self> {
        self.add(&other.neg())
    }

    /// `fg`: row `α` of `fg` is `(row α of f)·g`.
    pub fn compose(&self, other: &RowFiniteMap) -> Result<Self> {
        self.ring().ensure_same(other.ring())?;
        let (f, g) = (self.clone(), other.clone());
        Ok(Self::from_fn(self.ring(), format!("{}·{}", self.tag(), other.tag()), move |a| f.row(a).apply_unchecked(&g)))
    }

    /// Left-to-right product of a non-empty list.
    pub fn product(factors: &[&RowFiniteMap]) -> Result<Self> {
        let (first, rest) = factors.split_first().expect("empty product");
        rest.iter().try_fold((*first).clone(), |acc, f| acc.compose(f))
    }

    /// `f^k`, with `f^0` the identity.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.ring());
        for _ in 0..k {
            acc = acc.compose(self).expect("same ring");
        }
        acc.retagged(format!("{}^{k}", self.tag()))
    }

    /// `c·f`, entrywise `c·f[α,β]`.
    pub fn scale_left(&self, c: &Elem) -> Self {
        let (f, c) = (self.clone(), c.clone());
        Self::from_fn(self.ring(), self.tag().to_string(), move |a| f.row(a).scale_left(&c))
    }

    /// First row in the window where the full rows differ.
    pub fn first_discrepancy(&self, other: &RowFiniteMap, w: Window) -> Option<RowDiscrepancy> {
        w.rows().find_map(|a| {
            let (l, r) = (self.row(a), other.row(a));
            (l != r).then(|| RowDiscrepancy { row: a, left: (*l).clone(), right: (*r).clone() })
        })
    }

    pub fn equal_on_window(&self, other: &RowFiniteMap, w: Window) -> bool {
        self.first_discrepancy(other, w).is_none()
    }

    pub fn window(&self, w: Window) -> DenseWindow {
        let rows: Vec<Arc<FinVec>> = w.rows().map(|a| self.row(a)).collect();
        let cols = rows.iter().filter_map(|v| v.max_index()).max().unwrap_or(0);
        DenseWindow {
            rows: rows.iter().map(|v| (1..=cols).map(|b| v.get(b)).collect()).collect(),
            cols,
        }
    }

    /// Nonzero entries of rows `1..=n`, row-major.
    pub fn to_triples(&self, w: Window) -> Vec<(Index, Index, Elem)> {
        w.rows().flat_map(|a| self.row(a).entries().map(|(b, c)| (a, b, c.clone())).collect::<Vec<_>>()).collect()
    }
}

impl fmt::Debug for RowFiniteMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RowFiniteMap[{}]({})", self.ring(), self.tag())
    }
}
