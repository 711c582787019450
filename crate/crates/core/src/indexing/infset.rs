//! Decidable infinite subsets of ℕ⁺ with strictly increasing enumerations.
//!
//! Closed-form families (periodic residue sets, tails, powers) answer `nth`,
//! `contains` and `rank` directly. Derived sets (intersections, predicates,
//! finite differences) scan and memoize; a scan that finds no new element
//! within its probe bound reports [`Error::Stall`] instead of looping.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::Index;

pub const DEFAULT_STALL_BOUND: u64 = 1_000_000;

type Predicate = Arc<dyn Fn(Index) -> bool + Send + Sync>;

#[derive(Clone)]
pub struct InfSet(Arc<SetKind>);

enum SetKind {
    /// `{k : k mod m ∈ residues}`, residues stored in `1..=m` and sorted.
    Periodic { modulus: u64, residues: Vec<u64> },
    Tail(Index),
    Powers(u64),
    Intersection { parts: Vec<InfSet>, scan: Scan },
    Difference { base: InfSet, removed: BTreeSet<Index>, scan: Scan },
    /// Elements of `parent` at positions `2^level · (2t − 1)`.
    DyadicSlice { parent: InfSet, level: u32 },
    Predicate { label: String, test: Predicate, scan: Scan },
}

struct Scan {
    bound: u64,
    state: Mutex<ScanState>,
}

#[derive(Default)]
struct ScanState {
    found: Vec<Index>,
    /// Next probe position (meaning depends on the set kind).
    cursor: u64,
}

impl Scan {
    fn new(bound: u64) -> Self {
        Scan { bound, state: Mutex::new(ScanState { found: Vec::new(), cursor: 1 }) }
    }
}

impl InfSet {
    fn wrap(kind: SetKind) -> Self {
        InfSet(Arc::new(kind))
    }

    /// `{k ≥ 1 : k mod m ∈ residues}` with residues given in `0..m`.
    pub fn periodic(modulus: u64, residues: &[u64]) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        let mut rs: Vec<u64> = residues
            .iter()
            .map(|r| {
                let r = r % modulus;
                if r == 0 {
                    modulus
                } else {
                    r
                }
            })
            .collect();
        rs.sort_unstable();
        rs.dedup();
        assert!(!rs.is_empty(), "periodic set needs at least one residue");
        Self::wrap(SetKind::Periodic { modulus, residues: rs })
    }

    pub fn residue_class(modulus: u64, residue: u64) -> Self {
        Self::periodic(modulus, &[residue])
    }

    pub fn naturals() -> Self {
        Self::tail(1)
    }

    pub fn evens() -> Self {
        Self::periodic(2, &[0])
    }

    pub fn odds() -> Self {
        Self::periodic(2, &[1])
    }

    pub fn multiples(m: u64) -> Self {
        Self::periodic(m, &[0])
    }

    /// `{start, start + 1, …}`.
    pub fn tail(start: Index) -> Self {
        assert!(start >= 1);
        Self::wrap(SetKind::Tail(start))
    }

    /// `{base^k : k ≥ 0}`.
    pub fn powers(base: u64) -> Self {
        assert!(base >= 2);
        Self::wrap(SetKind::Powers(base))
    }

    pub fn intersection(parts: Vec<InfSet>, stall_bound: u64) -> Self {
        assert!(!parts.is_empty());
        Self::wrap(SetKind::Intersection { parts, scan: Scan::new(stall_bound) })
    }

    pub fn difference(base: InfSet, removed: BTreeSet<Index>) -> Self {
        let bound = removed.len() as u64 + 1;
        Self::wrap(SetKind::Difference { base, removed, scan: Scan::new(bound) })
    }

    pub fn dyadic_slice(parent: InfSet, level: u32) -> Self {
        Self::wrap(SetKind::DyadicSlice { parent, level })
    }

    /// Set given by a membership test; enumeration scans ℕ⁺.
    pub fn from_predicate(
        label: impl Into<String>,
        test: impl Fn(Index) -> bool + Send + Sync + 'static,
        stall_bound: u64,
    ) -> Self {
        Self::wrap(SetKind::Predicate { label: label.into(), test: Arc::new(test), scan: Scan::new(stall_bound) })
    }

    pub fn contains(&self, k: Index) -> bool {
        if k == 0 {
            return false;
        }
        match &*self.0 {
            SetKind::Periodic { modulus, residues } => {
                let r = match k % modulus {
                    0 => *modulus,
                    r => r,
                };
                residues.binary_search(&r).is_ok()
            }
            SetKind::Tail(s) => k >= *s,
            SetKind::Powers(b) => {
                let mut k = k;
                while k % b == 0 {
                    k /= b;
                }
                k == 1
            }
            SetKind::Intersection { parts, .. } => parts.iter().all(|p| p.contains(k)),
            SetKind::Difference { base, removed, .. } => base.contains(k) && !removed.contains(&k),
            SetKind::DyadicSlice { parent, level } => match parent.rank(k) {
                Ok(Some(n)) => n.trailing_zeros() == *level,
                _ => false,
            },
            SetKind::Predicate { test, .. } => test(k),
        }
    }

    /// The `j`-th element (1-based).
    pub fn nth(&self, j: u64) -> Result<Index> {
        assert!(j >= 1, "enumerations are 1-based");
        match &*self.0 {
            SetKind::Periodic { modulus, residues } => {
                let c = residues.len() as u64;
                Ok(modulus * ((j - 1) / c) + residues[((j - 1) % c) as usize])
            }
            SetKind::Tail(s) => Ok(s + j - 1),
            SetKind::Powers(b) => u32::try_from(j - 1)
                .ok()
                .and_then(|e| b.checked_pow(e))
                .ok_or_else(|| Error::BoundExceeded(format!("{b}^{} overflows", j - 1))),
            SetKind::DyadicSlice { parent, level } => {
                let pos = (2 * j - 1)
                    .checked_shl(*level)
                    .ok_or_else(|| Error::BoundExceeded("dyadic position overflows".into()))?;
                parent.nth(pos)
            }
            SetKind::Intersection { parts, scan } => self.scan_nth(scan, j, |cursor| {
                let candidate = parts[0].nth(cursor)?;
                Ok(parts[1..].iter().all(|p| p.contains(candidate)).then_some(candidate))
            }),
            SetKind::Difference { base, removed, scan } => self.scan_nth(scan, j, |cursor| {
                let candidate = base.nth(cursor)?;
                Ok((!removed.contains(&candidate)).then_some(candidate))
            }),
            SetKind::Predicate { test, scan, .. } => {
                self.scan_nth(scan, j, |cursor| Ok(test(cursor).then_some(cursor)))
            }
        }
    }

    fn scan_nth(
        &self,
        scan: &Scan,
        j: u64,
        probe: impl Fn(u64) -> Result<Option<Index>>,
    ) -> Result<Index> {
        let mut state = scan.state.lock().expect("scan cache poisoned");
        while (state.found.len() as u64) < j {
            let mut misses = 0u64;
            loop {
                let cursor = state.cursor;
                state.cursor += 1;
                if let Some(k) = probe(cursor)? {
                    state.found.push(k);
                    break;
                }
                misses += 1;
                if misses >= scan.bound {
                    return Err(Error::Stall { set: self.to_string(), probes: misses });
                }
            }
        }
        Ok(state.found[(j - 1) as usize])
    }

    /// 1-based position of `k`, or `None` when `k` is not a member.
    pub fn rank(&self, k: Index) -> Result<Option<u64>> {
        if !self.contains(k) {
            return Ok(None);
        }
        match &*self.0 {
            SetKind::Periodic { modulus, residues } => {
                let q = (k - 1) / modulus;
                let r = k - q * modulus;
                let pos = residues.binary_search(&r).expect("member residue") as u64;
                Ok(Some(q * residues.len() as u64 + pos + 1))
            }
            SetKind::Tail(s) => Ok(Some(k - s + 1)),
            SetKind::Powers(b) => {
                let mut e = 0;
                let mut k = k;
                while k > 1 {
                    k /= b;
                    e += 1;
                }
                Ok(Some(e + 1))
            }
            SetKind::DyadicSlice { parent, level } => {
                let n = parent.rank(k)?.expect("member of slice is member of parent");
                Ok(Some(((n >> level) + 1) / 2))
            }
            _ => {
                // nth is strictly increasing: bracket k, then bisect
                let mut hi = 1;
                while self.nth(hi)? < k {
                    hi *= 2;
                }
                let mut lo = hi / 2 + 1;
                while lo < hi {
                    let mid = lo + (hi - lo) / 2;
                    if self.nth(mid)? < k {
                        lo = mid + 1;
                    } else {
                        hi = mid;
                    }
                }
                debug_assert_eq!(self.nth(lo)?, k);
                Ok(Some(lo))
            }
        }
    }

    /// The first `count` elements.
    pub fn first(&self, count: u64) -> Result<Vec<Index>> {
        (1..=count).map(|j| self.nth(j)).collect()
    }

    /// All elements `≤ bound`.
    pub fn elements_upto(&self, bound: Index) -> Result<Vec<Index>> {
        let mut out = Vec::new();
        let mut j = 1;
        loop {
            let v = self.nth(j)?;
            if v > bound {
                return Ok(out);
            }
            out.push(v);
            j += 1;
        }
    }
}

impl fmt::Display for InfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            SetKind::Periodic { modulus, residues } => {
                let rs: Vec<String> = residues.iter().map(|r| (r % modulus).to_string()).collect();
                write!(f, "{{k ≡ {} mod {modulus}}}", rs.join("|"))
            }
            SetKind::Tail(s) => write!(f, "{{k ≥ {s}}}"),
            SetKind::Powers(b) => write!(f, "{{{b}^k}}"),
            SetKind::Intersection { parts, .. } => {
                let ps: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "({})", ps.join(" ∩ "))
            }
            SetKind::Difference { base, removed, .. } => write!(f, "({base} ∖ {removed:?})"),
            SetKind::DyadicSlice { parent, level } => write!(f, "slice{level}({parent})"),
            SetKind::Predicate { label, .. } => write!(f, "{label}"),
        }
    }
}

impl fmt::Debug for InfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InfSet{self}")
    }
}
