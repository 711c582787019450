use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::Result;
use crate::ring::{BaseRing, Elem};
use crate::rowfin::RowFiniteMap;
use crate::Index;

/// Finitely supported vector in `⊕_{ℕ⁺} R`. No stored entry is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinVec {
    ring: BaseRing,
    entries: BTreeMap<Index, Elem>,
}

impl FinVec {
    pub fn zero(ring: &BaseRing) -> Self {
        FinVec { ring: ring.clone(), entries: BTreeMap::new() }
    }

    /// `e_k`.
    pub fn unit(ring: &BaseRing, k: Index) -> Self {
        Self::monomial(ring, k, ring.one())
    }

    /// `c·e_k`.
    pub fn monomial(ring: &BaseRing, k: Index, c: Elem) -> Self {
        let mut v = Self::zero(ring);
        v.add_at(k, &c);
        v
    }

    /// Sums repeated coordinates and drops zeros.
    pub fn from_entries(ring: &BaseRing, entries: impl IntoIterator<Item = (Index, Elem)>) -> Self {
        let mut v = Self::zero(ring);
        for (k, c) in entries {
            v.add_at(k, &c);
        }
        v
    }

    /// `Σ_{k ∈ ks} e_k`.
    pub fn indicator(ring: &BaseRing, ks: impl IntoIterator<Item = Index>) -> Self {
        Self::from_entries(ring, ks.into_iter().map(|k| (k, ring.one())))
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn get(&self, k: Index) -> Elem {
        self.entries.get(&k).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn entries(&self) -> impl Iterator<Item = (Index, &Elem)> + '_ {
        self.entries.iter().map(|(&k, c)| (k, c))
    }

    pub fn support(&self) -> BTreeSet<Index> {
        self.entries.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        self.entries.len()
    }

    pub fn max_index(&self) -> Option<Index> {
        self.entries.keys().next_back().copied()
    }

    /// `self[k] += c`, pruning a resulting zero.
    pub fn add_at(&mut self, k: Index, c: &Elem) {
        assert!(k >= 1, "coordinates start at 1");
        if self.ring.is_zero(c) {
            return;
        }
        match self.entries.get_mut(&k) {
            Some(old) => {
                let sum = self.ring.add(old, c);
                if self.ring.is_zero(&sum) {
                    self.entries.remove(&k);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.entries.insert(k, c.clone());
            }
        }
    }

    /// `self += c·other`.
    pub(crate) fn add_scaled(&mut self, c: &Elem, other: &FinVec) {
        for (k, v) in other.entries() {
            let term = self.ring.mul(c, v);
            self.add_at(k, &term);
        }
    }

    pub fn add(&self, other: &FinVec) -> Result<FinVec> {
        self.ring.ensure_same(&other.ring)?;
        let mut out = self.clone();
        for (k, v) in other.entries() {
            out.add_at(k, v);
        }
        Ok(out)
    }

    pub fn neg(&self) -> FinVec {
        FinVec {
            ring: self.ring.clone(),
            entries: self.entries.iter().map(|(&k, v)| (k, self.ring.neg(v))).collect(),
        }
    }

    pub fn sub(&self, other: &FinVec) -> Result<FinVec> {
        self.add(&other.neg())
    }

    /// `c·x`, coordinatewise `c·x_k`.
    pub fn scale_left(&self, c: &Elem) -> FinVec {
        FinVec::from_entries(&self.ring, self.entries().map(|(k, v)| (k, self.ring.mul(c, v))))
    }

    /// `x·c`, coordinatewise `x_k·c`.
    pub fn scale_right(&self, c: &Elem) -> FinVec {
        FinVec::from_entries(&self.ring, self.entries().map(|(k, v)| (k, self.ring.mul(v, c))))
    }

    /// `x·f = Σ_α x_α · row_α(f)`.
    pub fn apply(&self, f: &RowFiniteMap) -> Result<FinVec> {
        self.ring.ensure_same(f.ring())?;
        Ok(self.apply_unchecked(f))
    }

    pub(crate) fn apply_unchecked(&self, f: &RowFiniteMap) -> FinVec {
        let mut out = FinVec::zero(&self.ring);
        for (alpha, c) in self.entries() {
            out.add_scaled(c, &f.row(alpha));
        }
        out
    }
}

impl fmt::Display for FinVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> =
            self.entries().map(|(k, c)| format!("{}·e{k}", self.ring.format_elem(c))).collect();
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for FinVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinVec[{}]({self})", self.ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_entries_are_pruned() {
        let r = BaseRing::zmod(6).unwrap();
        let mut v = FinVec::from_entries(&r, [(2, r.from_i64(3)), (7, r.from_i64(1))]);
        assert_eq!(v.support(), [2, 7].into());
        v.add_at(2, &r.from_i64(3));
        assert_eq!(v.support(), [7].into());
        let w = v.add(&v.neg()).unwrap();
        assert!(w.is_zero());
        assert!(FinVec::from_entries(&r, [(1, r.from_i64(6))]).is_zero());
    }

    #[test]
    fn scaling_respects_order() {
        let r = BaseRing::parse("Mat:2:GF:2").unwrap();
        let e12 = r.parse_elem("[[0,1],[0,0]]").unwrap();
        let e21 = r.parse_elem("[[0,0],[1,0]]").unwrap();
        let v = FinVec::monomial(&r, 1, e12.clone());
        assert_eq!(v.scale_right(&e21).get(1), r.mul(&e12, &e21));
        assert_eq!(v.scale_left(&e21).get(1), r.mul(&e21, &e12));
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = FinVec::unit(&BaseRing::gf(5).unwrap(), 1);
        let b = FinVec::unit(&BaseRing::zmod(5).unwrap(), 1);
        assert!(a.add(&b).is_err());
    }
}
