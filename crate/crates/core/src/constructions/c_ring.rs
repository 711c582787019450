//! The subring `C = I + H`: scalar diagonals `Δ(s)` plus maps whose rows are
//! all supported in column 1.

use std::collections::BTreeSet;

use crate::ring::Elem;
use crate::rowfin::{FinVec, RowFiniteMap, Window};
use crate::Index;

#[derive(Clone, Debug)]
pub enum CMembership {
    /// `f = Δ(s) + h` with `h` supported in column 1.
    Member { s: Elem, h: RowFiniteMap },
    NonMember { row: Index, col: Index },
}

impl CMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, CMembership::Member { .. })
    }
}

/// Decides on rows `1..=n` whether `f ∈ C`. Outside column 1 only diagonal
/// entries may be nonzero and they must all equal `s`, read from `f[2,2]`
/// (from `f[1,1]` when the window has one row).
pub fn c_membership(f: &RowFiniteMap, w: Window) -> CMembership {
    let ring = f.ring().clone();
    let s = if w.n() == 1 { f.entry(1, 1) } else { f.entry(2, 2) };
    for a in w.rows() {
        let row = f.row(a);
        for b in row.support() {
            if b != 1 && b != a {
                return CMembership::NonMember { row: a, col: b };
            }
        }
        if a != 1 && row.get(a) != s {
            return CMembership::NonMember { row: a, col: a };
        }
    }
    let h = f.sub(&RowFiniteMap::scalar(&ring, s.clone())).expect("same ring");
    CMembership::Member { s, h }
}

/// Columns carrying a nonzero entry in rows `1..=n`.
pub fn columns_used(h: &RowFiniteMap, w: Window) -> BTreeSet<Index> {
    w.rows().flat_map(|a| h.row(a).support()).collect()
}

/// `f = g + h` with `h` supported in the finite column set `cols` on the
/// window; returns the first entry of `f − g` outside `cols`.
pub fn f_decomposition_violation(
    f: &RowFiniteMap,
    g: &RowFiniteMap,
    cols: &BTreeSet<Index>,
    w: Window,
) -> Option<(Index, Index)> {
    let h = f.sub(g).expect("same ring");
    w.rows().find_map(|a| h.row(a).support().into_iter().find(|b| !cols.contains(b)).map(|b| (a, b)))
}

/// `h` with row `α` equal to `c_α e_1`.
pub fn column_one(f: &RowFiniteMap) -> RowFiniteMap {
    let (src, ring) = (f.clone(), f.ring().clone());
    RowFiniteMap::from_fn(f.ring(), format!("{}|col1", f.tag()), move |a| FinVec::monomial(&ring, 1, src.entry(a, 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::BaseRing;

    #[test]
    fn examples() {
        let z = BaseRing::integers();
        let w = Window::new(12);
        match c_membership(&RowFiniteMap::identity(&z), w) {
            CMembership::Member { s, h } => {
                assert_eq!(s, z.one());
                assert!(h.equal_on_window(&RowFiniteMap::zero(&z), w));
            }
            other => panic!("{other:?}"),
        }
        match c_membership(&RowFiniteMap::matrix_unit(&z, 3, 1), w) {
            CMembership::Member { s, h } => {
                assert_eq!(s, z.zero());
                assert!(h.equal_on_window(&RowFiniteMap::matrix_unit(&z, 3, 1), w));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            c_membership(&RowFiniteMap::matrix_unit(&z, 2, 3), w),
            CMembership::NonMember { row: 2, col: 3 }
        ));
    }

    #[test]
    fn scalar_plus_column_and_failures() {
        let r = BaseRing::zmod(6).unwrap();
        let w = Window::new(10);
        let col = column_one(&RowFiniteMap::from_fn(&r, "ones", {
            let r = r.clone();
            move |a| FinVec::monomial(&r, 1, r.from_i64(a as i64))
        }));
        let f = RowFiniteMap::scalar(&r, r.from_i64(4)).add(&col).unwrap();
        assert!(c_membership(&f, w).is_member());
        let rr = r.clone();
        let d = RowFiniteMap::diagonal(&r, "d", move |a| rr.from_i64(if a == 5 { 2 } else { 1 }));
        assert!(matches!(c_membership(&d, w), CMembership::NonMember { row: 5, col: 5 }));
        // (1,1) is free
        let g = RowFiniteMap::identity(&r).add(&RowFiniteMap::matrix_unit(&r, 1, 1)).unwrap();
        assert!(c_membership(&g, w).is_member());
    }

    #[test]
    fn f_decomposition() {
        let z = BaseRing::integers();
        let w = Window::new(8);
        let g = RowFiniteMap::shift(&z);
        let f = g.add(&RowFiniteMap::matrix_unit(&z, 4, 2)).unwrap().add(&RowFiniteMap::matrix_unit(&z, 7, 1)).unwrap();
        assert_eq!(f_decomposition_violation(&f, &g, &[1, 2].into(), w), None);
        assert_eq!(f_decomposition_violation(&f, &g, &[1].into(), w), Some((4, 2)));
        assert_eq!(columns_used(&f.sub(&g).unwrap(), w), [1, 2].into());
    }
}
