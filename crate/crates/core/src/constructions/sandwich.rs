//! Every lower-triangular `Y` factors as `A·X·B` with `X` diagonal, for two
//! fixed 0/1 matrices `A, B`; and every matrix splits as lower (with the
//! diagonal) plus strictly upper.
//!
//! Rows of `X` are grouped in triangular blocks: position `T(i−1) + k`
//! (`1 ≤ k ≤ i`, `T(i) = i(i+1)/2`) carries `Y[i, k]`.

use crate::constructions::check::Check;
use crate::constructions::preorder_ring::preorder_membership;
use crate::error::{Error, Result};
use crate::indexing::{tri_block, tri_locate, triangular, PreorderDescriptor};
use crate::ring::BaseRing;
use crate::rowfin::{FinVec, RowFiniteMap, Window};

/// Row `i` is the indicator of block `i`.
pub fn sandwich_a(ring: &BaseRing) -> RowFiniteMap {
    let r = ring.clone();
    RowFiniteMap::from_fn(ring, "A", move |i| FinVec::indicator(&r, tri_block(i)))
}

/// Row `T(i−1) + k` is `e_k`: identity blocks of growing size, stacked.
pub fn sandwich_b(ring: &BaseRing) -> RowFiniteMap {
    let r = ring.clone();
    RowFiniteMap::from_fn(ring, "B", move |m| FinVec::unit(&r, tri_locate(m).1))
}

/// First entry of rows `1..=n` above the diagonal, if any.
pub fn upper_entry(y: &RowFiniteMap, w: Window) -> Option<(u64, u64)> {
    w.rows().find_map(|i| y.row(i).max_index().filter(|&c| c > i).map(|c| (i, c)))
}

/// Diagonal `X` with `X[T(i−1)+k, T(i−1)+k] = Y[i, k]`. `Y` must be
/// lower-triangular on the check window.
pub fn sandwich_x(y: &RowFiniteMap, check: Window) -> Result<RowFiniteMap> {
    if let Some((row, col)) = upper_entry(y, check) {
        return Err(Error::NotLowerTriangular { row, col });
    }
    let y = y.clone();
    let r = y.ring().clone();
    Ok(RowFiniteMap::from_fn(&r.clone(), "X", move |m| {
        let (i, k) = tri_locate(m);
        FinVec::monomial(&r, m, y.entry(i, k))
    }))
}

/// `A·X·B = Y` on the window and `X` diagonal on every row it feeds.
pub fn verify_sandwich(y: &RowFiniteMap, x: &RowFiniteMap, w: Window) -> Vec<Check> {
    let ring = y.ring();
    let axb = RowFiniteMap::product(&[&sandwich_a(ring), x, &sandwich_b(ring)]).expect("same ring");
    let mut checks = vec![Check::rows_equal("A·X·B = Y", y, &axb, w)];
    let covered = Window::new(triangular(w.n()));
    let m = preorder_membership(x, &PreorderDescriptor::diag(), covered);
    checks.push(match m.violations.first() {
        None => Check::pass("X ∈ D"),
        Some(&(a, b)) => Check::fail("X ∈ D", format!("entry ({a},{b})"), "zero off the diagonal", "nonzero"),
    });
    checks
}

/// `f = t + t̄` with `t` the part on or below the diagonal and `t̄` the part
/// strictly above it.
pub fn upper_equiv_decompose(f: &RowFiniteMap) -> (RowFiniteMap, RowFiniteMap) {
    let ring = f.ring().clone();
    let (fl, fu) = (f.clone(), f.clone());
    let (rl, ru) = (ring.clone(), ring.clone());
    let t = RowFiniteMap::from_fn(&ring, "t", move |a| {
        FinVec::from_entries(&rl, fl.row(a).entries().filter(|&(b, _)| b <= a).map(|(b, c)| (b, c.clone())))
    });
    let tbar = RowFiniteMap::from_fn(&ring, "t̄", move |a| {
        FinVec::from_entries(&ru, fu.row(a).entries().filter(|&(b, _)| b > a).map(|(b, c)| (b, c.clone())))
    });
    (t, tbar)
}

/// Re-summation plus membership of the parts in `E(ge)` and `E(le)`.
pub fn verify_decomposition(f: &RowFiniteMap, t: &RowFiniteMap, tbar: &RowFiniteMap, w: Window) -> Vec<Check> {
    let mut checks = vec![Check::rows_equal("t + t̄ = f", f, &t.add(tbar).expect("same ring"), w)];
    for (name, part, rho) in [("t ∈ T", t, PreorderDescriptor::ge()), ("t̄ ∈ T̄", tbar, PreorderDescriptor::le())] {
        let m = preorder_membership(part, &rho, w);
        checks.push(match m.violations.first() {
            None => Check::pass(name),
            Some(&(a, b)) => Check::fail(name, format!("entry ({a},{b})"), "zero", "nonzero"),
        });
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::check::all_passed;
    use crate::rowfin::random::{random_lower, random_square};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn a_and_b_layout() {
        let z = BaseRing::integers();
        let a = sandwich_a(&z);
        assert_eq!(a.row_support(1), [1].into());
        assert_eq!(a.row_support(2), [2, 3].into());
        assert_eq!(a.row_support(3), [4, 5, 6].into());
        assert_eq!(a.row_support(4), (7..=10).collect());
        let b = sandwich_b(&z);
        let firsts: Vec<u64> = (1..=6).map(|m| b.row(m).max_index().unwrap()).collect();
        assert_eq!(firsts, [1, 1, 2, 1, 2, 3]);
        assert_eq!(FinVec::unit(&z, 2).apply(&a).unwrap(), FinVec::indicator(&z, [2, 3]));
        let ab_plus = a.add(&b).unwrap();
        assert_eq!(*ab_plus.row(2), a.row(2).add(&b.row(2)).unwrap());
    }

    #[test]
    fn ab_rows_are_prefix_indicators() {
        let z = BaseRing::integers();
        let ab = sandwich_a(&z).compose(&sandwich_b(&z)).unwrap();
        for i in 1..=12 {
            assert_eq!(*ab.row(i), FinVec::indicator(&z, 1..=i));
        }
    }

    #[test]
    fn identity_and_zero_targets() {
        let z = BaseRing::integers();
        let one = RowFiniteMap::identity(&z);
        let x = sandwich_x(&one, Window::new(12)).unwrap();
        for m in 1..=triangular(12) {
            let (i, k) = tri_locate(m);
            assert_eq!(x.entry(m, m), if i == k { z.one() } else { z.zero() });
        }
        assert!(all_passed(&verify_sandwich(&one, &x, Window::new(12))));
        let zero = RowFiniteMap::zero(&z);
        let x0 = sandwich_x(&zero, Window::new(12)).unwrap();
        assert!(x0.equal_on_window(&zero, Window::new(78)));
        assert!(all_passed(&verify_sandwich(&zero, &x0, Window::new(12))));
    }

    #[test]
    fn random_lower_targets() {
        let r = BaseRing::gf(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let y = random_lower(&r, &mut rng, 20);
            let x = sandwich_x(&y, Window::new(20)).unwrap();
            assert!(all_passed(&verify_sandwich(&y, &x, Window::new(20))));
        }
    }

    #[test]
    fn upper_entries_are_rejected() {
        let z = BaseRing::integers();
        let e23 = RowFiniteMap::matrix_unit(&z, 2, 3);
        assert_eq!(sandwich_x(&e23, Window::new(5)).unwrap_err(), Error::NotLowerTriangular { row: 2, col: 3 });
    }

    #[test]
    fn decomposition_examples() {
        let z = BaseRing::integers();
        let w = Window::new(16);
        let (t, tbar) = upper_equiv_decompose(&RowFiniteMap::identity(&z));
        assert!(t.equal_on_window(&RowFiniteMap::identity(&z), w));
        assert!(tbar.equal_on_window(&RowFiniteMap::zero(&z), w));
        let f = RowFiniteMap::matrix_unit(&z, 2, 1).add(&RowFiniteMap::matrix_unit(&z, 1, 2)).unwrap();
        let (t, tbar) = upper_equiv_decompose(&f);
        assert!(t.equal_on_window(&RowFiniteMap::matrix_unit(&z, 2, 1), w));
        assert!(tbar.equal_on_window(&RowFiniteMap::matrix_unit(&z, 1, 2), w));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = random_square(&BaseRing::zmod(6).unwrap(), &mut rng, 16);
        let (t, tbar) = upper_equiv_decompose(&g);
        assert!(all_passed(&verify_decomposition(&g, &t, &tbar, w)));
    }
}
