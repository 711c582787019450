//! Subrings `E(ρ)`: matrices whose `(α, β)` entry vanishes unless `α ρ β`.
//!
//! `E(ρ)` falls in the class of the diagonal ring exactly when only finitely
//! many indices have infinite up-sets; otherwise a refinement of the up-sets
//! gives `g, h` with `g·S′·h` covering the upper-triangular matrices (nested
//! refinement) or everything (disjoint refinement), `S′ ⊆ E(ρ)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::constructions::check::Check;
use crate::error::{Error, Result};
use crate::indexing::{Branch, IndexSupport, InfSet, PreorderDescriptor};
use crate::ring::BaseRing;
use crate::rowfin::{FinVec, RowFiniteMap, Window};
use crate::Index;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    /// Nonzero entries `(α, β)` with `α` in the window and `(α, β) ∉ ρ`.
    pub violations: Vec<(Index, Index)>,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn preorder_membership(f: &RowFiniteMap, rho: &PreorderDescriptor, w: Window) -> Membership {
    let violations = w
        .rows()
        .flat_map(|a| f.row(a).support().into_iter().filter(move |&b| !rho.relates(a, b)).map(move |b| (a, b)).collect::<Vec<_>>())
        .collect();
    Membership { violations }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    DClass,
    EClass,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::DClass => "DClass",
            Verdict::EClass => "EClass",
        })
    }
}

#[derive(Clone, Debug)]
pub enum Evidence {
    /// The finitely many indices with infinite up-sets.
    Exceptional(BTreeSet<Index>),
    /// Indices with infinite up-sets.
    Anchors(InfSet),
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub verdict: Verdict,
    pub evidence: Evidence,
}

/// Verdict read from the descriptor's infinite-up-set tag after its
/// consistency spot checks pass up to `bound`.
pub fn classify_preorder(rho: &PreorderDescriptor, bound: Index, seed: u64) -> Result<Classification> {
    rho.spot_check(bound, seed)?;
    Ok(match rho.infinite_upsets() {
        IndexSupport::Finite(s) => Classification { verdict: Verdict::DClass, evidence: Evidence::Exceptional(s.clone()) },
        IndexSupport::Infinite(e) => Classification { verdict: Verdict::EClass, evidence: Evidence::Anchors(e.clone()) },
    })
}

#[derive(Clone, Debug)]
enum Targets {
    /// `β_j` for `j ≤ capacity`, with its inverse.
    Nested { betas: Vec<Index>, position: BTreeMap<Index, u64> },
    Disjoint,
}

/// `g` (row `j` is `e_{α_j}`) and `h` (sending the chosen columns back to
/// `e_j` or `e_k`), plus the lift that builds `s′ ∈ E(ρ)` from a target.
#[derive(Clone, Debug)]
pub struct EquivWitness {
    pub branch: Branch,
    pub g: RowFiniteMap,
    pub h: RowFiniteMap,
    rho: PreorderDescriptor,
    targets: Targets,
}

/// Builds the witness for an E-class preorder with a refinement.
///
/// Nested branch: `β_j` is the least element of `bars(j)` not already
/// chosen, precomputed for `j ≤ capacity`; `h` is zero beyond those rows.
/// Disjoint branch: `h` sends `bars(j).nth(k)` to `e_k`.
pub fn eclass_witness(ring: &BaseRing, rho: &PreorderDescriptor, capacity: u64) -> Result<EquivWitness> {
    if let IndexSupport::Finite(_) = rho.infinite_upsets() {
        return Err(Error::Descriptor(format!("{}: finitely many infinite up-sets, no E-class witness", rho.name())));
    }
    let refinement = rho
        .refinement()
        .ok_or_else(|| Error::Descriptor(format!("{}: no refinement supplied", rho.name())))?
        .clone();
    let anchors = refinement.clone();
    let r = ring.clone();
    let g = RowFiniteMap::from_fn(ring, "g", move |j| FinVec::unit(&r, anchors.anchor(j)));
    let (targets, h) = match refinement.branch() {
        Branch::Nested => {
            let mut betas = Vec::new();
            let mut used = BTreeSet::new();
            for j in 1..=capacity {
                let bar = refinement.bar(j);
                let mut t = 1;
                let beta = loop {
                    let b = bar.nth(t)?;
                    if !used.contains(&b) {
                        break b;
                    }
                    t += 1;
                };
                used.insert(beta);
                betas.push(beta);
            }
            let position: BTreeMap<Index, u64> = betas.iter().enumerate().map(|(j, &b)| (b, j as u64 + 1)).collect();
            let table = position.clone();
            let r = ring.clone();
            let h = RowFiniteMap::from_fn(ring, "h", move |b| match table.get(&b) {
                Some(&j) => FinVec::unit(&r, j),
                None => FinVec::zero(&r),
            });
            (Targets::Nested { betas, position }, h)
        }
        Branch::Disjoint => {
            let loc = refinement.clone();
            let r = ring.clone();
            let h = RowFiniteMap::from_fn(ring, "h", move |b| match loc.locate(b, capacity) {
                Ok(Some((_, k))) => FinVec::unit(&r, k),
                _ => FinVec::zero(&r),
            });
            (Targets::Disjoint, h)
        }
    };
    Ok(EquivWitness { branch: refinement.branch(), g, h, rho: rho.clone(), targets })
}

impl EquivWitness {
    pub fn anchor(&self, j: u64) -> Index {
        self.rho.refinement().expect("checked at build").anchor(j)
    }

    /// `s′` with `g·s′·h = target` on rows `1..=n`.
    ///
    /// Nested branch: the target must be upper-triangular on the window and
    /// its columns within the precomputed capacity. Disjoint branch: any
    /// target.
    pub fn lift(&self, target: &RowFiniteMap, w: Window) -> Result<RowFiniteMap> {
        let ring = target.ring();
        let refinement = self.rho.refinement().expect("checked at build");
        let mut rows = BTreeMap::new();
        for j in w.rows() {
            let trow = target.row(j);
            if trow.is_zero() {
                continue;
            }
            let mut v = FinVec::zero(ring);
            for (k, c) in trow.entries() {
                let col = match &self.targets {
                    Targets::Nested { betas, .. } => {
                        if k < j {
                            return Err(Error::OutOfScope { row: j, col: k });
                        }
                        *betas.get(k as usize - 1).ok_or(Error::Capacity { capacity: betas.len() as u64, needed: k })?
                    }
                    Targets::Disjoint => refinement.bar(j).nth(k)?,
                };
                v.add_at(col, c);
            }
            rows.insert(self.anchor(j), v);
        }
        Ok(RowFiniteMap::from_rows(ring, "s′", rows))
    }

    /// Lift, membership of the lift in `E(ρ)`, and reproduction of the target.
    pub fn verify(&self, target: &RowFiniteMap, w: Window) -> Result<Vec<Check>> {
        let s = self.lift(target, w)?;
        let anchor_window = Window::new(w.rows().map(|j| self.anchor(j)).max().unwrap_or(1));
        let m = preorder_membership(&s, &self.rho, anchor_window);
        let membership = match m.violations.first() {
            None => Check::pass(format!("s′ ∈ E({})", self.rho.name())),
            Some(&(a, b)) => Check::fail(format!("s′ ∈ E({})", self.rho.name()), format!("entry ({a},{b})"), "related pair", "unrelated"),
        };
        let gsh = RowFiniteMap::product(&[&self.g, &s, &self.h])?;
        Ok(vec![membership, Check::rows_equal("g·s′·h = target", target, &gsh, w)])
    }

    /// Chosen `β_j` for the nested branch.
    pub fn betas(&self) -> Option<&[Index]> {
        match &self.targets {
            Targets::Nested { betas, .. } => Some(betas),
            Targets::Disjoint => None,
        }
    }

    /// `j` with `β_j = b`, nested branch only.
    pub fn beta_position(&self, b: Index) -> Option<u64> {
        match &self.targets {
            Targets::Nested { position, .. } => position.get(&b).copied(),
            Targets::Disjoint => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::check::all_passed;
    use crate::indexing::Refinement;
    use crate::rowfin::random::{random_square, random_upper};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn membership_examples() {
        let z = BaseRing::integers();
        let w = Window::new(10);
        assert!(preorder_membership(&RowFiniteMap::identity(&z), &PreorderDescriptor::diag(), w).is_member());
        let m = preorder_membership(&RowFiniteMap::matrix_unit(&z, 1, 2), &PreorderDescriptor::diag(), w);
        assert_eq!(m.violations, [(1, 2)]);
        let a = crate::constructions::sandwich::sandwich_a(&z);
        let m = preorder_membership(&a, &PreorderDescriptor::ge(), w);
        assert_eq!(m.violations.first(), Some(&(2, 3)));
    }

    #[test]
    fn verdict_table() {
        let cases = [
            ("diag", Verdict::DClass),
            ("ge", Verdict::DClass),
            ("le", Verdict::EClass),
            ("full", Verdict::EClass),
            ("union-finite:{(1,2),(3,5),(5,9)}", Verdict::DClass),
            ("mod:2:{(1,0)}", Verdict::EClass),
        ];
        for (dsl, expected) in cases {
            let rho = PreorderDescriptor::parse(dsl).unwrap();
            assert_eq!(classify_preorder(&rho, 30, 1).unwrap().verdict, expected, "{dsl}");
            assert_eq!(classify_preorder(&rho, 60, 2).unwrap().verdict, expected, "{dsl}");
        }
    }

    #[test]
    fn inconsistent_tags_are_rejected() {
        let bad = PreorderDescriptor::ge().with_infinite_upsets(IndexSupport::Infinite(InfSet::naturals()));
        assert!(classify_preorder(&bad, 20, 0).is_err());
    }

    #[test]
    fn nested_witness_for_le() {
        let r = BaseRing::gf(3).unwrap();
        let rho = PreorderDescriptor::le();
        let wit = eclass_witness(&r, &rho, 12).unwrap();
        assert_eq!(wit.betas().unwrap(), (1..=12).collect::<Vec<_>>());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..5 {
            let y = random_upper(&r, &mut rng, 12);
            assert!(all_passed(&wit.verify(&y, Window::new(12)).unwrap()));
        }
        let lower = RowFiniteMap::matrix_unit(&r, 3, 1);
        assert_eq!(wit.lift(&lower, Window::new(12)).unwrap_err(), Error::OutOfScope { row: 3, col: 1 });
        let zero = wit.lift(&RowFiniteMap::zero(&r), Window::new(12)).unwrap();
        assert!(zero.equal_on_window(&RowFiniteMap::zero(&r), Window::new(40)));
    }

    #[test]
    fn greedy_betas_skip_used_elements() {
        let r = BaseRing::gf(2).unwrap();
        // constant bars force the greedy choice to walk forward
        let rho = PreorderDescriptor::full();
        let wit = eclass_witness(&r, &rho, 6).unwrap();
        assert_eq!(wit.betas().unwrap(), [1, 2, 3, 4, 5, 6]);
        let rho = PreorderDescriptor::full()
            .with_refinement(Refinement::new(Branch::Nested, |j| j, |j| InfSet::multiples(1 << ((j - 1) / 2))));
        rho.spot_check(30, 0).unwrap();
        let wit = eclass_witness(&r, &rho, 5).unwrap();
        assert_eq!(wit.betas().unwrap(), [1, 2, 4, 6, 8]);
        assert_eq!(wit.beta_position(6), Some(4));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let y = random_upper(&r, &mut rng, 5);
        assert!(all_passed(&wit.verify(&y, Window::new(5)).unwrap()));
    }

    #[test]
    fn disjoint_witness_for_mod() {
        let r = BaseRing::gf(5).unwrap();
        let rho = PreorderDescriptor::parse("mod:2:{(1,0)}").unwrap();
        let wit = eclass_witness(&r, &rho, 64).unwrap();
        assert_eq!(wit.branch, Branch::Disjoint);
        let f = RowFiniteMap::matrix_unit(&r, 1, 1).add(&RowFiniteMap::matrix_unit(&r, 2, 3)).unwrap();
        assert!(all_passed(&wit.verify(&f, Window::new(8)).unwrap()));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = random_square(&r, &mut rng, 12);
        assert!(all_passed(&wit.verify(&f, Window::new(12)).unwrap()));
    }

    #[test]
    fn dclass_preorders_have_no_witness() {
        let r = BaseRing::gf(2).unwrap();
        assert!(eclass_witness(&r, &PreorderDescriptor::ge(), 4).is_err());
    }
}
