//! Any countable family `{u_i : i ∈ ℤ}` of endomorphisms lies in the
//! semigroup generated by two maps `f₁, f₃`.
//!
//! Coordinates of ℕ⁺ are read as pairs `(i, γ) ∈ ℤ × ℕ⁺` through
//! [`ZPairing`]. `Σ = {(0, γ)}`; `g₁` embeds ℕ⁺ onto `Σ`, `g₂` is its inverse
//! on `Σ` and zero elsewhere, `g₄` shifts `i ↦ i + 1` with inverse `g₅`, and
//! `g₃` carries a copy of `u_i` on the slice `{i} × ℕ⁺`, so that
//! `u_i = g₁ g₄ⁱ g₃ g₅ⁱ g₂` (with `g₄⁻¹ = g₅`).
//!
//! The five `g`'s are then encoded by `f₁, f₃` over the partition of ℕ⁺ into
//! residue classes `Σ₁, …, Σ₇` mod 7: `g_i = f₁⁶ f₃ f₁ⁱ f₃`.

use std::collections::BTreeMap;

use crate::constructions::check::Check;
use crate::error::{Error, Result};
use crate::indexing::{order_iso, seven_partition, z_pairing, zunfold, IndexMap, InfSet, SevenPartition, ZPairing};
use crate::ring::BaseRing;
use crate::rowfin::{FinVec, RowFiniteMap, Window};
use crate::words::{RingWord, WordEnv};
use crate::Index;

/// Lays a list out on ℤ in the order `0, −1, 1, −2, 2, …`.
pub fn source_from_list(maps: Vec<RowFiniteMap>) -> BTreeMap<i64, RowFiniteMap> {
    maps.into_iter().enumerate().map(|(n, f)| (zunfold(n as u64 + 1), f)).collect()
}

#[derive(Clone, Debug)]
pub struct GFamily {
    ring: BaseRing,
    pub g: [RowFiniteMap; 5],
    pub pairing: ZPairing,
    pub source: BTreeMap<i64, RowFiniteMap>,
}

impl GFamily {
    pub fn build(ring: &BaseRing, source: BTreeMap<i64, RowFiniteMap>) -> Result<Self> {
        for u in source.values() {
            ring.ensure_same(u.ring())?;
        }
        let pz = z_pairing();
        let r = ring.clone();
        let g1 = RowFiniteMap::from_fn(ring, "g1", move |k| FinVec::unit(&r, pz.encode(0, k)));
        let r = ring.clone();
        let g2 = RowFiniteMap::from_fn(ring, "g2", move |m| match pz.decode(m) {
            (0, k) => FinVec::unit(&r, k),
            _ => FinVec::zero(&r),
        });
        let r = ring.clone();
        let g4 = RowFiniteMap::from_fn(ring, "g4", move |m| {
            let (i, k) = pz.decode(m);
            FinVec::unit(&r, pz.encode(i + 1, k))
        });
        let r = ring.clone();
        let g5 = RowFiniteMap::from_fn(ring, "g5", move |m| {
            let (i, k) = pz.decode(m);
            FinVec::unit(&r, pz.encode(i - 1, k))
        });
        let r = ring.clone();
        let slices = source.clone();
        // row (i, γ) of g₃ is row γ of u_i with columns moved into slice i
        let g3 = RowFiniteMap::from_fn(ring, "g3", move |m| {
            let (i, k) = pz.decode(m);
            match slices.get(&i) {
                Some(u) => FinVec::from_entries(&r, u.row(k).entries().map(|(c, v)| (pz.encode(i, c), v.clone()))),
                None => FinVec::zero(&r),
            }
        });
        Ok(GFamily { ring: ring.clone(), g: [g1, g2, g3, g4, g5], pairing: pz, source })
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    /// `g_i`, 1-based.
    pub fn get(&self, i: usize) -> &RowFiniteMap {
        &self.g[i - 1]
    }

    /// `π_Σ` for `Σ = {(0, γ)}`.
    pub fn sigma_projection(&self) -> RowFiniteMap {
        let pz = self.pairing;
        RowFiniteMap::projection_where(&self.ring, "π_Σ", move |m| pz.decode(m).0 == 0)
    }

    /// `g₁ g₄ⁱ g₃ g₅ⁱ g₂` with negative powers read through `g₅ = g₄⁻¹`.
    pub fn u_expression(&self, i: i64) -> RowFiniteMap {
        let (up, down) = if i >= 0 { (self.get(4), self.get(5)) } else { (self.get(5), self.get(4)) };
        let e = i.unsigned_abs() as u32;
        RowFiniteMap::product(&[self.get(1), &up.pow(e), self.get(3), &down.pow(e), self.get(2)]).expect("same ring")
    }

    pub fn verify(&self, w: Window) -> Vec<Check> {
        let one = RowFiniteMap::identity(&self.ring);
        let (g1, g2, g4, g5) = (self.get(1), self.get(2), self.get(4), self.get(5));
        let mut checks = vec![
            Check::rows_equal("g2·g1 = π_Σ", &self.sigma_projection(), &g2.compose(g1).unwrap(), w),
            Check::rows_equal("g1·g2 = 1", &one, &g1.compose(g2).unwrap(), w),
            Check::rows_equal("g4·g5 = 1", &one, &g4.compose(g5).unwrap(), w),
            Check::rows_equal("g5·g4 = 1", &one, &g5.compose(g4).unwrap(), w),
        ];
        for (&i, u) in &self.source {
            checks.push(Check::rows_equal(format!("u[{i}] = g1·g4^i·g3·g5^i·g2"), u, &self.u_expression(i), w));
        }
        checks
    }
}

/// Builds the family and fails on any identity that does not hold.
pub fn build_g_family(ring: &BaseRing, source: BTreeMap<i64, RowFiniteMap>, w: Window) -> Result<GFamily> {
    let gf = GFamily::build(ring, source)?;
    if let Some(c) = gf.verify(w).into_iter().find(Check::failed) {
        return Err(Error::Verification(c.to_string()));
    }
    Ok(gf)
}

#[derive(Clone, Debug)]
pub struct TwoGenWitness {
    pub family: GFamily,
    pub f1: RowFiniteMap,
    pub f2: RowFiniteMap,
    pub f3: RowFiniteMap,
    f1_index: IndexMap,
}

/// `Σ_i → Σ_{i+1}` for `i = 1..5` and `Σ₆ ∪ Σ₇ → Σ₇`, all order isomorphisms.
fn f1_index_map(p: SevenPartition) -> IndexMap {
    let mut pieces: Vec<(InfSet, InfSet)> = (1..=5).map(|i| (p.piece(i), p.piece(i + 1))).collect();
    pieces.push((p.union(&[6, 7]), p.piece(7)));
    IndexMap::piecewise(pieces)
}

impl TwoGenWitness {
    pub fn build(family: GFamily) -> Self {
        let p = seven_partition();
        let ring = family.ring().clone();
        let f1_index = f1_index_map(p);
        let f1 = RowFiniteMap::from_index_map(&ring, "f1", f1_index.clone());
        let f2_index = order_iso(InfSet::naturals(), p.piece(1));
        let f2 = RowFiniteMap::from_index_map(&ring, "f2", f2_index.clone());
        let gs = family.g.clone();
        let inv = f1_index.clone();
        let r = ring.clone();
        let f3 = RowFiniteMap::from_fn(&ring, "f3", move |m| {
            let class = p.class_of(m);
            let pos = (m - 1) / 7 + 1;
            match class {
                // Σ_{i+1} holds the rows of g_i
                2..=6 => (*gs[class - 2].row(pos)).clone(),
                // Σ₇ = f₁⁶(ℕ⁺); row f₁⁶(k) is e_{f₂(k)}
                7 => {
                    let k = (0..6).fold(m, |x, _| inv.inverse(x).expect("f1 is onto the complement of Σ1"));
                    FinVec::unit(&r, f2_index.apply(k).expect("f2 is total"))
                }
                _ => FinVec::zero(&r),
            }
        });
        TwoGenWitness { family, f1, f2, f3, f1_index }
    }

    /// `f₁⁶(k)`: the row of `f₃` that every `g`-word reads first.
    pub fn f1_six(&self, k: Index) -> Index {
        (0..6).fold(k, |x, _| self.f1_index.apply(x).expect("f1 is total"))
    }

    /// `f₁⁶ f₃ f₁ⁱ f₃`, for `i = 1..5`.
    pub fn word_for_g(i: usize) -> RingWord {
        assert!((1..=5).contains(&i));
        let mut letters: Vec<RingWord> = vec![RingWord::gen("f1"); 6];
        letters.push(RingWord::gen("f3"));
        letters.extend(std::iter::repeat(RingWord::gen("f1")).take(i));
        letters.push(RingWord::gen("f3"));
        RingWord::product_chain(letters).expect("non-empty")
    }

    /// `g₁ g₄ⁱ g₃ g₅ⁱ g₂` with each `g` replaced by its word.
    pub fn word_for_u(i: i64) -> RingWord {
        let (up, down) = if i >= 0 { (4, 5) } else { (5, 4) };
        let e = i.unsigned_abs() as usize;
        let mut parts = vec![1];
        parts.extend(std::iter::repeat(up).take(e));
        parts.push(3);
        parts.extend(std::iter::repeat(down).take(e));
        parts.push(2);
        RingWord::product_chain(parts.into_iter().map(Self::word_for_g)).expect("non-empty")
    }

    pub fn env(&self) -> WordEnv {
        self.env_with(self.f1.clone(), self.f3.clone())
    }

    pub fn env_with(&self, f1: RowFiniteMap, f3: RowFiniteMap) -> WordEnv {
        WordEnv::from_bindings(self.family.ring(), [("f1".to_string(), f1), ("f3".to_string(), f3)]).expect("same ring")
    }

    /// Every `g_i` and every materialized `u_i` against its word in `env`.
    pub fn verify_with_env(&self, env: &WordEnv, w: Window) -> Result<Vec<Check>> {
        let mut checks = Vec::new();
        for i in 1..=5 {
            let got = env.eval(&Self::word_for_g(i))?;
            checks.push(Check::rows_equal(format!("g{i} = f1^6·f3·f1^{i}·f3"), self.family.get(i), &got, w));
        }
        for (&i, u) in &self.family.source {
            let got = env.eval(&Self::word_for_u(i))?;
            checks.push(Check::rows_equal(format!("u[{i}] = word_for_u({i})"), u, &got, w));
        }
        Ok(checks)
    }

    pub fn verify(&self, w: Window) -> Vec<Check> {
        self.verify_with_env(&self.env(), w).expect("f1 and f3 are bound")
    }

    /// `f₃` with one extra diagonal entry on the first row every `g`-word reads.
    pub fn corrupted_f3(&self) -> RowFiniteMap {
        let m = self.f1_six(1);
        let ring = self.family.ring();
        self.f3.add(&RowFiniteMap::matrix_unit(ring, m, m)).expect("same ring").retagged("f3*")
    }
}
