//! A countable ring `S` embeds diagonally, `s ↦ Δ(s)`, into the ring of
//! row-finite matrices over `S`, and the images of its elements lie in the
//! subring generated by the two maps `f₁, f₃` built for the family `{Δ(s)}`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constructions::check::Check;
use crate::constructions::two_gen::{source_from_list, GFamily, TwoGenWitness};
use crate::error::Result;
use crate::indexing::zunfold;
use crate::ring::{CountableRingEnum, Elem};
use crate::rowfin::random::random_sparse;
use crate::rowfin::{RowFiniteMap, Window};
use crate::words::RingWord;

/// Random matrices each central `Δ(s)` must commute with.
pub const CENTER_SAMPLES: usize = 20;

#[derive(Clone, Debug)]
pub struct MaltsevReport {
    pub elements: Vec<Elem>,
    /// `words[n]` realizes `Δ(elements[n])` in `f1, f3`.
    pub words: Vec<RingWord>,
    pub central: Vec<Elem>,
    pub checks: Vec<Check>,
    pub witness: TwoGenWitness,
}

/// Materializes the first `count` elements, builds the two generators for
/// their diagonal images and verifies words, ring homomorphism and center
/// preservation on the window.
pub fn maltsev_embed(elements: &CountableRingEnum, count: u64, w: Window, seed: u64) -> Result<MaltsevReport> {
    let ring = elements.ring().clone();
    let elems = elements.take(count);
    let diag: Vec<RowFiniteMap> = elems.iter().map(|s| RowFiniteMap::scalar(&ring, s.clone())).collect();
    let witness = TwoGenWitness::build(GFamily::build(&ring, source_from_list(diag.clone()))?);
    let env = witness.env();
    let mut checks = Vec::new();
    let mut words = Vec::new();
    for (n, s) in elems.iter().enumerate() {
        let i = zunfold(n as u64 + 1);
        let word = TwoGenWitness::word_for_u(i);
        let got = env.eval(&word)?;
        checks.push(Check::rows_equal(format!("Δ({}) = word_for_u({i})", ring.format_elem(s)), &diag[n], &got, w));
        words.push(word);
    }
    for (a, s) in elems.iter().enumerate() {
        for (b, t) in elems.iter().enumerate() {
            let (fs, ft) = (ring.format_elem(s), ring.format_elem(t));
            let prod = RowFiniteMap::scalar(&ring, ring.mul(s, t));
            checks.push(Check::rows_equal(format!("Δ({fs})·Δ({ft}) = Δ({fs}·{ft})"), &prod, &diag[a].compose(&diag[b])?, w));
            let sum = RowFiniteMap::scalar(&ring, ring.add(s, t));
            checks.push(Check::rows_equal(format!("Δ({fs})+Δ({ft}) = Δ({fs}+{ft})"), &sum, &diag[a].add(&diag[b])?, w));
        }
    }
    let central: Vec<Elem> = match ring.center() {
        Some(z) => z,
        // infinite rings: the materialized elements commuting with all others
        None => elems.iter().filter(|s| elems.iter().all(|t| ring.mul(s, t) == ring.mul(t, s))).cloned().collect(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<RowFiniteMap> =
        (0..CENTER_SAMPLES).map(|_| random_sparse(&ring, &mut rng, w.n(), 2 * w.n() as usize)).collect();
    for z in &central {
        let dz = RowFiniteMap::scalar(&ring, z.clone());
        let fz = ring.format_elem(z);
        let mut others: Vec<(String, &RowFiniteMap)> = vec![("f1".into(), &witness.f1), ("f3".into(), &witness.f3)];
        others.extend(samples.iter().enumerate().map(|(k, m)| (format!("sample {k}"), m)));
        for (name, m) in others {
            checks.push(Check::rows_equal(format!("Δ({fz}) commutes with {name}"), &m.compose(&dz)?, &dz.compose(m)?, w));
        }
    }
    Ok(MaltsevReport { elements: elems, words, central, checks, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::BaseRing;

    #[test]
    fn zmod6_embedding() {
        let r = BaseRing::zmod(6).unwrap();
        let rep = maltsev_embed(&CountableRingEnum::new(r.clone()), 6, Window::new(16), 3).unwrap();
        assert_eq!(rep.words.len(), 6);
        assert!(rep.checks.iter().all(Check::passed));
        let d3 = RowFiniteMap::scalar(&r, r.from_i64(3));
        let d4 = RowFiniteMap::scalar(&r, r.from_i64(4));
        assert!(d3.compose(&d4).unwrap().equal_on_window(&RowFiniteMap::scalar(&r, r.zero()), Window::new(16)));
        assert_eq!(rep.central.len(), 6);
    }

    #[test]
    fn one_maps_to_identity() {
        let r = BaseRing::gf(2).unwrap();
        let rep = maltsev_embed(&CountableRingEnum::new(r.clone()), 2, Window::new(10), 0).unwrap();
        let n = rep.elements.iter().position(|e| *e == r.one()).unwrap();
        let got = rep.witness.env().eval(&rep.words[n]).unwrap();
        assert!(got.equal_on_window(&RowFiniteMap::identity(&r), Window::new(10)));
    }

    #[test]
    fn noncentral_elements_fail_to_commute() {
        let r = BaseRing::parse("Mat:2:GF:2").unwrap();
        let e12 = RowFiniteMap::scalar(&r, r.parse_elem("[[0,1],[0,0]]").unwrap());
        let e21 = RowFiniteMap::scalar(&r, r.parse_elem("[[0,0],[1,0]]").unwrap());
        assert!(!e12.compose(&e21).unwrap().equal_on_window(&e21.compose(&e12).unwrap(), Window::new(3)));
    }
}
