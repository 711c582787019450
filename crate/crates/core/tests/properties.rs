use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rowfin_core::constructions::check::all_passed;
use rowfin_core::constructions::fearing::{doubling_supports, fear_lower_embed, fear_step, fear_witness, FearingDescriptor};
use rowfin_core::constructions::preorder_ring::{classify_preorder, eclass_witness, preorder_membership, Verdict};
use rowfin_core::constructions::sandwich::{sandwich_x, upper_equiv_decompose, verify_decomposition, verify_sandwich};
use rowfin_core::constructions::two_gen::{source_from_list, GFamily, TwoGenWitness};
use rowfin_core::indexing::{cantor, tri_block, tri_locate, uncantor, zfold, zunfold, PreorderDescriptor};
use rowfin_core::rowfin::random::{random_lower, random_sparse, random_square, random_upper};
use rowfin_core::rowfin::sparse::{parse_sparse, write_sparse};
use rowfin_core::words::{proximity_oracle, support_closure, Proximity, WordEnv, DEFAULT_WORD_CAP};
use rowfin_core::{BaseRing, FinVec, RingWord, RowFiniteMap, Window};

fn ring_for(which: u8) -> BaseRing {
    match which % 3 {
        0 => BaseRing::zmod(6).unwrap(),
        1 => BaseRing::gf(5).unwrap(),
        _ => BaseRing::integers(),
    }
}

fn maps(ring: &BaseRing, seed: u64, count: usize) -> Vec<RowFiniteMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_sparse(ring, &mut rng, 16, 40)).collect()
}

fn vector(ring: &BaseRing, rng: &mut ChaCha8Rng) -> FinVec {
    FinVec::from_entries(ring, (0..4).map(|_| (rng.gen_range(1..=16), ring.random(rng, 9))).collect::<Vec<_>>())
}

fn random_word(rng: &mut ChaCha8Rng, leaves: &[RingWord], len: u64) -> RingWord {
    if len == 1 {
        return leaves[rng.gen_range(0..leaves.len())].clone();
    }
    let k = rng.gen_range(1..len);
    let (l, r) = (random_word(rng, leaves, k), random_word(rng, leaves, len - k));
    if rng.gen_bool(0.5) {
        RingWord::sum(l, r)
    } else {
        RingWord::prod(l, r)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms_on_window(which in 0u8..2, seed in any::<u64>()) {
        let ring = ring_for(which);
        let w = Window::new(16);
        let m = maps(&ring, seed, 3);
        let (f, g, h) = (&m[0], &m[1], &m[2]);
        let one = RowFiniteMap::identity(&ring);
        prop_assert!(f.compose(g).unwrap().compose(h).unwrap().equal_on_window(&f.compose(&g.compose(h).unwrap()).unwrap(), w));
        prop_assert!(f.compose(&g.add(h).unwrap()).unwrap().equal_on_window(&f.compose(g).unwrap().add(&f.compose(h).unwrap()).unwrap(), w));
        prop_assert!(f.add(g).unwrap().compose(h).unwrap().equal_on_window(&f.compose(h).unwrap().add(&g.compose(h).unwrap()).unwrap(), w));
        prop_assert!(f.compose(&one).unwrap().equal_on_window(f, w));
        prop_assert!(one.compose(f).unwrap().equal_on_window(f, w));
        prop_assert!(f.add(g).unwrap().equal_on_window(&g.add(f).unwrap(), w));
        prop_assert!(f.sub(f).unwrap().equal_on_window(&RowFiniteMap::zero(&ring), w));
    }

    #[test]
    fn apply_is_linear_and_a_right_action(which in 0u8..3, seed in any::<u64>()) {
        let ring = ring_for(which);
        let m = maps(&ring, seed, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let (x, y) = (vector(&ring, &mut rng), vector(&ring, &mut rng));
        let (f, g) = (&m[0], &m[1]);
        prop_assert_eq!(x.apply(&f.add(g).unwrap()).unwrap(), x.apply(f).unwrap().add(&x.apply(g).unwrap()).unwrap());
        prop_assert_eq!(x.add(&y).unwrap().apply(f).unwrap(), x.apply(f).unwrap().add(&y.apply(f).unwrap()).unwrap());
        prop_assert_eq!(x.apply(&f.compose(g).unwrap()).unwrap(), x.apply(f).unwrap().apply(g).unwrap());
    }

    #[test]
    fn sparse_round_trip(which in 0u8..3, seed in any::<u64>()) {
        let ring = ring_for(which);
        let f = &maps(&ring, seed, 1)[0];
        let w = Window::new(16);
        let back = parse_sparse(&write_sparse(f, w)).unwrap();
        prop_assert!(back.equal_on_window(f, w));
    }

    #[test]
    fn word_print_parse_round_trip(seed in any::<u64>(), len in 1u64..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let leaves = [RingWord::gen("a"), RingWord::gen("f3"), RingWord::Zero, RingWord::One, RingWord::NegOne];
        let w = random_word(&mut rng, &leaves, len);
        prop_assert_eq!(w.length(), len);
        let back: RingWord = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn pairings_invert(i in -10_000i64..10_000, a in 1u64..5_000, b in 1u64..5_000) {
        prop_assert_eq!(zunfold(zfold(i)), i);
        prop_assert_eq!(uncantor(cantor(a, b)), (a, b));
        let k = cantor(a, b);
        let (blk, pos) = tri_locate(k);
        prop_assert!(tri_block(blk).contains(&k));
        prop_assert!(pos >= 1 && pos <= blk);
    }

    #[test]
    fn two_generator_soundness(which in 0u8..2, seed in any::<u64>(), size in 0usize..8) {
        let ring = ring_for(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let family: Vec<RowFiniteMap> = (0..size).map(|_| random_sparse(&ring, &mut rng, 24, 30)).collect();
        let gf = GFamily::build(&ring, source_from_list(family)).unwrap();
        prop_assert!(all_passed(&gf.verify(Window::new(32))));
        let witness = TwoGenWitness::build(gf);
        prop_assert!(all_passed(&witness.verify(Window::new(32))));
    }

    #[test]
    fn sandwich_reproduces_lower_targets(which in 0u8..3, seed in any::<u64>()) {
        let ring = ring_for(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = random_lower(&ring, &mut rng, 12);
        let x = sandwich_x(&y, Window::new(12)).unwrap();
        prop_assert!(all_passed(&verify_sandwich(&y, &x, Window::new(12))));
        let f = random_square(&ring, &mut rng, 12);
        let (t, tbar) = upper_equiv_decompose(&f);
        prop_assert!(all_passed(&verify_decomposition(&f, &t, &tbar, Window::new(12))));
    }

    #[test]
    fn union_finite_is_dclass_and_stable(pairs in proptest::collection::vec((1u64..12, 1u64..12), 0..5)) {
        let rho = PreorderDescriptor::union_finite(&pairs).unwrap();
        let a = classify_preorder(&rho, 24, 1).unwrap();
        let b = classify_preorder(&rho, 48, 2).unwrap();
        prop_assert_eq!(a.verdict, Verdict::DClass);
        prop_assert_eq!(b.verdict, Verdict::DClass);
    }

    #[test]
    fn modular_is_eclass_with_sound_witness(m in 2u64..5, pairs in proptest::collection::vec((0u64..5, 0u64..5), 0..3), seed in any::<u64>()) {
        let pairs: Vec<(u64, u64)> = pairs.into_iter().map(|(a, b)| (a % m, b % m)).collect();
        let rho = PreorderDescriptor::modular(m, &pairs).unwrap();
        prop_assert_eq!(classify_preorder(&rho, 24, seed).unwrap().verdict, Verdict::EClass);
        prop_assert_eq!(classify_preorder(&rho, 48, seed).unwrap().verdict, Verdict::EClass);
        let ring = BaseRing::gf(3).unwrap();
        let witness = eclass_witness(&ring, &rho, 32).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let target = random_square(&ring, &mut rng, 6);
        prop_assert!(all_passed(&witness.verify(&target, Window::new(6)).unwrap()));
    }

    #[test]
    fn nested_witness_lifts_upper_targets(seed in any::<u64>()) {
        let ring = BaseRing::zmod(6).unwrap();
        let rho = PreorderDescriptor::le();
        let witness = eclass_witness(&ring, &rho, 16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let target = random_upper(&ring, &mut rng, 8);
        let s = witness.lift(&target, Window::new(8)).unwrap();
        prop_assert!(preorder_membership(&s, &rho, Window::new(8)).is_member());
        prop_assert!(all_passed(&witness.verify(&target, Window::new(8)).unwrap()));
    }

    #[test]
    fn bowls(seed in any::<u64>(), len in 1u64..6) {
        let ring = BaseRing::zmod(6).unwrap();
        let s = doubling_supports(&ring);
        let u = vec![("s".to_string(), RowFiniteMap::shift(&ring))];
        let step = fear_step(&s, &u);
        let mut bindings = u.clone();
        bindings.push(("d".to_string(), s.sample(seed)));
        let env = WordEnv::from_bindings(&ring, bindings).unwrap();
        let leaves = [RingWord::gen("s"), RingWord::gen("d"), RingWord::One, RingWord::NegOne, RingWord::Zero];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&mut rng, &leaves, len);
        let x = vector(&ring, &mut rng);
        let y = x.apply(&env.eval(&w).unwrap()).unwrap();
        let ball = support_closure(&x, &step, w.length());
        prop_assert!(y.support().is_subset(&ball.cover));
        prop_assert!(x.support().is_subset(&ball.cover));
        let bigger = support_closure(&x, &step, w.length() + 1);
        prop_assert!(ball.cover.is_subset(&bigger.cover));
    }

    #[test]
    fn escapes_leave_their_covers(j in 1u64..7, with_shift in any::<bool>()) {
        let ring = BaseRing::gf(3).unwrap();
        let u = if with_shift { vec![("s".to_string(), RowFiniteMap::shift(&ring))] } else { Vec::new() };
        let wit = fear_witness(&FearingDescriptor::diagonal(&ring), &u, j).unwrap();
        prop_assert!(all_passed(&wit.verify()));
        let blocks: BTreeSet<u64> = wit.blocks.iter().flatten().copied().collect();
        prop_assert_eq!(blocks.len(), 2 * j as usize);
    }

    #[test]
    fn lower_embed_is_a_right_inverse(n in 1u64..48) {
        let ring = BaseRing::gf(5).unwrap();
        for s in [FearingDescriptor::diagonal(&ring), doubling_supports(&ring)] {
            let e = fear_lower_embed(&s).unwrap();
            prop_assert!(e.g.compose(&e.f).unwrap().equal_on_window(&RowFiniteMap::identity(&ring), Window::new(n)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn oracle_witness_reproduces_and_is_monotone(k in 1u64..4, c in 1i64..5) {
        let ring = BaseRing::zmod(5).unwrap();
        let env = WordEnv::from_bindings(&ring, [("s".to_string(), RowFiniteMap::shift(&ring))]).unwrap();
        let x = FinVec::unit(&ring, 1);
        let y = FinVec::monomial(&ring, 1 + k, ring.from_i64(c));
        let first = proximity_oracle(&x, &y, &env, 4, DEFAULT_WORD_CAP).unwrap();
        if let Proximity::Found { r, witness } = &first {
            prop_assert_eq!(env.apply(&x, witness).unwrap(), y.clone());
            prop_assert_eq!(witness.length(), *r);
            match proximity_oracle(&x, &y, &env, 5, DEFAULT_WORD_CAP).unwrap() {
                Proximity::Found { r: r2, .. } => prop_assert_eq!(r2, *r),
                other => prop_assert!(false, "lost witness: {:?}", other),
            }
        }
    }
}
