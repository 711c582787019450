use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rowfin_core::constructions::two_gen::{source_from_list, GFamily, TwoGenWitness};
use rowfin_core::rowfin::random::random_sparse;
use rowfin_core::rowfin::sparse::write_sparse;
use rowfin_core::{BaseRing, RowFiniteMap};
use serde_json::{json, Value};

use super::{config, corrupt, ring, window};
use crate::parse::matrix_file;
use crate::report::Report;
use crate::{CliResult, Common, Family, TwoGenArgs};

/// Random family members live in this corner.
pub const RANDOM_CORNER: u64 = 24;

/// `u_i = e(1, i+3)` for `i = −2..=2`.
pub fn units_family(ring: &BaseRing) -> BTreeMap<i64, RowFiniteMap> {
    (-2i64..=2).map(|i| (i, RowFiniteMap::matrix_unit(ring, 1, (i + 3) as u64))).collect()
}

pub fn random_family(ring: &BaseRing, seed: u64, size: usize) -> BTreeMap<i64, RowFiniteMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let maps = (0..size).map(|_| random_sparse(ring, &mut rng, RANDOM_CORNER, 2 * RANDOM_CORNER as usize)).collect();
    source_from_list(maps)
}

pub fn run(common: &Common, args: &TwoGenArgs) -> CliResult {
    let ring = ring(common, "GF:3")?;
    let w = window(common, 32)?;
    let corrupted = corrupt(common, &["f3"])?;
    let (family_name, source) = if common.input.is_empty() {
        let source = match args.family {
            Family::Units => units_family(&ring),
            Family::Random => random_family(&ring, common.seed, args.size),
            Family::Empty => BTreeMap::new(),
        };
        (format!("{:?}", args.family).to_lowercase(), source)
    } else {
        let mut maps = Vec::new();
        for path in &common.input {
            let f = matrix_file(path)?;
            ring.ensure_same(f.ring())?;
            maps.push(f);
        }
        ("files".to_string(), source_from_list(maps))
    };
    let mut extra = vec![("family", Value::from(family_name))];
    if args.family == Family::Random && common.input.is_empty() {
        extra.push(("size", Value::from(args.size)));
    }
    let mut report = Report::new("two-gen", config(common, &ring, Some(w), &extra));
    let family = GFamily::build(&ring, source)?;
    report.extend(&family.verify(w));
    let witness = TwoGenWitness::build(family);
    let env = if corrupted { witness.env_with(witness.f1.clone(), witness.corrupted_f3()) } else { witness.env() };
    report.extend(&witness.verify_with_env(&env, w)?);

    let indices: Vec<i64> = witness.family.source.keys().copied().collect();
    report.summary("family_size", indices.len());
    report.summary("indices", indices.clone());
    let words: BTreeMap<String, Value> = indices
        .iter()
        .map(|&i| {
            let word = TwoGenWitness::word_for_u(i);
            (i.to_string(), json!({ "length": word.length(), "word": word.to_string() }))
        })
        .collect();
    report.witness("u_words", json!(words));
    let g_words: BTreeMap<String, Value> = (1..=5)
        .map(|i| {
            let word = TwoGenWitness::word_for_g(i);
            (format!("g{i}"), json!({ "length": word.length(), "word": word.to_string() }))
        })
        .collect();
    report.witness("g_words", json!(g_words));
    let f3 = env.get("f3").expect("bound");
    report.witness("f1", write_sparse(&witness.f1, w));
    report.witness("f3", write_sparse(f3, w));
    Ok(report)
}
