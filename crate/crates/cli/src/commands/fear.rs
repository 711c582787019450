use rowfin_core::constructions::check::Check;
use rowfin_core::constructions::fearing::{
    diagonal_oracle_env, doubling_supports, fear_lower_embed, fear_witness, first_row_full, plateau_supports,
    split_weak_fearing, FearingDescriptor,
};
use rowfin_core::indexing::{IndexSupport, PreorderDescriptor};
use rowfin_core::words::{proximity_oracle, Proximity, DEFAULT_WORD_CAP};
use rowfin_core::{FinVec, RowFiniteMap};
use serde_json::{json, Value};

use super::{bounded, config, corrupt, ring, window};
use crate::report::Report;
use crate::{CliResult, Common, Descriptor, ExtraMaps, FearArgs};

pub fn run(common: &Common, args: &FearArgs) -> CliResult {
    let ring = ring(common, "GF:3")?;
    let w = window(common, 64)?;
    let corrupted = corrupt(common, &["escape"])?;
    let (s, exact_diagonal) = match &common.preorder {
        Some(text) => (FearingDescriptor::from_preorder(&ring, &PreorderDescriptor::parse(text)?), false),
        None => match args.descriptor {
            Descriptor::Diag => (FearingDescriptor::diagonal(&ring), true),
            Descriptor::Doubling => (doubling_supports(&ring), false),
            Descriptor::Plateau => (plateau_supports(&ring), false),
            Descriptor::FirstRow => (first_row_full(&ring), false),
        },
    };
    let u: Vec<(String, RowFiniteMap)> = match args.u {
        ExtraMaps::Shift => vec![("s".to_string(), RowFiniteMap::shift(&ring))],
        ExtraMaps::None => Vec::new(),
    };
    let extra = [
        ("descriptor", Value::from(s.name())),
        ("j", Value::from(args.j)),
        ("u", Value::from(u.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>())),
        ("samples", Value::from(args.samples)),
        ("oracle_upto", Value::from(args.oracle_upto)),
    ];
    let mut report = Report::new("fear", config(common, &ring, Some(w), &extra));
    let seeds = || (0..args.samples).map(|k| common.seed.wrapping_add(k));

    match split_weak_fearing(&s) {
        Ok(split) => {
            report.summary("weakly_fearing", true);
            report.witness("sigma", split.sigma.iter().copied().collect::<Vec<_>>());
            report.extend(&split.verify(&s, seeds(), w));
        }
        Err(_) => report.summary("weakly_fearing", false),
    }
    let fearing = matches!(s.infinite_rows(), IndexSupport::Finite(set) if set.is_empty());
    report.summary("fearing", fearing);
    if !fearing {
        return Ok(report);
    }

    let embed = fear_lower_embed(&s)?;
    report.extend(&embed.verify(&s, seeds(), w));
    let levels: Vec<Value> = embed.levels(w.n().min(16)).iter().map(|&(l, lp)| json!([l, lp])).collect();
    report.witness("levels", levels);

    let mut wit = fear_witness(&s, &u, args.j)?;
    if corrupted {
        if let Some(p) = wit.pairs.first_mut() {
            p.escape = p.cover.iter().copied().max().unwrap_or(p.m);
            p.y = FinVec::unit(&ring, p.escape);
        }
    }
    report.extend(&wit.verify());
    let pairs: Vec<Value> = wit
        .pairs
        .iter()
        .map(|p| json!({ "j": p.j, "m": p.m, "escape": p.escape, "cover": p.cover.iter().collect::<Vec<_>>() }))
        .collect();
    report.witness("escapes", pairs);

    // D acts on a finite cover through projections only over two elements
    if exact_diagonal && ring.cardinality() == Some(2) {
        let cap = common.bound.unwrap_or(DEFAULT_WORD_CAP);
        for p in wit.pairs.iter().filter(|p| p.j <= args.oracle_upto) {
            let name = format!("oracle: p(x{0}, y{0}) > {0}", p.j);
            let env = diagonal_oracle_env(&ring, &p.cover, &u)?;
            let Some(prox) = bounded(&mut report, &name, proximity_oracle(&p.x, &p.y, &env, p.j, cap))? else {
                continue;
            };
            report.push(match prox {
                Proximity::NotWithin(_) => Check::pass(name),
                Proximity::Found { r, witness } => {
                    Check::fail(name, format!("j = {}", p.j), format!("no word of length ≤ {}", p.j), format!("{witness} (length {r})"))
                }
            });
        }
    }
    Ok(report)
}
