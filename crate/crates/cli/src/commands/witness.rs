use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rowfin_core::constructions::preorder_ring::eclass_witness;
use rowfin_core::indexing::{Branch, PreorderDescriptor};
use rowfin_core::rowfin::random::{random_square, random_upper};
use rowfin_core::rowfin::sparse::write_sparse;
use rowfin_core::{RowFiniteMap, Window};
use serde_json::Value;

use super::{bounded, config, corrupt, ring, window};
use crate::report::Report;
use crate::{CliResult, Common, WitnessArgs};

pub fn run(common: &Common, args: &WitnessArgs) -> CliResult {
    let ring = ring(common, "GF:3")?;
    let w = window(common, 12)?;
    let corrupted = corrupt(common, &["h"])?;
    let rho = PreorderDescriptor::parse(common.preorder.as_deref().unwrap_or("le"))?;
    let capacity = common.bound.unwrap_or(4 * w.n());
    let extra = [("count", Value::from(args.count)), ("capacity", Value::from(capacity))];
    let mut report = Report::new("witness", config(common, &ring, Some(w), &extra));
    let Some(mut witness) = bounded(&mut report, "build witness", eclass_witness(&ring, &rho, capacity))? else {
        return Ok(report);
    };
    if corrupted {
        witness.h = RowFiniteMap::zero(&ring);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
    let mut first_lift = None;
    for t in 0..args.count {
        // the nested branch reaches upper-triangular targets only
        let target = match witness.branch {
            Branch::Nested => random_upper(&ring, &mut rng, w.n()),
            Branch::Disjoint => random_square(&ring, &mut rng, w.n()),
        };
        let Some(checks) = bounded(&mut report, &format!("target {t}"), witness.verify(&target, w))? else {
            continue;
        };
        for mut c in checks {
            c.name = format!("target {t}: {}", c.name);
            report.push(c);
        }
        if first_lift.is_none() {
            first_lift = Some(witness.lift(&target, w)?);
        }
    }
    report.summary("branch", witness.branch.to_string());
    report.summary("preorder", rho.name());
    let anchors: Vec<u64> = w.rows().map(|j| witness.anchor(j)).collect();
    report.witness("anchors", anchors.clone());
    if let Some(b) = witness.betas() {
        report.witness("betas", b.iter().take(w.n() as usize).copied().collect::<Vec<_>>());
    }
    if let Some(s) = first_lift {
        let reach = anchors.into_iter().max().unwrap_or(1);
        report.witness("lift0", write_sparse(&s, Window::new(reach)));
    }
    Ok(report)
}
