use rowfin_core::constructions::check::Check;
use rowfin_core::constructions::preorder_ring::{classify_preorder, Classification, Evidence};
use rowfin_core::indexing::{IndexSupport, InfSet, PreorderDescriptor};
use rowfin_core::{BaseRing, Error};
use serde_json::{json, Value};

use super::{config, corrupt};
use crate::report::Report;
use crate::{CliError, CliResult, Common};

/// Spot-check bound when `--bound` is not given.
pub const DEFAULT_BOUND: u64 = 30;

/// Leading elements of an infinite anchor set shown in the report.
const ANCHOR_SAMPLE: u64 = 8;

fn evidence_json(c: &Classification) -> Value {
    match &c.evidence {
        Evidence::Exceptional(s) => json!({ "exceptional": s.iter().collect::<Vec<_>>() }),
        Evidence::Anchors(a) => json!({ "anchors": a.to_string(), "first_anchors": a.first(ANCHOR_SAMPLE).unwrap_or_default() }),
    }
}

/// The descriptor with its infinite-up-set tag swapped for a wrong one.
fn mistagged(rho: &PreorderDescriptor) -> PreorderDescriptor {
    let wrong = match rho.infinite_upsets() {
        IndexSupport::Finite(_) => IndexSupport::Infinite(InfSet::naturals()),
        IndexSupport::Infinite(_) => IndexSupport::empty(),
    };
    rho.clone().with_infinite_upsets(wrong)
}

pub fn run(common: &Common) -> CliResult {
    let text = common.preorder.as_deref().ok_or_else(|| CliError::Usage("classify needs --preorder".into()))?;
    let corrupted = corrupt(common, &["tag"])?;
    let mut rho = PreorderDescriptor::parse(text)?;
    if corrupted {
        rho = mistagged(&rho);
    }
    let bound = common.bound.unwrap_or(DEFAULT_BOUND);
    // no matrices are built; the ring only labels the report
    let ring = BaseRing::parse(common.ring.as_deref().unwrap_or("Int"))?;
    let mut report = Report::new("classify", config(common, &ring, None, &[("bound_used", Value::from(bound))]));
    let mut verdicts = Vec::new();
    for b in [bound, 2 * bound] {
        let name = format!("descriptor consistent up to {b}");
        match classify_preorder(&rho, b, common.seed) {
            Ok(c) => {
                report.push(Check::pass(name));
                verdicts.push(c);
            }
            Err(Error::Descriptor(m)) => report.push(Check::fail(name, "spot check", "consistent", m)),
            Err(Error::BoundExceeded(m)) => report.push(Check::bound_exceeded(name, m)),
            Err(e) => return Err(e.into()),
        }
    }
    if let [c1, c2] = verdicts.as_slice() {
        let name = "verdict stable under doubling the bound";
        report.push(if c1.verdict == c2.verdict {
            Check::pass(name)
        } else {
            Check::fail(name, format!("bound {}", 2 * bound), c1.verdict.to_string(), c2.verdict.to_string())
        });
    }
    if let Some(c) = verdicts.first() {
        report.summary("verdict", c.verdict.to_string());
        report.summary("preorder", rho.name());
        report.witness("evidence", evidence_json(c));
    }
    Ok(report)
}
