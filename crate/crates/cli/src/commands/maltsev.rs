use rowfin_core::constructions::check::Check;
use rowfin_core::constructions::maltsev::maltsev_embed;
use rowfin_core::indexing::zunfold;
use rowfin_core::{CountableRingEnum, RowFiniteMap};
use serde_json::{json, Value};

use super::{config, corrupt, ring, window};
use crate::report::Report;
use crate::{CliResult, Common, MaltsevArgs};

/// Embedded prefix for infinite rings.
pub const INFINITE_COUNT: u64 = 6;

pub fn run(common: &Common, args: &MaltsevArgs) -> CliResult {
    let ring = ring(common, "Zmod:6")?;
    let w = window(common, 32)?;
    let corrupted = corrupt(common, &["f3"])?;
    let count = args.count.unwrap_or_else(|| ring.cardinality().unwrap_or(INFINITE_COUNT));
    let mut report = Report::new("maltsev", config(common, &ring, Some(w), &[("count", Value::from(count))]));
    let elements = CountableRingEnum::new(ring.clone());
    let rep = maltsev_embed(&elements, count, w, common.seed)?;
    if corrupted {
        // replace the word checks by evaluations in the corrupted environment
        let env = rep.witness.env_with(rep.witness.f1.clone(), rep.witness.corrupted_f3());
        let word_checks = rep.elements.len();
        for (n, s) in rep.elements.iter().enumerate() {
            let got = env.eval(&rep.words[n])?;
            let name = format!("Δ({}) = word_for_u({})", ring.format_elem(s), zunfold(n as u64 + 1));
            report.push(Check::rows_equal(name, &RowFiniteMap::scalar(&ring, s.clone()), &got, w));
        }
        report.extend(&rep.checks[word_checks..]);
    } else {
        report.extend(&rep.checks);
    }
    report.summary("elements", rep.elements.len());
    report.summary("central", rep.central.len());
    let words: Vec<Value> = rep
        .elements
        .iter()
        .zip(&rep.words)
        .map(|(s, word)| json!({ "element": ring.format_elem(s), "length": word.length(), "word": word.to_string() }))
        .collect();
    report.witness("words", words);
    report.witness("central", rep.central.iter().map(|z| ring.format_elem(z)).collect::<Vec<_>>());
    Ok(report)
}
