use rowfin_core::constructions::check::Check;
use rowfin_core::constructions::simple_full::{count_preorders, simple_full_check, unclosed_span, verify_subring};
use rowfin_core::BaseRing;
use serde_json::Value;

use super::{bounded, config, corrupt};
use crate::report::Report;
use crate::{CliResult, Common, SimpleFullArgs};

/// Relations are enumerated over `n(n−1)` off-diagonal cells.
const PREORDER_COUNT_LIMIT: u64 = 5;

fn relation_text(rho: &std::collections::BTreeSet<(u64, u64)>) -> String {
    let pairs: Vec<String> = rho.iter().map(|(a, b)| format!("({a},{b})")).collect();
    format!("{{{}}}", pairs.join(","))
}

pub fn run(common: &Common, args: &SimpleFullArgs) -> CliResult {
    let corrupted = corrupt(common, &["unclosed"])?;
    let ring = BaseRing::gf(args.p)?;
    let extra = [("n", Value::from(args.n)), ("p", Value::from(args.p))];
    let mut report = Report::new("simple-full", config(common, &ring, None, &extra));
    let Some(rep) = bounded(&mut report, "exhaustive enumeration", simple_full_check(args.n, args.p))? else {
        return Ok(report);
    };
    report.extend(&rep.checks);
    if corrupted {
        let (_, checks) = verify_subring(args.n, args.p, &unclosed_span(args.n));
        for mut c in checks {
            c.name = format!("injected span: {}", c.name);
            report.push(c);
        }
    }
    if args.n <= PREORDER_COUNT_LIMIT {
        let expected = count_preorders(args.n);
        let name = "one subring per preorder";
        report.push(if expected == rep.count {
            Check::pass(name)
        } else {
            Check::fail(name, format!("n = {}", args.n), expected.to_string(), rep.count.to_string())
        });
    }
    report.summary("count", rep.count);
    report.witness("preorders", rep.preorders.iter().map(relation_text).collect::<Vec<_>>());
    Ok(report)
}
