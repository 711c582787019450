use rowfin_core::constructions::check::Check;
use rowfin_core::words::{proximity_oracle, support_closure, Proximity, SupportStep, WordEnv, DEFAULT_WORD_CAP};
use rowfin_core::RingWord;
use serde_json::{json, Value};

use super::{bounded, config, corrupt, ring};
use crate::parse::{named_generator, vector};
use crate::report::Report;
use crate::{CliError, CliResult, Common, OracleArgs};

pub fn run(common: &Common, args: &OracleArgs) -> CliResult {
    let ring = ring(common, "GF:2")?;
    let corrupted = corrupt(common, &["witness"])?;
    if ring.cardinality().is_none() {
        return Err(CliError::Usage("the proximity oracle needs a finite ring".into()));
    }
    if args.radius == 0 {
        return Err(CliError::Usage("--radius must be at least 1".into()));
    }
    let x1 = vector(&ring, &args.x1)?;
    let x2 = vector(&ring, &args.x2)?;
    let mut env = WordEnv::new(&ring);
    let mut step = SupportStep::new().with_identity();
    for g in &args.gens {
        let (name, f) = named_generator(&ring, g)?;
        if env.get(&name).is_some() {
            return Err(CliError::Usage(format!("generator `{name}` given twice")));
        }
        step = step.with_map(name.clone(), &f);
        env.bind(name, f)?;
    }
    let cap = common.bound.unwrap_or(DEFAULT_WORD_CAP);
    let extra = [
        ("x1", Value::from(args.x1.clone())),
        ("x2", Value::from(args.x2.clone())),
        ("gens", Value::from(args.gens.clone())),
        ("radius", Value::from(args.radius)),
        ("word_cap", Value::from(cap)),
    ];
    let mut report = Report::new("oracle", config(common, &ring, None, &extra));

    let ball = support_closure(&x1, &step, args.radius);
    report.witness(
        "closure",
        json!({
            "cover": ball.cover.iter().collect::<Vec<_>>(),
            "layers": ball.layer_sizes,
            "census": ball.census,
        }),
    );
    let name = "proximity search";
    let Some(prox) = bounded(&mut report, name, proximity_oracle(&x1, &x2, &env, args.radius, cap))? else {
        return Ok(report);
    };
    match prox {
        Proximity::Found { r, witness } => {
            report.summary("proximity", r);
            let witness = if corrupted { RingWord::sum(witness, RingWord::One) } else { witness };
            report.witness("word", witness.to_string());
            let got = env.apply(&x1, &witness)?;
            report.push(if got == x2 {
                Check::pass("x1·eval(word) = x2")
            } else {
                Check::fail("x1·eval(word) = x2", "vector", x2.to_string(), got.to_string())
            });
            let outside: Vec<u64> = x2.support().into_iter().filter(|k| !ball.cover.contains(k)).collect();
            report.push(match outside.first() {
                None => Check::pass("support(x2) ⊆ cover"),
                Some(k) => Check::fail("support(x2) ⊆ cover", format!("coordinate {k}"), "inside the cover", "outside"),
            });
        }
        Proximity::NotWithin(r) => {
            report.summary("proximity", format!("> {r}"));
            report.push(Check::pass(format!("exhausted all words of length ≤ {r}")));
        }
    }
    Ok(report)
}
