use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rowfin_core::constructions::sandwich::{sandwich_x, upper_equiv_decompose, verify_decomposition, verify_sandwich};
use rowfin_core::indexing::triangular;
use rowfin_core::rowfin::random::{random_lower, random_square};
use rowfin_core::rowfin::sparse::write_sparse;
use rowfin_core::{RowFiniteMap, Window};
use serde_json::Value;

use super::{config, corrupt, ring, window};
use crate::parse::{matrix_file, seed_spec};
use crate::report::Report;
use crate::{CliError, CliResult, Common, SandwichArgs};

pub fn run(common: &Common, args: &SandwichArgs) -> CliResult {
    let ring = ring(common, "GF:5")?;
    let w = window(common, 20)?;
    let corrupted = corrupt(common, &["x"])?;
    let y_seed = match &args.random_y {
        Some(s) => seed_spec(s)?,
        None => common.seed,
    };
    let targets: Vec<RowFiniteMap> = match common.input.as_slice() {
        [] => {
            let mut rng = ChaCha8Rng::seed_from_u64(y_seed);
            (0..args.count).map(|_| random_lower(&ring, &mut rng, w.n())).collect()
        }
        paths => {
            let mut ys = Vec::new();
            for p in paths {
                let y = matrix_file(p)?;
                ring.ensure_same(y.ring())?;
                ys.push(y);
            }
            ys
        }
    };
    if targets.is_empty() {
        return Err(CliError::Usage("no target Y (use --count ≥ 1 or --in)".into()));
    }
    let extra = [("random_y_seed", Value::from(y_seed)), ("count", Value::from(targets.len()))];
    let mut report = Report::new("sandwich", config(common, &ring, Some(w), &extra));
    let mut first_x = None;
    for (t, y) in targets.iter().enumerate() {
        let mut x = sandwich_x(y, w)?;
        if corrupted {
            x = x.add(&RowFiniteMap::matrix_unit(&ring, 1, 2))?;
        }
        for mut c in verify_sandwich(y, &x, w) {
            c.name = format!("Y{t}: {}", c.name);
            report.push(c);
        }
        first_x.get_or_insert(x);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
    let f = random_square(&ring, &mut rng, w.n());
    let (t, tbar) = upper_equiv_decompose(&f);
    report.extend(&verify_decomposition(&f, &t, &tbar, w));
    report.summary("x_rows", triangular(w.n()));
    let x = first_x.expect("at least one target");
    report.witness("Y0", write_sparse(&targets[0], w));
    report.witness("X0", write_sparse(&x, Window::new(triangular(w.n()))));
    Ok(report)
}
