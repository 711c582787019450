//! `rowfin`: runs each construction, checks its identities on a finite
//! window and prints a report.

mod commands;
mod parse;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rowfin_core::Error;

use crate::report::{Report, Status};

#[derive(Parser, Debug)]
#[command(name = "rowfin", version, about = "Verification harness for row-finite matrix constructions")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Base ring: Int, Zmod:n, GF:p or Mat:k:<ring>.
    #[arg(long, global = true)]
    pub ring: Option<String>,
    /// Rows checked: 1..=n.
    #[arg(long, global = true)]
    pub window: Option<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Preorder: diag | le | ge | full | mod:m:pairs | union-finite:pairs.
    #[arg(long, global = true)]
    pub preorder: Option<String>,
    /// Matrix file(s) in the sparse triple format.
    #[arg(long = "in", global = true)]
    pub input: Vec<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Enumeration cap overriding the subcommand default.
    #[arg(long, global = true, env = "ROWFIN_BOUND")]
    pub bound: Option<u64>,
    /// Negative control: inject a named fault that the checks must catch.
    #[arg(long, global = true)]
    pub corrupt: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Two generators f1, f3 whose words reproduce a family of maps.
    TwoGen(TwoGenArgs),
    /// Diagonal embedding of a countable ring into a two-generated ring.
    Maltsev(MaltsevArgs),
    /// A·X·B = Y for lower-triangular Y and diagonal X.
    Sandwich(SandwichArgs),
    /// D-class or E-class verdict for E(ρ).
    Classify,
    /// g·s′·h lifts of targets for an E-class preorder.
    Witness(WitnessArgs),
    /// Escape witness and lower-triangular embedding for fearing subrings.
    Fear(FearArgs),
    /// Subrings of M_n(GF(p)) containing the diagonal.
    SimpleFull(SimpleFullArgs),
    /// Brute-force proximity and support closure.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// u_i = e(1, i+3) for |i| ≤ 2.
    Units,
    /// Seeded random matrices in the 24×24 corner.
    Random,
    Empty,
}

#[derive(Args, Debug)]
pub struct TwoGenArgs {
    #[arg(long, value_enum, default_value_t = Family::Units)]
    pub family: Family,
    /// Family size for `--family random`.
    #[arg(long, default_value_t = 7)]
    pub size: usize,
}

#[derive(Args, Debug)]
pub struct MaltsevArgs {
    /// Elements to embed; defaults to the whole ring when finite, else 6.
    #[arg(long)]
    pub count: Option<u64>,
}

#[derive(Args, Debug)]
pub struct SandwichArgs {
    /// Random lower-triangular Y, as `seed=<k>` or `<k>`.
    #[arg(long = "random-Y", alias = "random-y")]
    pub random_y: Option<String>,
    /// Number of random targets.
    #[arg(long, default_value_t = 1)]
    pub count: u64,
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    /// Number of random targets.
    #[arg(long, default_value_t = 25)]
    pub count: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Descriptor {
    /// The diagonal ring D.
    Diag,
    /// supp(k) = 1..2k.
    Doubling,
    /// supp(k) = 1..max(k, 5).
    Plateau,
    /// D plus a full first row: weakly fearing only.
    FirstRow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExtraMaps {
    Shift,
    None,
}

#[derive(Args, Debug)]
pub struct FearArgs {
    /// Escape steps J.
    #[arg(long, default_value_t = 8)]
    pub j: u64,
    #[arg(long, value_enum, default_value_t = ExtraMaps::Shift)]
    pub u: ExtraMaps,
    /// Fearing subring; `--preorder` takes precedence.
    #[arg(long, value_enum, default_value_t = Descriptor::Diag)]
    pub descriptor: Descriptor,
    /// Sampled elements h ∈ S.
    #[arg(long, default_value_t = 20)]
    pub samples: u64,
    /// Confirm escapes j ≤ this with the brute-force oracle (two-element rings).
    #[arg(long, default_value_t = 2)]
    pub oracle_upto: u64,
}

#[derive(Args, Debug)]
pub struct SimpleFullArgs {
    #[arg(long, default_value_t = 2)]
    pub n: u64,
    #[arg(long, default_value_t = 2)]
    pub p: u64,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    /// Start vector: comma-separated `k` or `k:c` terms.
    #[arg(long)]
    pub x1: String,
    /// Target vector.
    #[arg(long)]
    pub x2: String,
    /// Generator `name=spec`; spec is shift, back, unit:i:j, proj:k or a sparse file.
    #[arg(long = "gen")]
    pub gens: Vec<String>,
    /// Largest word length tried and closure radius.
    #[arg(long, default_value_t = 3)]
    pub radius: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = match &cli.command {
        Command::TwoGen(a) => commands::two_gen::run(&cli.common, a),
        Command::Maltsev(a) => commands::maltsev::run(&cli.common, a),
        Command::Sandwich(a) => commands::sandwich::run(&cli.common, a),
        Command::Classify => commands::classify::run(&cli.common),
        Command::Witness(a) => commands::witness::run(&cli.common, a),
        Command::Fear(a) => commands::fear::run(&cli.common, a),
        Command::SimpleFull(a) => commands::simple_full::run(&cli.common, a),
        Command::Oracle(a) => commands::oracle::run(&cli.common, a),
    };
    let report = match result {
        Ok(r) => r.finalize(),
        Err(e) => {
            eprintln!("rowfin: {e}");
            return ExitCode::from(2);
        }
    };
    eprintln!("{}", report.pretty());
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    let json = report.to_json();
    match &cli.common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json) {
                eprintln!("rowfin: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{json}"),
    }
    match report.status {
        Status::Fail => ExitCode::from(1),
        Status::Pass | Status::BoundExceeded => ExitCode::SUCCESS,
    }
}

/// Errors that make a run unusable, as opposed to failed checks.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult = std::result::Result<Report, CliError>;
