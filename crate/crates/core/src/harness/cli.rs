//! Command-line front end. The JSON report goes to `out`, a human summary
//! to `err`. Exit codes: 0 pass, 1 a check failed, 2 invalid input,
//! 3 a check was inconclusive (search bound hit) and none failed.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use super::commands;
use super::error::{HarnessError, Result};
use super::fixture::Fixture;
use super::generate::{generate_instances, GenBounds, Instance, Kind};
use super::report::Report;
use super::suite::{run_suite, SuiteConfig};

pub const EXIT_INVALID_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "logmin",
    version,
    about = "Monoid, fibered category and minimal-object checks"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Monoids and monoid homomorphisms.
    #[command(subcommand)]
    Monoid(MonoidCmd),
    /// Finite categories, functors and towers.
    #[command(subcommand)]
    Cat(CatCmd),
    /// The descent equivalence for a tower or LogCfg.
    #[command(subcommand)]
    Descent(DescentCmd),
    /// Characteristic data of log curves.
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Characteristic data of log points.
    #[command(subcommand)]
    Point(PointCmd),
    /// Property suite over generated instances.
    #[command(subcommand)]
    Suite(SuiteCmd),
    /// Print generated fixtures as a JSON array.
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
struct Input {
    /// JSON fixture file.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Debug, Subcommand)]
enum MonoidCmd {
    /// Sharpness, injectivity, integrality, nilpotents and cokernel of a hom.
    Check(Input),
    /// The splitting `Q ⊕ N ≅ P` of an integral monomorphism.
    Split(Input),
    /// The cokernel `P^gp / Q^gp` and its classification.
    Cokernel(Input),
    /// A pushout `{"h", "f"}`, or the `Z` presentation of a single hom.
    Pushout(Input),
    /// Saturation of a monoid.
    Saturate(Input),
}

#[derive(Debug, Subcommand)]
enum CatCmd {
    Validate(Input),
    Cartesian(Input),
    Minimal(Input),
    B1b2(Input),
}

#[derive(Debug, Subcommand)]
enum DescentCmd {
    Run(Input),
}

#[derive(Debug, Subcommand)]
enum CurveCmd {
    Classify(Input),
}

#[derive(Debug, Subcommand)]
enum PointCmd {
    Basic(Input),
}

#[derive(Debug, Subcommand)]
enum SuiteCmd {
    Run(SuiteArgs),
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Instances per kind.
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Generator caps, e.g. `rank=4,objects=20,morphisms=120,attempts=200`.
    #[arg(long, default_value = "")]
    bounds: String,
}

#[derive(Debug, Args)]
struct SuiteArgs {
    #[command(flatten)]
    gen: GenArgs,
    /// Restrict to these kinds (repeatable).
    #[arg(long = "kind", value_enum)]
    kinds: Vec<Kind>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[command(flatten)]
    gen: GenArgs,
}

fn with_fixture(i: &Input, f: fn(&Fixture) -> Result<Report>) -> Result<Report> {
    f(&Fixture::read(&i.input)?)
}

fn dispatch(cmd: &Command, out: &mut dyn Write) -> Result<Option<Report>> {
    let report = match cmd {
        Command::Monoid(m) => match m {
            MonoidCmd::Check(i) => with_fixture(i, commands::monoid_check),
            MonoidCmd::Split(i) => with_fixture(i, commands::monoid_split),
            MonoidCmd::Cokernel(i) => with_fixture(i, commands::monoid_cokernel),
            MonoidCmd::Pushout(i) => with_fixture(i, commands::monoid_pushout_cmd),
            MonoidCmd::Saturate(i) => with_fixture(i, commands::monoid_saturate),
        },
        Command::Cat(c) => match c {
            CatCmd::Validate(i) => with_fixture(i, commands::cat_validate),
            CatCmd::Cartesian(i) => with_fixture(i, commands::cat_cartesian),
            CatCmd::Minimal(i) => with_fixture(i, commands::cat_minimal),
            CatCmd::B1b2(i) => with_fixture(i, commands::cat_b1b2),
        },
        Command::Descent(DescentCmd::Run(i)) => with_fixture(i, commands::descent_run),
        Command::Curve(CurveCmd::Classify(i)) => with_fixture(i, commands::curve_classify),
        Command::Point(PointCmd::Basic(i)) => with_fixture(i, commands::point_basic),
        Command::Suite(SuiteCmd::Run(a)) => {
            let cfg = SuiteConfig {
                seed: a.gen.seed,
                count: a.gen.count,
                bounds: GenBounds::parse(&a.gen.bounds)?,
                kinds: if a.kinds.is_empty() {
                    Kind::ALL.to_vec()
                } else {
                    a.kinds.clone()
                },
                threads: a.threads,
            };
            run_suite(&cfg)
        }
        Command::Generate(g) => {
            let bounds = GenBounds::parse(&g.gen.bounds)?;
            let fixtures: Vec<serde_json::Value> = generate_instances(g.kind, g.gen.seed, g.gen.count, &bounds)?
                .iter()
                .map(Instance::fixture)
                .collect();
            let text = serde_json::to_string_pretty(&serde_json::Value::Array(fixtures)).expect("json");
            writeln!(out, "{text}").ok();
            return Ok(None);
        }
    }?;
    Ok(Some(report))
}

/// Runs one command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                write!(out, "{text}").ok();
            } else {
                write!(err, "{text}").ok();
            }
            return if code == 0 { 0 } else { EXIT_INVALID_INPUT };
        }
    };
    let start = Instant::now();
    match dispatch(&cli.command, out) {
        Ok(Some(report)) => {
            writeln!(out, "{}", report.to_json()).ok();
            write!(err, "{}", report.summary()).ok();
            writeln!(err, "elapsed {:.3}s", start.elapsed().as_secs_f64()).ok();
            report.exit_code()
        }
        Ok(None) => 0,
        Err(e) => {
            let (location, reason) = match &e {
                HarnessError::Input { location, reason } => (location.clone(), reason.clone()),
                HarnessError::BoundsTooTight { .. } => ("--bounds".to_string(), e.to_string()),
                other => ("input".to_string(), other.to_string()),
            };
            let v = json!({ "status": "invalid_input", "error": { "location": location, "reason": reason } });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).ok();
            writeln!(err, "error: {e}").ok();
            EXIT_INVALID_INPUT
        }
    }
}
