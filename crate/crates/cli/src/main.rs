//! `genbern`: build generalized Bernstein operators and run the studies.
//!
//! Exit status: 0 on success, 1 on usage or input errors, 2 when the
//! requested operator does not exist (`build`, `eval`), 3 when a reference
//! fixture fails (`paper-examples`).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod inputs;
mod output;

#[derive(Parser, Debug)]
#[command(name = "genbern", version, about = "Generalized Bernstein operators fixing 1 and an increasing polynomial")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build B_n^{f1} and dump coordinates, nodes and node ordering as JSON.
    Build(BuildArgs),
    /// Evaluate B_n^{f1} f on a grid (CSV).
    Eval(EvalArgs),
    /// Find the smallest n with an operator and with nondecreasing nodes.
    ScanN(ScanArgs),
    /// Node deviation from the equispaced nodes over a range of n (CSV).
    DeviationStudy(StudyArgs),
    /// Sup-norm errors, the classical comparison and the error budget (CSV).
    ErrorStudy(ErrorStudyArgs),
    /// Search for (1, f1)-convexity violations of f and of B_n^{f1} f (JSON).
    Convexity(ConvexityArgs),
    /// Run the suite of reference values.
    PaperExamples(FixtureArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Float,
    Rational,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Polynomial f1: a JSON file, inline JSON, an expression such as
    /// '(x-0.125)^3', `identity`, or `random:<degree>` (seeded).
    #[arg(long)]
    pub f1: String,
    /// Interval endpoints; defaults to the interval in the f1 JSON, else [0, 1].
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    pub interval: Option<Vec<String>>,
    /// Relative tolerance for node inversion.
    #[arg(long, default_value_t = genbern::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Mode::Float)]
    pub mode: Mode,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for `random:` polynomials.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub n: usize,
    /// Function: one, identity, e<j>, abs(c), hat(c,w), sqrt(c), f1, or a CSV file of x,y samples.
    #[arg(long)]
    pub f: String,
    /// Number of uniform evaluation points.
    #[arg(long, default_value_t = 101)]
    pub grid: usize,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub n_max: usize,
}

#[derive(Args, Debug)]
pub struct NGrid {
    /// Range of n: START STOP STEP (inclusive).
    #[arg(long, num_args = 3, value_names = ["START", "STOP", "STEP"])]
    pub n_grid: Vec<usize>,
    /// Treat STEP as a factor: START, START*STEP, ... up to STOP.
    #[arg(long)]
    pub geometric: bool,
}

#[derive(Args, Debug)]
pub struct StudyArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub grid: NGrid,
}

#[derive(Args, Debug)]
pub struct ErrorStudyArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub n_grid: NGrid,
    #[arg(long)]
    pub f: String,
    /// Uniform grid size for sup norms and moduli of continuity.
    #[arg(long, default_value_t = genbern::analysis::DEFAULT_GRID)]
    pub grid: usize,
}

#[derive(Args, Debug)]
pub struct ConvexityArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub f: String,
    /// Also test B_n^{f1} f.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 801)]
    pub grid: usize,
}

#[derive(Args, Debug)]
pub struct FixtureArgs {
    /// Also write the outcomes as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match commands::run(cli.command) {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
