//! Front-end for `mpopt`: reads a problem file, solves it, optionally
//! cross-checks the result by sampling, and prints a report.
//!
//! Exit statuses: 0 solvable, 1 unsolvable, 2 input error, 3 failed verification.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use maxplus_opt::oracle::{verify_optimality, SampleConfig};
use maxplus_opt::DEFAULT_TOL;

pub mod problem_file;
pub mod report;

pub use problem_file::{format_problem, parse_problem, ParseError};

pub const EXIT_SOLVABLE: i32 = 0;
pub const EXIT_UNSOLVABLE: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mpopt", version, about = "Minimise a max-plus function over Σ k_j x_j = c")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a problem file and print the report.
    Solve(SolveArgs),
}

#[derive(Debug, clap::Args)]
struct SolveArgs {
    /// Problem file (`-` for stdin).
    file: PathBuf,
    /// Cross-check the result against sampled points of the constraint set.
    #[arg(long)]
    verify: bool,
    /// Seed for the random samples drawn by --verify.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Absolute tolerance on the solvability criterion.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Emit a flat JSON document instead of text.
    #[arg(long)]
    json: bool,
    /// Half-width of the sampling box used by --verify.
    #[arg(long, default_value_t = 5.0)]
    radius: f64,
    /// Number of random samples drawn by --verify.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
}

/// What a run printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(msg: impl std::fmt::Display) -> Self {
        Self { status: EXIT_INPUT_ERROR, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

fn read_input(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_INPUT_ERROR } else { 0 };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { status, stdout: String::new(), stderr: text }
            } else {
                Outcome { status, stdout: text, stderr: String::new() }
            };
        }
    };
    match cli.command {
        Command::Solve(args) => solve(&args),
    }
}

fn solve(args: &SolveArgs) -> Outcome {
    if !(args.tol.is_finite() && args.tol >= 0.0) {
        return Outcome::input_error(format!("--tol must be a nonnegative real, got {}", args.tol));
    }
    let text = match read_input(&args.file) {
        Ok(t) => t,
        Err(e) => return Outcome::input_error(format!("{}: {e}", args.file.display())),
    };
    let problem = match parse_problem(&text) {
        Ok(p) => p,
        Err(e) => return Outcome::input_error(format!("{}: {e}", args.file.display())),
    };
    let report = match problem.solve(args.tol) {
        Ok(r) => r,
        Err(e) => return Outcome::input_error(format!("{}: {e}", args.file.display())),
    };

    let verdict = if args.verify {
        let cfg = match SampleConfig::new(args.radius, 7, args.samples, args.seed, args.tol) {
            Ok(cfg) => cfg,
            Err(e) => return Outcome::input_error(e),
        };
        match verify_optimality(&problem, &report, &cfg) {
            Ok(v) => Some(v),
            Err(e) => return Outcome::input_error(e),
        }
    } else {
        None
    };

    let stdout = if args.json {
        report::render_json(&problem, &report, verdict.as_ref())
    } else {
        report::render_text(&problem, &report, verdict.as_ref())
    };
    let status = match (&verdict, report.solvable) {
        (Some(v), _) if !v.is_consistent() => EXIT_VERIFY_FAILED,
        (_, true) => EXIT_SOLVABLE,
        (_, false) => EXIT_UNSOLVABLE,
    };
    Outcome { status, stdout, stderr: String::new() }
}
