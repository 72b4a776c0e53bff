//! `border-basis`: compute a border basis from a marked polynomial system.
//!
//! Exit codes: 0 success, 1 bad input, 2 no border basis for this marking,
//! 3 iteration or backtracking limit, 4 result failed `--verify`.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use border_basis::bba::BbaOutcome;
use border_basis::parser::parse_problem;
use border_basis::render::{render, render_choice_log, OutputFormat};
use border_basis::solve::{enumeration_by_name, solve, SolveOptions};
use border_basis::MarkingStrategy;
use clap::Parser;
use log::info;

#[derive(Parser, Debug)]
#[command(name = "border-basis", version, about = "Border bases from marked polynomials")]
struct Args {
    /// Problem file (see the README for the format).
    #[arg(long, value_name = "PATH")]
    input: PathBuf,

    /// explicit, deglex, degrevlex or avoid-pure-powers.
    #[arg(long, value_name = "NAME")]
    marking: Option<MarkingStrategy>,

    /// deglex, degrevlex, or explicit (takes the `enum:` list of the file).
    #[arg(long = "enum", value_name = "NAME")]
    enumeration: Option<String>,

    /// Search over pivot choices, allowing at most BUDGET runs after the
    /// first (default 10000).
    #[arg(long, value_name = "BUDGET", num_args = 0..=1, default_missing_value = "10000")]
    backtrack: Option<usize>,

    /// Outer loop bound of a single run.
    #[arg(long, value_name = "N")]
    max_iter: Option<usize>,

    /// Certify a successful result independently.
    #[arg(long)]
    verify: bool,

    #[arg(long, value_name = "FORMAT", default_value = "text")]
    format: OutputFormat,

    /// Write the pivot choice log of the final run as JSON.
    #[arg(long, value_name = "PATH")]
    log_choices: Option<PathBuf>,
}

fn fail(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("BB_LOG")).init();
    let args = Args::parse();

    let text = match fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => return fail(format!("{}: {e}", args.input.display())),
    };
    let problem = match parse_problem(&text) {
        Ok(p) => p,
        Err(e) => return fail(format!("{}: {e}", args.input.display())),
    };
    let mut options = match SolveOptions::from_problem(&problem) {
        Ok(o) => o,
        Err(e) => return fail(e),
    };
    if let Some(m) = args.marking {
        options.marking = m;
    }
    if let Some(name) = &args.enumeration {
        match enumeration_by_name(name, &problem) {
            Ok(e) => options.enumeration = e,
            Err(e) => return fail(e),
        }
    }
    if args.backtrack.is_some() {
        options.backtrack = args.backtrack;
    }
    if args.max_iter.is_some() {
        options.max_iterations = args.max_iter;
    }
    options.verify |= args.verify;
    info!(
        "marking {}, enumeration {}, backtrack {:?}",
        options.marking.name(),
        options.enumeration.name(),
        options.backtrack
    );

    let solution = match solve(&problem, &options) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };

    if let Some(path) = &args.log_choices {
        if let Err(e) = fs::write(path, render_choice_log(&solution.log)) {
            return fail(format!("{}: {e}", path.display()));
        }
    }
    print!(
        "{}",
        render(&solution.outcome, Some(&solution.universe), &problem.variables, args.format)
    );

    match &solution.outcome {
        BbaOutcome::Success { .. } => match &solution.certificate {
            Some(c) if !c.is_valid() => {
                eprintln!("verification failed: {c:?}");
                ExitCode::from(4)
            }
            Some(_) => {
                eprintln!("verified");
                ExitCode::SUCCESS
            }
            None => ExitCode::SUCCESS,
        },
        BbaOutcome::StoppedAtT7 { .. } => {
            eprintln!("stopped: the candidate is not an order ideal");
            ExitCode::from(2)
        }
        BbaOutcome::Exhausted { runs } => {
            eprintln!("no border basis for this marking after {runs} runs");
            ExitCode::from(2)
        }
        BbaOutcome::IterationLimit { .. } => {
            eprintln!("limit reached");
            ExitCode::from(3)
        }
    }
}
