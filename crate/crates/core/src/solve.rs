//! End-to-end pipeline shared by the command line tool and the browser demo:
//! mark the parsed input, interreduce it, run (or search) and optionally
//! certify the result.

use crate::bba::{preprocess, run, run_with_backtracking, BbaConfig, BbaOutcome};
use crate::error::{Error, Result};
use crate::interreduction::ChoicePoint;
use crate::marking::{MarkedPolynomial, MarkingStrategy, TermEnumeration};
use crate::order_ideal::OrderIdeal;
use crate::parser::ProblemFile;
use crate::verification::{certify, Certificate};

pub const DEFAULT_BACKTRACK_BUDGET: usize = 10_000;

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub marking: MarkingStrategy,
    pub enumeration: TermEnumeration,
    /// Run budget for backtracking; `None` runs once.
    pub backtrack: Option<usize>,
    pub max_iterations: Option<usize>,
    pub verify: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            marking: MarkingStrategy::DegLex,
            enumeration: TermEnumeration::DegLex,
            backtrack: None,
            max_iterations: None,
            verify: false,
        }
    }
}

/// Resolves an enumeration name; `explicit` takes its sequence from the
/// file's `enum:` option.
pub fn enumeration_by_name(name: &str, problem: &ProblemFile) -> Result<TermEnumeration> {
    match name {
        "explicit" => match problem.option_terms("enum") {
            Some(terms) => Ok(TermEnumeration::Explicit(terms?)),
            None => Err(Error::Strategy(
                "explicit enumeration needs an `enum:` term list in the input".into(),
            )),
        },
        other => other.parse(),
    }
}

impl SolveOptions {
    /// Defaults overridden by the `marking`, `enum`, `max-iter` and
    /// `backtrack` options of the file.
    pub fn from_problem(problem: &ProblemFile) -> Result<Self> {
        let mut o = SolveOptions::default();
        for (key, (value, line)) in &problem.options {
            let bad = |message: String| Error::Parse {
                line: *line,
                column: 1,
                message,
            };
            match key.as_str() {
                "marking" => o.marking = value.parse().map_err(|e: Error| bad(e.to_string()))?,
                "enum" => {
                    o.enumeration = match value.as_str() {
                        "deglex" | "degrevlex" => value.parse()?,
                        _ => enumeration_by_name("explicit", problem)?,
                    }
                }
                "max-iter" => {
                    o.max_iterations = Some(value.parse().map_err(|_| bad(format!("invalid max-iter `{value}`")))?)
                }
                "backtrack" => {
                    o.backtrack = Some(value.parse().map_err(|_| bad(format!("invalid backtrack budget `{value}`")))?)
                }
                _ => return Err(bad(format!("unknown option `{key}`"))),
            }
        }
        Ok(o)
    }
}

/// Marks every input polynomial with the given strategy.
pub fn mark_items(problem: &ProblemFile, strategy: MarkingStrategy) -> Result<Vec<MarkedPolynomial>> {
    problem
        .items
        .iter()
        .map(|item| {
            if item.poly.is_zero() {
                return Err(Error::Contract(format!("line {}: zero polynomial", item.line)));
            }
            strategy.mark(&item.poly, item.marked.as_ref()).map_err(|e| match e {
                Error::InvalidMarking(m) => Error::InvalidMarking(format!("line {}: {m}", item.line)),
                other => other,
            })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub outcome: BbaOutcome,
    pub universe: OrderIdeal,
    pub log: Vec<ChoicePoint>,
    pub runs: usize,
    /// Input after marking and interreduction.
    pub prepared: Vec<MarkedPolynomial>,
    pub certificate: Option<Certificate>,
}

pub fn solve(problem: &ProblemFile, options: &SolveOptions) -> Result<Solution> {
    let marked = mark_items(problem, options.marking)?;
    let prepared = preprocess(&marked, &options.enumeration)?;
    let config = BbaConfig {
        enumeration: options.enumeration.clone(),
        max_iterations: options.max_iterations,
        ..Default::default()
    };
    let (report, runs) = match options.backtrack {
        None => (run(&prepared, &config)?, 1),
        Some(budget) => {
            let r = run_with_backtracking(&prepared, &config, budget)?;
            let mut last = r.last_run;
            last.outcome = r.outcome;
            (last, r.runs)
        }
    };
    let certificate = match (&report.outcome, options.verify) {
        (BbaOutcome::Success { order_ideal, basis }, true) => {
            Some(certify(&problem.polynomials(), basis, order_ideal))
        }
        _ => None,
    };
    Ok(Solution {
        outcome: report.outcome,
        universe: report.universe,
        log: report.log,
        runs,
        prepared,
        certificate,
    })
}
