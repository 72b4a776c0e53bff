//! Text and JSON output for computation results.
//!
//! The JSON form is canonical: terms are exponent arrays, coefficients are
//! `num/den` strings, and every list is in lexicographic exponent order.

use std::collections::BTreeSet;
use std::fmt::Write;

use serde::Serialize;

use crate::bba::{BbaOutcome, LimitKind};
use crate::interreduction::ChoicePoint;
use crate::marking::MarkedPolynomial;
use crate::order_ideal::OrderIdeal;
use crate::polynomial::{rational_to_fraction, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            _ => Err(crate::Error::Strategy(format!("unknown output format `{s}`"))),
        }
    }
}

#[derive(Serialize)]
struct JsonBasisElement<'a> {
    polynomial: Vec<(&'a Term, String)>,
    marked_term: &'a Term,
}

#[derive(Serialize, Default)]
struct JsonDiagnostics<'a> {
    order_ideal_core: Vec<&'a Term>,
    offending_terms: Vec<&'a Term>,
}

#[derive(Serialize)]
struct JsonResult<'a> {
    status: &'static str,
    order_ideal: Vec<&'a Term>,
    border: Vec<Term>,
    basis: Vec<JsonBasisElement<'a>>,
    universe: Vec<&'a Term>,
    diagnostics: JsonDiagnostics<'a>,
}

fn basis_json(basis: &[MarkedPolynomial]) -> Vec<JsonBasisElement<'_>> {
    let mut v: Vec<_> = basis
        .iter()
        .map(|g| JsonBasisElement {
            polynomial: g.poly().iter().map(|(t, c)| (t, rational_to_fraction(c))).collect(),
            marked_term: g.marked(),
        })
        .collect();
    v.sort_by(|a, b| a.marked_term.cmp(b.marked_term));
    v
}

pub fn render_json(outcome: &BbaOutcome, universe: Option<&OrderIdeal>) -> String {
    let mut out = JsonResult {
        status: outcome.status(),
        order_ideal: Vec::new(),
        border: Vec::new(),
        basis: Vec::new(),
        universe: universe.map(|u| u.iter().collect()).unwrap_or_default(),
        diagnostics: JsonDiagnostics::default(),
    };
    match outcome {
        BbaOutcome::Success { order_ideal, basis } => {
            out.order_ideal = order_ideal.iter().collect();
            out.border = order_ideal.border().into_iter().collect();
            out.basis = basis_json(basis);
        }
        BbaOutcome::StoppedAtT7 {
            candidate,
            core,
            offending,
        } => {
            out.order_ideal = candidate.iter().collect();
            out.diagnostics = JsonDiagnostics {
                order_ideal_core: core.iter().collect(),
                offending_terms: offending.iter().collect(),
            };
        }
        BbaOutcome::Exhausted { .. } | BbaOutcome::IterationLimit { .. } => {}
    }
    let mut s = serde_json::to_string(&out).expect("serializable");
    s.push('\n');
    s
}

fn term_list(terms: &BTreeSet<Term>, names: &[String]) -> String {
    let parts: Vec<String> = terms.iter().map(|t| t.display(names).to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn render_text(outcome: &BbaOutcome, universe: Option<&OrderIdeal>, names: &[String]) -> String {
    let mut s = String::new();
    writeln!(s, "status: {}", outcome.status()).unwrap();
    match outcome {
        BbaOutcome::Success { order_ideal, basis } => {
            writeln!(s, "order ideal ({} terms): {}", order_ideal.len(), term_list(order_ideal.terms(), names)).unwrap();
            let border = order_ideal.border();
            writeln!(s, "border ({} terms): {}", border.len(), term_list(&border, names)).unwrap();
            writeln!(s, "border basis:").unwrap();
            for g in basis {
                writeln!(s, "  [{}]  {}", g.marked().display(names), g.poly().display(names)).unwrap();
            }
        }
        BbaOutcome::StoppedAtT7 {
            candidate,
            core,
            offending,
        } => {
            writeln!(s, "candidate is not an order ideal: {}", term_list(candidate, names)).unwrap();
            writeln!(s, "order ideal core: {}", term_list(core.terms(), names)).unwrap();
            writeln!(s, "multiples of marked terms: {}", term_list(offending, names)).unwrap();
        }
        BbaOutcome::Exhausted { runs } => {
            writeln!(s, "no pivot choices lead to a border basis for this marking ({runs} runs)").unwrap();
        }
        BbaOutcome::IterationLimit { limit, kind } => {
            let what = match kind {
                LimitKind::Iterations => "iteration limit",
                LimitKind::BacktrackBudget => "backtracking budget",
            };
            writeln!(s, "{what} of {limit} reached").unwrap();
        }
    }
    if let Some(u) = universe {
        writeln!(s, "universe: {} terms", u.len()).unwrap();
    }
    s
}

pub fn render(outcome: &BbaOutcome, universe: Option<&OrderIdeal>, names: &[String], format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => render_text(outcome, universe, names),
        OutputFormat::Json => render_json(outcome, universe),
    }
}

/// The choice log as JSON, one entry per choice point.
pub fn render_choice_log(log: &[ChoicePoint]) -> String {
    let mut s = serde_json::to_string(log).expect("serializable");
    s.push('\n');
    s
}
