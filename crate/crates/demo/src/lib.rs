//! Browser bindings. Every export takes and returns plain strings so the
//! page needs no generated TypeScript glue beyond `wasm-bindgen`'s own.
//! Results are JSON objects; failures come back as `{"error": "..."}`.

use std::collections::BTreeSet;

use border_basis::bba::BbaOutcome;
use border_basis::interreduction::marked_interreduce;
use border_basis::order_ideal::{is_order_ideal, OrderIdeal};
use border_basis::parser::{parse_problem, parse_term_list, ProblemFile};
use border_basis::solve::{enumeration_by_name, mark_items, solve, SolveOptions};
use border_basis::{MarkedPolynomial, PivotOverrides, Term};
use serde::Serialize;
use wasm_bindgen::prelude::wasm_bindgen;

#[derive(Serialize)]
struct Element {
    marked: String,
    marked_exponents: Vec<u32>,
    polynomial: String,
}

#[derive(Serialize)]
struct SolveView {
    status: &'static str,
    variables: Vec<String>,
    order_ideal: Vec<Vec<u32>>,
    border: Vec<Vec<u32>>,
    universe: Vec<Vec<u32>>,
    offending: Vec<Vec<u32>>,
    basis: Vec<Element>,
    runs: usize,
    text: String,
}

#[derive(Serialize)]
struct StaircaseView {
    is_order_ideal: bool,
    closure: Vec<Vec<u32>>,
    border: Vec<Vec<u32>>,
}

#[derive(Serialize)]
struct InterreduceView {
    variables: Vec<String>,
    rows: Vec<Element>,
    choices: usize,
}

fn exps<'a>(terms: impl IntoIterator<Item = &'a Term>) -> Vec<Vec<u32>> {
    terms.into_iter().map(|t| t.exponents().to_vec()).collect()
}

fn elements(g: &[MarkedPolynomial], names: &[String]) -> Vec<Element> {
    g.iter()
        .map(|g| Element {
            marked: g.marked().display(names).to_string(),
            marked_exponents: g.marked().exponents().to_vec(),
            polynomial: g.poly().display(names).to_string(),
        })
        .collect()
}

fn to_json<T: Serialize>(r: Result<T, String>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).expect("serializable"),
        Err(e) => serde_json::json!({ "error": e }).to_string(),
    }
}

/// Reads `text`, applying the page's selections on top of the file options.
/// Empty strings keep whatever the file says.
fn options_for(problem: &ProblemFile, marking: &str, enumeration: &str) -> Result<SolveOptions, String> {
    let mut o = SolveOptions::from_problem(problem).map_err(|e| e.to_string())?;
    if !marking.is_empty() {
        o.marking = marking.parse().map_err(|e: border_basis::Error| e.to_string())?;
    }
    if !enumeration.is_empty() {
        o.enumeration = enumeration_by_name(enumeration, problem).map_err(|e| e.to_string())?;
    }
    Ok(o)
}

/// Runs the border basis computation on a problem file. Empty `marking` or
/// `enumeration` keep the file's choice; `backtrack` 0 runs once.
#[wasm_bindgen]
pub fn compute(text: &str, marking: &str, enumeration: &str, backtrack: u32) -> String {
    to_json((|| {
        let problem = parse_problem(text).map_err(|e| e.to_string())?;
        let mut options = options_for(&problem, marking, enumeration)?;
        if backtrack > 0 {
            options.backtrack = Some(backtrack as usize);
        }
        // keep the page responsive on positive dimensional input
        options.max_iterations.get_or_insert(20);
        let s = solve(&problem, &options).map_err(|e| e.to_string())?;
        let names = &problem.variables;
        let mut view = SolveView {
            status: s.outcome.status(),
            variables: names.clone(),
            order_ideal: Vec::new(),
            border: Vec::new(),
            universe: exps(s.universe.iter()),
            offending: Vec::new(),
            basis: Vec::new(),
            runs: s.runs,
            text: border_basis::render::render_text(&s.outcome, Some(&s.universe), names),
        };
        match &s.outcome {
            BbaOutcome::Success { order_ideal, basis } => {
                view.order_ideal = exps(order_ideal.iter());
                view.border = exps(&order_ideal.border());
                view.basis = elements(basis, names);
            }
            BbaOutcome::StoppedAtT7 { core, offending, .. } => {
                view.order_ideal = exps(core.iter());
                view.offending = exps(offending);
            }
            _ => {}
        }
        Ok(view)
    })())
}

/// Divisor closure and border of `terms`, a comma separated list of
/// monomials in the space separated `vars`.
#[wasm_bindgen]
pub fn staircase(terms: &str, vars: &str) -> String {
    to_json((|| {
        let names: Vec<String> = vars.split_whitespace().map(str::to_string).collect();
        if names.is_empty() {
            return Err("no variables".to_string());
        }
        let given: BTreeSet<Term> = if terms.trim().is_empty() {
            BTreeSet::new()
        } else {
            parse_term_list(terms, &names).map_err(|e| e.to_string())?.into_iter().collect()
        };
        let closure = OrderIdeal::divisor_closure(names.len(), &given);
        Ok(StaircaseView {
            is_order_ideal: is_order_ideal(&given),
            closure: exps(closure.iter()),
            border: exps(&closure.border()),
        })
    })())
}

/// One marked interreduction of the problem's polynomials.
#[wasm_bindgen]
pub fn interreduce(text: &str, marking: &str, enumeration: &str) -> String {
    to_json((|| {
        let problem = parse_problem(text).map_err(|e| e.to_string())?;
        let options = options_for(&problem, marking, enumeration)?;
        let marked = mark_items(&problem, options.marking).map_err(|e| e.to_string())?;
        let r = marked_interreduce(&marked, &options.enumeration, &PivotOverrides::new()).map_err(|e| e.to_string())?;
        Ok(InterreduceView {
            variables: problem.variables.clone(),
            rows: elements(&r.reduced, &problem.variables),
            choices: r.log.len(),
        })
    })())
}
