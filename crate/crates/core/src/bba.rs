//! Border basis computation driven by a term marking instead of a term
//! ordering.
//!
//! The computation keeps a finite order ideal `U` (the computing universe)
//! and a vector space basis `V` of polynomials with pairwise distinct marked
//! terms. `V` is closed under multiplication by variables inside `U`, then the
//! candidate quotient basis `O = U \ marked(V)` is checked. When `O` is an
//! order ideal whose border lies inside `U`, the elements of `V` marked at
//! border terms form the `O`-border basis.
//!
//! Every step depends on the pivot decisions taken inside marked
//! interreduction. [`run_with_backtracking`] revisits those decisions when a
//! run ends with a candidate that is not an order ideal.

use std::collections::{BTreeSet, HashSet};

use log::debug;

use crate::error::{Error, Result};
use crate::interreduction::{marked_interreduce_call, ChoicePoint, PivotOverrides};
use crate::marking::{MarkedPolynomial, TermEnumeration};
use crate::order_ideal::{is_order_ideal, OrderIdeal};
use crate::polynomial::Term;

#[derive(Debug, Clone)]
pub struct BbaConfig {
    pub enumeration: TermEnumeration,
    /// Bound on passes through the outer loop. `None` picks
    /// `10 * (n + max input degree)`.
    pub max_iterations: Option<usize>,
    pub overrides: PivotOverrides,
}

impl Default for BbaConfig {
    fn default() -> Self {
        BbaConfig {
            enumeration: TermEnumeration::DegLex,
            max_iterations: None,
            overrides: PivotOverrides::new(),
        }
    }
}

impl BbaConfig {
    pub fn with_enumeration(enumeration: TermEnumeration) -> Self {
        BbaConfig {
            enumeration,
            ..Default::default()
        }
    }
}

/// How a computation ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BbaOutcome {
    Success {
        order_ideal: OrderIdeal,
        /// Ordered by marked term.
        basis: Vec<MarkedPolynomial>,
    },
    /// The candidate `U \ marked(V)` was not closed under divisors.
    StoppedAtT7 {
        candidate: BTreeSet<Term>,
        /// Terms of `U` that are not multiples of any marked term.
        core: OrderIdeal,
        /// `candidate \ core`.
        offending: BTreeSet<Term>,
    },
    /// Backtracking tried every pivot alternative without success.
    Exhausted { runs: usize },
    IterationLimit { limit: usize, kind: LimitKind },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    /// The outer loop bound of a single run.
    Iterations,
    /// The number of runs allowed to a backtracking search.
    BacktrackBudget,
}

impl BbaOutcome {
    pub fn status(&self) -> &'static str {
        match self {
            BbaOutcome::Success { .. } => "success",
            BbaOutcome::StoppedAtT7 { .. } => "stopped_at_T7",
            BbaOutcome::Exhausted { .. } => "marking_admits_no_border_basis",
            BbaOutcome::IterationLimit { .. } => "iteration_limit",
        }
    }

    pub fn is_success(&self) -> bool {
        matches!(self, BbaOutcome::Success { .. })
    }
}

/// The outcome of one run plus what is needed to inspect or replay it.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub outcome: BbaOutcome,
    /// The computing universe when the run ended.
    pub universe: OrderIdeal,
    /// Choice points of all interreduction calls, in the order they occurred.
    pub log: Vec<ChoicePoint>,
    pub iterations: usize,
    pub interreduction_calls: usize,
    /// Snapshots of `U` at every change, starting with the initial one.
    pub universe_history: Vec<usize>,
}

/// Interreduces `input` once so that no marked term occurs in another
/// polynomial, which is what [`run`] requires of its input.
pub fn preprocess(
    input: &[MarkedPolynomial],
    enumeration: &TermEnumeration,
) -> Result<Vec<MarkedPolynomial>> {
    Ok(marked_interreduce_call(input, enumeration, &PivotOverrides::new(), 0)?.reduced)
}

/// `V` followed by every new product `x_i v`, marked at `x_i * marked(v)`.
/// Products are listed by variable, then by position in `V`; products equal
/// to an element of `V` or to an earlier product are skipped.
pub fn expand_and_mark_vplus(v: &[MarkedPolynomial]) -> Vec<MarkedPolynomial> {
    let Some(nvars) = v.first().map(MarkedPolynomial::nvars) else {
        return Vec::new();
    };
    let mut seen: HashSet<_> = v.iter().map(|f| f.poly().clone()).collect();
    let mut out = v.to_vec();
    for i in 0..nvars {
        for f in v {
            let p = f.mul_by_variable(i).expect("variable index in range");
            if seen.insert(p.poly().clone()) {
                out.push(p);
            }
        }
    }
    out
}

fn check_precondition(input: &[MarkedPolynomial]) -> Result<usize> {
    let Some(nvars) = input.first().map(MarkedPolynomial::nvars) else {
        return Err(Error::Contract("no input polynomials".into()));
    };
    for (i, f) in input.iter().enumerate() {
        if f.nvars() != nvars {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                found: f.nvars(),
            });
        }
        for (j, g) in input.iter().enumerate() {
            if i != j && g.poly().contains(f.marked()) {
                return Err(Error::Contract(format!(
                    "marked term {:?} of input {i} occurs in input {j}; interreduce first",
                    f.marked()
                )));
            }
        }
    }
    Ok(nvars)
}

pub fn default_iteration_limit(input: &[MarkedPolynomial]) -> usize {
    let n = input.first().map_or(1, MarkedPolynomial::nvars);
    let d = input.iter().map(MarkedPolynomial::degree).max().unwrap_or(0) as usize;
    10 * (n + d)
}

fn sort_by_marked(v: &mut [MarkedPolynomial]) {
    v.sort_by(|a, b| a.marked().cmp(b.marked()));
}

struct Runner<'a> {
    config: &'a BbaConfig,
    calls: usize,
    log: Vec<ChoicePoint>,
}

impl Runner<'_> {
    fn interreduce(&mut self, input: &[MarkedPolynomial]) -> Result<Vec<MarkedPolynomial>> {
        let r = marked_interreduce_call(
            input,
            &self.config.enumeration,
            &self.config.overrides,
            self.calls,
        )?;
        self.calls += 1;
        self.log.extend(r.log);
        Ok(r.reduced)
    }
}

/// Runs the algorithm once with the pivot decisions fixed by
/// `config.overrides` (defaults elsewhere).
///
/// The input must already satisfy `marked(f_i) ∉ Supp(f_j)` for `i != j`; see
/// [`preprocess`]. Termination is only guaranteed for zero-dimensional ideals,
/// hence the iteration limit.
pub fn run(input: &[MarkedPolynomial], config: &BbaConfig) -> Result<RunReport> {
    let nvars = check_precondition(input)?;
    let limit = config
        .max_iterations
        .unwrap_or_else(|| default_iteration_limit(input));
    let mut runner = Runner {
        config,
        calls: 0,
        log: Vec::new(),
    };

    // T1
    let mut universe =
        OrderIdeal::divisor_closure(nvars, input.iter().flat_map(|f| f.poly().support()));
    let mut history = vec![universe.len()];
    debug!("T1: universe has {} terms", universe.len());
    // T2
    let mut v = runner.interreduce(input)?;
    sort_by_marked(&mut v);
    debug!("T2: {} basis polynomials", v.len());

    let mut iterations = 0;
    let report = |outcome, universe, runner: Runner, iterations, history| RunReport {
        outcome,
        universe,
        log: runner.log,
        iterations,
        interreduction_calls: runner.calls,
        universe_history: history,
    };

    loop {
        iterations += 1;
        if iterations > limit {
            debug!("iteration limit {limit} reached");
            return Ok(report(
                BbaOutcome::IterationLimit {
                    limit,
                    kind: LimitKind::Iterations,
                },
                universe,
                runner,
                iterations - 1,
                history,
            ));
        }
        // T3..T6
        loop {
            let marked: BTreeSet<Term> = v.iter().map(|f| f.marked().clone()).collect();
            let expanded = expand_and_mark_vplus(&v);
            let reduced = runner.interreduce(&expanded)?;
            let (v_prime, w_prime): (Vec<_>, Vec<_>) =
                reduced.into_iter().partition(|f| marked.contains(f.marked()));
            debug!(
                "T3: {} products, V' has {}, W' has {}",
                expanded.len() - v.len(),
                v_prime.len(),
                w_prime.len()
            );
            // T4/T5
            let w = loop {
                let w: Vec<MarkedPolynomial> = w_prime
                    .iter()
                    .filter(|f| universe.contains(f.marked()))
                    .cloned()
                    .collect();
                let outside: Vec<&Term> = w
                    .iter()
                    .flat_map(|f| f.poly().support())
                    .filter(|t| !universe.contains(t))
                    .collect();
                if outside.is_empty() {
                    break w;
                }
                universe = universe.extend(outside);
                history.push(universe.len());
                debug!("T5: universe grows to {} terms", universe.len());
            };
            // T6
            if w.is_empty() {
                break;
            }
            debug!("T6: adding {} polynomials", w.len());
            v = v_prime;
            v.extend(w);
            sort_by_marked(&mut v);
        }

        // T7
        let marked: BTreeSet<Term> = v.iter().map(|f| f.marked().clone()).collect();
        let candidate: BTreeSet<Term> = universe.terms().difference(&marked).cloned().collect();
        if !is_order_ideal(&candidate) {
            let core: BTreeSet<Term> = universe
                .iter()
                .filter(|t| !marked.iter().any(|m| m.divides(t)))
                .cloned()
                .collect();
            let offending = candidate.difference(&core).cloned().collect();
            let core = OrderIdeal::from_terms(nvars, core).expect("core is an order ideal");
            debug!("T7: candidate of {} terms is not an order ideal", candidate.len());
            return Ok(report(
                BbaOutcome::StoppedAtT7 {
                    candidate,
                    core,
                    offending,
                },
                universe,
                runner,
                iterations,
                history,
            ));
        }
        let order_ideal = OrderIdeal::from_terms(nvars, candidate).expect("checked above");
        // T8
        let border = order_ideal.border();
        if !border.iter().all(|b| universe.contains(b)) {
            universe = universe.plus_expand();
            history.push(universe.len());
            debug!("T8: border leaves the universe, expanding to {} terms", universe.len());
            continue;
        }
        // T9
        let basis: Vec<MarkedPolynomial> = v
            .into_iter()
            .filter(|f| border.contains(f.marked()))
            .collect();
        debug!("T9: |O| = {}, {} border polynomials", order_ideal.len(), basis.len());
        return Ok(report(
            BbaOutcome::Success { order_ideal, basis },
            universe,
            runner,
            iterations,
            history,
        ));
    }
}

/// Result of a backtracking search.
#[derive(Debug, Clone)]
pub struct BacktrackReport {
    pub outcome: BbaOutcome,
    /// The successful run, or the last run tried.
    pub last_run: RunReport,
    /// Number of runs performed, the first one included.
    pub runs: usize,
}

/// Depth-first search over the pivot alternatives of all interreduction
/// calls. The most recent open choice point is revisited first, its
/// alternatives in increasing column order. `budget` bounds the number of
/// runs after the first one.
pub fn run_with_backtracking(
    input: &[MarkedPolynomial],
    config: &BbaConfig,
    budget: usize,
) -> Result<BacktrackReport> {
    struct Frame {
        base: PivotOverrides,
        key: crate::interreduction::ChoiceKey,
        alternatives: std::collections::VecDeque<Term>,
    }

    let mut stack: Vec<Frame> = Vec::new();
    let mut overrides = config.overrides.clone();
    let mut runs = 0;
    loop {
        let cfg = BbaConfig {
            overrides: overrides.clone(),
            ..config.clone()
        };
        let report = run(input, &cfg)?;
        runs += 1;
        if report.outcome.is_success() {
            return Ok(BacktrackReport {
                outcome: report.outcome.clone(),
                last_run: report,
                runs,
            });
        }
        debug!("backtracking: run {runs} ended with {}", report.outcome.status());

        // Open a frame for every choice point this run decided by default.
        let mut base = overrides.clone();
        for cp in &report.log {
            if !overrides.contains_key(&cp.key) {
                let alternatives = cp
                    .candidates
                    .iter()
                    .zip(&cp.candidate_terms)
                    .filter(|(&c, _)| c != cp.chosen)
                    .map(|(_, t)| t.clone())
                    .collect();
                stack.push(Frame {
                    base: base.clone(),
                    key: cp.key,
                    alternatives,
                });
            }
            base.insert(cp.key, cp.chosen_term().clone());
        }

        let next = loop {
            let Some(top) = stack.last_mut() else {
                break None;
            };
            match top.alternatives.pop_front() {
                Some(t) => {
                    let mut o = top.base.clone();
                    o.insert(top.key, t);
                    break Some(o);
                }
                None => {
                    stack.pop();
                }
            }
        };
        match next {
            None => {
                return Ok(BacktrackReport {
                    outcome: BbaOutcome::Exhausted { runs },
                    last_run: report,
                    runs,
                })
            }
            Some(_) if runs > budget => {
                return Ok(BacktrackReport {
                    outcome: BbaOutcome::IterationLimit {
                        limit: budget,
                        kind: LimitKind::BacktrackBudget,
                    },
                    last_run: report,
                    runs,
                })
            }
            Some(o) => overrides = o,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::Polynomial;

    fn t(e: &[u32]) -> Term {
        Term::new(e.to_vec())
    }

    fn marked(n: usize, pairs: &[(&[u32], i64, i64)], m: &[u32]) -> MarkedPolynomial {
        MarkedPolynomial::new(Polynomial::from_pairs(n, pairs), t(m)).unwrap()
    }

    #[test]
    fn expand_lists_products_after_v() {
        let v = vec![marked(2, &[(&[0, 3], 1, 1), (&[0, 1], -1, 1)], &[0, 3])];
        let e = expand_and_mark_vplus(&v);
        assert_eq!(e.len(), 3);
        assert_eq!(e[0], v[0]);
        assert_eq!(e[1], marked(2, &[(&[1, 3], 1, 1), (&[1, 1], -1, 1)], &[1, 3]));
        assert_eq!(e[2], marked(2, &[(&[0, 4], 1, 1), (&[0, 2], -1, 1)], &[0, 4]));

        assert!(expand_and_mark_vplus(&[]).is_empty());

        let x = vec![marked(1, &[(&[1], 1, 1)], &[1])];
        assert_eq!(
            expand_and_mark_vplus(&x),
            vec![x[0].clone(), marked(1, &[(&[2], 1, 1)], &[2])]
        );
    }

    #[test]
    fn precondition_is_enforced() {
        let f = vec![
            marked(2, &[(&[1, 0], 1, 1), (&[0, 1], 1, 1)], &[1, 0]),
            marked(2, &[(&[1, 0], 1, 1), (&[0, 0], 1, 1)], &[1, 0]),
        ];
        assert!(matches!(run(&f, &BbaConfig::default()), Err(Error::Contract(_))));
        assert!(matches!(run(&[], &BbaConfig::default()), Err(Error::Contract(_))));
        let pre = preprocess(&f, &TermEnumeration::DegLex).unwrap();
        assert!(run(&pre, &BbaConfig::default()).is_ok());
    }

    #[test]
    fn duplicates_collapse_in_preprocessing() {
        let f = marked(2, &[(&[1, 0], 1, 1), (&[0, 1], 1, 1)], &[1, 0]);
        let pre = preprocess(&[f.clone(), f.clone()], &TermEnumeration::DegLex).unwrap();
        assert_eq!(pre, vec![f]);
    }

    #[test]
    fn linear_system_gives_trivial_order_ideal() {
        // x - 1, y - 2: O = {1}
        let f = vec![
            marked(2, &[(&[1, 0], 1, 1), (&[0, 0], -1, 1)], &[1, 0]),
            marked(2, &[(&[0, 1], 1, 1), (&[0, 0], -2, 1)], &[0, 1]),
        ];
        let r = run(&f, &BbaConfig::default()).unwrap();
        match r.outcome {
            BbaOutcome::Success { order_ideal, basis } => {
                assert_eq!(order_ideal.terms(), &BTreeSet::from([Term::one(2)]));
                // sorted by marked term: y before x
                assert_eq!(basis, vec![f[1].clone(), f[0].clone()]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn positive_dimensional_input_hits_the_iteration_limit() {
        // <x^2> alone: y is free
        let f = vec![marked(2, &[(&[2, 0], 1, 1)], &[2, 0])];
        let cfg = BbaConfig {
            max_iterations: Some(5),
            ..Default::default()
        };
        let r = run(&f, &cfg).unwrap();
        assert_eq!(
            r.outcome,
            BbaOutcome::IterationLimit {
                limit: 5,
                kind: LimitKind::Iterations
            }
        );
        assert!(r.universe_history.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn backtracking_on_a_succeeding_input_runs_once() {
        let f = vec![
            marked(2, &[(&[1, 0], 1, 1), (&[0, 0], -1, 1)], &[1, 0]),
            marked(2, &[(&[0, 1], 1, 1), (&[0, 0], -2, 1)], &[0, 1]),
        ];
        let plain = run(&f, &BbaConfig::default()).unwrap();
        let bt = run_with_backtracking(&f, &BbaConfig::default(), 10).unwrap();
        assert_eq!(bt.runs, 1);
        assert_eq!(bt.outcome, plain.outcome);
    }
}
