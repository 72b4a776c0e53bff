//! Marked interreduction: Gaussian elimination over an enumerated support
//! that keeps every row marked at a term of maximal degree.
//!
//! Rows are processed in input order. Row `i` is scaled so its pivot entry is
//! 1, then its pivot column is cleared from every other row. Any later row
//! whose pivot entry vanished picks a new pivot: by default the smallest
//! column index with a nonzero entry. When several nonzero columns of that
//! same degree are available, the decision is recorded as a [`ChoicePoint`]
//! and can be overridden on a later run.

use std::collections::{BTreeMap, HashMap};

use log::trace;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::marking::{validate_marking, MarkedPolynomial, TermEnumeration};
use crate::polynomial::{Polynomial, Rational, Term};

/// Identifies a choice point: the interreduction call it occurred in and
/// its position among that call's choice points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ChoiceKey {
    pub call: usize,
    pub seq: usize,
}

/// A pivot update where more than one same-degree column was available.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChoicePoint {
    pub key: ChoiceKey,
    /// Row whose pivot was updated.
    pub row: usize,
    /// Candidate columns in increasing order, and their terms.
    pub candidates: Vec<usize>,
    pub candidate_terms: Vec<Term>,
    pub chosen: usize,
}

impl ChoicePoint {
    pub fn chosen_term(&self) -> &Term {
        let k = self
            .candidates
            .iter()
            .position(|&c| c == self.chosen)
            .expect("chosen candidate");
        &self.candidate_terms[k]
    }
}

/// Pivot selections to use instead of the default minimum column, keyed by
/// choice point. The value is the term of the column to pick.
pub type PivotOverrides = BTreeMap<ChoiceKey, Term>;

/// Replays a log: every recorded choice becomes an override.
pub fn overrides_from_log(log: &[ChoicePoint]) -> PivotOverrides {
    log.iter()
        .map(|cp| (cp.key, cp.chosen_term().clone()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterreductionResult {
    /// Nonzero rows, in input order, each normalized at its marked term.
    pub reduced: Vec<MarkedPolynomial>,
    pub log: Vec<ChoicePoint>,
}

/// Marked interreduction of `input` as a single, standalone call.
pub fn marked_interreduce(
    input: &[MarkedPolynomial],
    enumeration: &TermEnumeration,
    overrides: &PivotOverrides,
) -> Result<InterreductionResult> {
    marked_interreduce_call(input, enumeration, overrides, 0)
}

type Row = BTreeMap<usize, Rational>;

/// Marked interreduction where the choice points are tagged with `call`.
pub fn marked_interreduce_call(
    input: &[MarkedPolynomial],
    enumeration: &TermEnumeration,
    overrides: &PivotOverrides,
    call: usize,
) -> Result<InterreductionResult> {
    for f in input {
        if !validate_marking(f.poly(), f.marked())? {
            return Err(Error::InvalidMarking(format!("{f:?}")));
        }
    }
    let Some(nvars) = input.first().map(MarkedPolynomial::nvars) else {
        return Ok(InterreductionResult {
            reduced: Vec::new(),
            log: Vec::new(),
        });
    };
    if let Some(f) = input.iter().find(|f| f.nvars() != nvars) {
        return Err(Error::DimensionMismatch {
            expected: nvars,
            found: f.nvars(),
        });
    }

    // (1) coefficient matrix over the enumerated support
    let columns = enumeration.enumerate(input.iter().flat_map(|f| f.poly().support()));
    let index: HashMap<&Term, usize> = columns.iter().enumerate().map(|(j, t)| (t, j)).collect();
    let degree: Vec<u32> = columns.iter().map(Term::degree).collect();
    let mut rows: Vec<Row> = input
        .iter()
        .map(|f| f.poly().iter().map(|(t, c)| (index[t], c.clone())).collect())
        .collect();

    // (2) pivot columns; None once a row has become zero
    let mut pivots: Vec<Option<usize>> = input.iter().map(|f| Some(index[f.marked()])).collect();

    let mut log = Vec::new();
    for i in 0..rows.len() {
        let Some(p) = pivots[i] else { continue };
        // (4)
        let a = rows[i].get(&p).cloned().unwrap_or_else(Rational::zero);
        debug_assert!(!a.is_zero(), "pivot entry vanished before its row was processed");
        if !a.is_one() {
            let inv = a.recip();
            for v in rows[i].values_mut() {
                *v *= &inv;
            }
        }
        // (5)
        let pivot_row = std::mem::take(&mut rows[i]);
        for (k, row) in rows.iter_mut().enumerate() {
            if k == i {
                continue;
            }
            let Some(factor) = row.get(&p).cloned() else { continue };
            for (j, v) in &pivot_row {
                let entry = row.entry(*j).or_insert_with(Rational::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    row.remove(j);
                }
            }
        }
        rows[i] = pivot_row;
        // (6)
        for k in i + 1..rows.len() {
            let Some(pk) = pivots[k] else { continue };
            if rows[k].contains_key(&pk) {
                continue;
            }
            let Some((&j, _)) = rows[k].iter().next() else {
                pivots[k] = None;
                continue;
            };
            let candidates: Vec<usize> = rows[k]
                .keys()
                .copied()
                .take_while(|&c| degree[c] == degree[j])
                .collect();
            let mut chosen = j;
            if candidates.len() > 1 {
                let key = ChoiceKey {
                    call,
                    seq: log.len(),
                };
                if let Some(term) = overrides.get(&key) {
                    chosen = *index.get(term).filter(|c| candidates.contains(c)).ok_or_else(|| {
                        Error::Contract(format!(
                            "override {term:?} for choice point {key:?} is not a candidate pivot"
                        ))
                    })?;
                }
                trace!("choice point {key:?}: row {k}, candidates {candidates:?}, chose {chosen}");
                log.push(ChoicePoint {
                    key,
                    row: k,
                    candidate_terms: candidates.iter().map(|&c| columns[c].clone()).collect(),
                    candidates,
                    chosen,
                });
            }
            pivots[k] = Some(chosen);
        }
    }

    // (7)
    let reduced = rows
        .into_iter()
        .zip(pivots)
        .filter_map(|(row, p)| {
            let p = p?;
            debug_assert!(!row.is_empty());
            let poly = Polynomial::from_terms(
                nvars,
                row.into_iter().map(|(j, c)| (columns[j].clone(), c)),
            )
            .expect("dimension checked");
            Some(MarkedPolynomial::new_unchecked(poly, columns[p].clone()))
        })
        .collect();
    Ok(InterreductionResult { reduced, log })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(e: &[u32]) -> Term {
        Term::new(e.to_vec())
    }

    fn marked(n: usize, pairs: &[(&[u32], i64, i64)], m: &[u32]) -> MarkedPolynomial {
        MarkedPolynomial::new(Polynomial::from_pairs(n, pairs), t(m)).unwrap()
    }

    fn three_variable_interreduction_input() -> (Vec<MarkedPolynomial>, TermEnumeration) {
        let f = vec![
            marked(3, &[(&[1, 2, 0], 1, 1), (&[3, 0, 0], 1, 1), (&[0, 0, 1], 1, 1)], &[1, 2, 0]),
            marked(3, &[(&[1, 2, 0], 1, 1), (&[0, 1, 1], -1, 1)], &[1, 2, 0]),
            marked(3, &[(&[1, 2, 0], 1, 1), (&[0, 0, 0], 1, 1)], &[1, 2, 0]),
            marked(
                3,
                &[(&[0, 5, 0], 1, 1), (&[1, 2, 0], -1, 1), (&[0, 2, 0], -1, 1), (&[0, 1, 1], 1, 1), (&[0, 0, 1], 1, 1)],
                &[0, 5, 0],
            ),
            marked(3, &[(&[0, 0, 3], 1, 1)], &[0, 0, 3]),
        ];
        let e = TermEnumeration::Explicit(vec![
            t(&[0, 5, 0]), t(&[0, 0, 3]), t(&[3, 0, 0]), t(&[1, 2, 0]), t(&[0, 1, 1]),
            t(&[0, 2, 0]), t(&[0, 0, 1]), t(&[0, 0, 0]),
        ]);
        (f, e)
    }

    #[test]
    fn three_variable_example_reduces_every_row_against_each_pivot() {
        // Hand elimination with every other row cleared at each pivot:
        //   i=1 (xy^2): rows 2,3 lose xy^2 and move to x^3; row 4 gains x^3
        //   i=2 (x^3):  rows 1,3,4 cleared; row 3 becomes yz + 1
        //   i=3 (yz):   rows 1,2 cleared
        let (f, e) = three_variable_interreduction_input();
        let r = marked_interreduce(&f, &e, &PivotOverrides::new()).unwrap();
        let expected = vec![
            marked(3, &[(&[1, 2, 0], 1, 1), (&[0, 0, 0], 1, 1)], &[1, 2, 0]),
            marked(3, &[(&[3, 0, 0], 1, 1), (&[0, 0, 1], 1, 1), (&[0, 0, 0], -1, 1)], &[3, 0, 0]),
            marked(3, &[(&[0, 1, 1], 1, 1), (&[0, 0, 0], 1, 1)], &[0, 1, 1]),
            marked(3, &[(&[0, 5, 0], 1, 1), (&[0, 2, 0], -1, 1), (&[0, 0, 1], 1, 1)], &[0, 5, 0]),
            marked(3, &[(&[0, 0, 3], 1, 1)], &[0, 0, 3]),
        ];
        assert_eq!(r.reduced, expected);
        // x^3 and yz were the only nonzero entries of their degree: no choices
        assert!(r.log.is_empty());
    }

    #[test]
    fn single_row_is_normalized() {
        let f = vec![marked(2, &[(&[2, 0], 2, 1), (&[0, 1], -2, 1)], &[2, 0])];
        let r = marked_interreduce(&f, &TermEnumeration::DegLex, &PivotOverrides::new()).unwrap();
        assert_eq!(r.reduced, vec![marked(2, &[(&[2, 0], 1, 1), (&[0, 1], -1, 1)], &[2, 0])]);
    }

    #[test]
    fn five_point_input_matches_worked_trace() {
        let f = vec![
            marked(2, &[(&[2, 0], 1, 1), (&[1, 1], 1, 1), (&[0, 2], -1, 2), (&[1, 0], -1, 1), (&[0, 1], -1, 2)], &[1, 1]),
            marked(2, &[(&[0, 3], 1, 1), (&[0, 1], -1, 1)], &[0, 3]),
            marked(2, &[(&[1, 2], 1, 1), (&[1, 1], -1, 1)], &[1, 2]),
        ];
        let e = TermEnumeration::Explicit(vec![
            t(&[0, 3]), t(&[1, 2]), t(&[1, 1]), t(&[2, 0]), t(&[0, 2]), t(&[1, 0]), t(&[0, 1]),
        ]);
        let r = marked_interreduce(&f, &e, &PivotOverrides::new()).unwrap();
        let tail: &[(&[u32], i64, i64)] = &[(&[2, 0], 1, 1), (&[0, 2], -1, 2), (&[1, 0], -1, 1), (&[0, 1], -1, 2)];
        let with = |lead: &[u32]| {
            let mut v: Vec<(&[u32], i64, i64)> = vec![(lead, 1, 1)];
            v.extend_from_slice(tail);
            Polynomial::from_pairs(2, &v)
        };
        assert_eq!(r.reduced[0].poly(), &with(&[1, 1]));
        assert_eq!(r.reduced[1], f[1]);
        assert_eq!(r.reduced[2].poly(), &with(&[1, 2]));
        assert_eq!(
            r.reduced.iter().map(|m| m.marked().clone()).collect::<Vec<_>>(),
            vec![t(&[1, 1]), t(&[0, 3]), t(&[1, 2])]
        );
    }

    #[test]
    fn dependent_rows_are_dropped() {
        let f = vec![
            marked(2, &[(&[1, 0], 1, 1), (&[0, 1], 1, 1)], &[1, 0]),
            marked(2, &[(&[1, 0], 1, 1), (&[0, 1], 1, 1)], &[1, 0]),
        ];
        let r = marked_interreduce(&f, &TermEnumeration::DegLex, &PivotOverrides::new()).unwrap();
        assert_eq!(r.reduced, vec![f[0].clone()]);
    }

    #[test]
    fn choice_points_are_logged_and_overridable() {
        // x^2 + xy marked x^2 twice with different tails: the second row keeps
        // x*y and y^2 as same-degree alternatives.
        let f = vec![
            marked(2, &[(&[2, 0], 1, 1), (&[1, 1], 1, 1)], &[2, 0]),
            marked(2, &[(&[2, 0], 1, 1), (&[0, 2], 1, 1)], &[2, 0]),
        ];
        let e = TermEnumeration::DegLex;
        let r = marked_interreduce(&f, &e, &PivotOverrides::new()).unwrap();
        assert_eq!(r.log.len(), 1);
        let cp = &r.log[0];
        assert_eq!(cp.row, 1);
        assert_eq!(cp.candidate_terms, vec![t(&[1, 1]), t(&[0, 2])]);
        assert_eq!(cp.chosen_term(), &t(&[1, 1]));
        assert_eq!(r.reduced[1].marked(), &t(&[1, 1]));

        let mut o = PivotOverrides::new();
        o.insert(cp.key, t(&[0, 2]));
        let r2 = marked_interreduce(&f, &e, &o).unwrap();
        assert_eq!(r2.reduced[1].marked(), &t(&[0, 2]));
        // y^2 - xy marked y^2 leaves x^2 + xy untouched
        assert_eq!(r2.reduced[0], f[0]);
        assert_eq!(
            r2.reduced[1].poly(),
            &Polynomial::from_pairs(2, &[(&[0, 2], 1, 1), (&[1, 1], -1, 1)])
        );
        assert_eq!(r2.log[0].chosen_term(), &t(&[0, 2]));

        o.insert(cp.key, t(&[1, 0]));
        assert!(matches!(marked_interreduce(&f, &e, &o), Err(Error::Contract(_))));
    }

    #[test]
    fn invalid_marking_is_rejected() {
        let bad = MarkedPolynomial::new_unchecked_for_tests(
            Polynomial::from_pairs(2, &[(&[2, 0], 1, 1), (&[1, 0], 1, 1)]),
            t(&[1, 0]),
        );
        assert!(matches!(
            marked_interreduce(&[bad], &TermEnumeration::DegLex, &PivotOverrides::new()),
            Err(Error::InvalidMarking(_))
        ));
    }
}
