//! Marked polynomials, marking strategies and degree-nonincreasing term
//! enumerations.
//!
//! A marking picks one support term of maximal degree in each polynomial. It
//! plays the role a leading term plays for Gröbner bases, but nothing forces
//! the choices to come from a single term ordering.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::error::{Error, Result};
use crate::ordering::TermOrdering;
use crate::polynomial::{Polynomial, Rational, Term};

/// A nonzero polynomial with a designated support term of maximal degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MarkedPolynomial {
    poly: Polynomial,
    marked: Term,
}

impl MarkedPolynomial {
    pub fn new(poly: Polynomial, marked: Term) -> Result<Self> {
        if !validate_marking(&poly, &marked)? {
            return Err(Error::InvalidMarking(format!(
                "{marked:?} is not a support term of maximal degree in {poly:?}"
            )));
        }
        Ok(MarkedPolynomial { poly, marked })
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn new_unchecked(poly: Polynomial, marked: Term) -> Self {
        debug_assert!(validate_marking(&poly, &marked).unwrap_or(false));
        MarkedPolynomial { poly, marked }
    }

    #[cfg(test)]
    pub(crate) fn new_unchecked_for_tests(poly: Polynomial, marked: Term) -> Self {
        MarkedPolynomial { poly, marked }
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn marked(&self) -> &Term {
        &self.marked
    }

    pub fn into_parts(self) -> (Polynomial, Term) {
        (self.poly, self.marked)
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn degree(&self) -> u32 {
        self.marked.degree()
    }

    pub fn marked_coeff(&self) -> &Rational {
        self.poly.coeff(&self.marked).expect("marked term in support")
    }

    /// Scales the polynomial so the marked term has coefficient 1.
    pub fn normalized(&self) -> MarkedPolynomial {
        let c = self.marked_coeff();
        if c.is_one() {
            return self.clone();
        }
        MarkedPolynomial {
            poly: self.poly.scale(&c.recip()),
            marked: self.marked.clone(),
        }
    }

    /// `x_i * self`, marked at `x_i * marked`.
    pub fn mul_by_variable(&self, i: usize) -> Result<MarkedPolynomial> {
        Ok(MarkedPolynomial {
            poly: self.poly.mul_by_variable(i)?,
            marked: self.marked.mul_var(i),
        })
    }
}

impl fmt::Debug for MarkedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} @ {:?}", self.poly, self.marked)
    }
}

/// True iff `t` is a support term of `f` with `deg(t) = deg(f)`.
pub fn validate_marking(f: &Polynomial, t: &Term) -> Result<bool> {
    let d = f.degree()?;
    Ok(f.contains(t) && t.degree() == d)
}

/// Marks `f` at its leading term for a degree-compatible ordering.
pub fn mark_by_ordering(f: &Polynomial, sigma: &TermOrdering) -> Result<MarkedPolynomial> {
    if !sigma.is_degree_compatible() {
        return Err(Error::Strategy(
            "markings need a degree-compatible term ordering".into(),
        ));
    }
    if sigma.nvars() != f.nvars() {
        return Err(Error::DimensionMismatch {
            expected: f.nvars(),
            found: sigma.nvars(),
        });
    }
    let lt = sigma.leading_term(f).ok_or(Error::ZeroPolynomial)?.clone();
    Ok(MarkedPolynomial::new_unchecked(f.clone(), lt))
}

/// Marks a maximal-degree term involving at least two variables when there is
/// one, otherwise a pure power. Ties go to the DegLex-largest candidate.
pub fn mark_avoiding_pure_powers(f: &Polynomial) -> Result<MarkedPolynomial> {
    let d = f.degree()?;
    let deglex = TermOrdering::deglex(f.nvars());
    let is_mixed = |t: &Term| t.exponents().iter().filter(|&&e| e > 0).count() >= 2;
    let top = f.support().filter(|t| t.degree() == d);
    let best = top
        .max_by(|a, b| {
            is_mixed(a)
                .cmp(&is_mixed(b))
                .then_with(|| deglex.cmp(a, b))
        })
        .expect("nonzero polynomial")
        .clone();
    Ok(MarkedPolynomial::new_unchecked(f.clone(), best))
}

/// How input polynomials receive their marked terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkingStrategy {
    /// Use the annotation supplied with each polynomial.
    Explicit,
    DegLex,
    DegRevLex,
    AvoidPurePowers,
}

impl MarkingStrategy {
    pub fn name(self) -> &'static str {
        match self {
            MarkingStrategy::Explicit => "explicit",
            MarkingStrategy::DegLex => "deglex",
            MarkingStrategy::DegRevLex => "degrevlex",
            MarkingStrategy::AvoidPurePowers => "avoid-pure-powers",
        }
    }

    /// Marks `f`. `annotation` is required for [`MarkingStrategy::Explicit`]
    /// and ignored otherwise.
    pub fn mark(self, f: &Polynomial, annotation: Option<&Term>) -> Result<MarkedPolynomial> {
        match self {
            MarkingStrategy::Explicit => {
                let t = annotation.ok_or_else(|| {
                    Error::InvalidMarking(format!("{f:?} has no marked term annotation"))
                })?;
                MarkedPolynomial::new(f.clone(), t.clone())
            }
            MarkingStrategy::DegLex => mark_by_ordering(f, &TermOrdering::deglex(f.nvars())),
            MarkingStrategy::DegRevLex => mark_by_ordering(f, &TermOrdering::degrevlex(f.nvars())),
            MarkingStrategy::AvoidPurePowers => mark_avoiding_pure_powers(f),
        }
    }
}

impl FromStr for MarkingStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "explicit" => Ok(MarkingStrategy::Explicit),
            "deglex" => Ok(MarkingStrategy::DegLex),
            "degrevlex" => Ok(MarkingStrategy::DegRevLex),
            "avoid-pure-powers" => Ok(MarkingStrategy::AvoidPurePowers),
            _ => Err(Error::Strategy(format!("unknown marking strategy `{s}`"))),
        }
    }
}

/// Rule for listing a finite term set as `t_1, ..., t_l` with
/// `deg(t_1) >= ... >= deg(t_l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermEnumeration {
    /// Descending DegLex with `x_1 > ... > x_n`.
    DegLex,
    /// Descending DegRevLex with `x_1 > ... > x_n`.
    DegRevLex,
    /// Follow the given sequence. Terms of equal degree keep the relative
    /// order they have here; unlisted terms come after the listed ones of
    /// the same degree, in descending DegLex order.
    Explicit(Vec<Term>),
}

impl TermEnumeration {
    pub fn name(&self) -> &'static str {
        match self {
            TermEnumeration::DegLex => "deglex",
            TermEnumeration::DegRevLex => "degrevlex",
            TermEnumeration::Explicit(_) => "explicit",
        }
    }

    /// Enumerates `terms` (duplicates are removed).
    pub fn enumerate<'a>(&self, terms: impl IntoIterator<Item = &'a Term>) -> Vec<Term> {
        let mut v: Vec<Term> = terms.into_iter().cloned().collect();
        v.sort_unstable();
        v.dedup();
        let Some(n) = v.first().map(Term::nvars) else {
            return v;
        };
        match self {
            TermEnumeration::DegLex => {
                let o = TermOrdering::deglex(n);
                v.sort_by(|a, b| o.cmp(b, a));
            }
            TermEnumeration::DegRevLex => {
                let o = TermOrdering::degrevlex(n);
                v.sort_by(|a, b| o.cmp(b, a));
            }
            TermEnumeration::Explicit(seq) => {
                let o = TermOrdering::deglex(n);
                let pos: HashMap<&Term, usize> =
                    seq.iter().enumerate().rev().map(|(i, t)| (t, i)).collect();
                v.sort_by(|a, b| {
                    b.degree().cmp(&a.degree()).then_with(|| {
                        match (pos.get(a), pos.get(b)) {
                            (Some(i), Some(j)) => i.cmp(j),
                            (Some(_), None) => Ordering::Less,
                            (None, Some(_)) => Ordering::Greater,
                            (None, None) => o.cmp(b, a),
                        }
                    })
                });
            }
        }
        v
    }
}

impl FromStr for TermEnumeration {
    type Err = Error;

    /// Parses `deglex` or `degrevlex`; explicit sequences need their term list
    /// and are built directly.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "deglex" => Ok(TermEnumeration::DegLex),
            "degrevlex" => Ok(TermEnumeration::DegRevLex),
            _ => Err(Error::Strategy(format!("unknown enumeration `{s}`"))),
        }
    }
}
