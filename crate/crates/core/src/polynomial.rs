//! Terms and sparse polynomials with exact rational coefficients.
//!
//! Terms are stored as exponent vectors and compared lexicographically on
//! those vectors. That comparison is only a storage order; nothing in this
//! module treats it as a term ordering.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Builds the rational `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders a rational as `num/den`, including `/1` for integers.
pub fn rational_to_fraction(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// A power product `x_1^a_1 * ... * x_n^a_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term(Box<[u32]>);

impl Term {
    pub fn new(exponents: impl Into<Vec<u32>>) -> Self {
        let exponents = exponents.into();
        assert!(!exponents.is_empty(), "terms need at least one variable");
        Term(exponents.into_boxed_slice())
    }

    /// The constant term `1` in `nvars` variables.
    pub fn one(nvars: usize) -> Self {
        Term::new(vec![0; nvars])
    }

    /// The variable `x_i` (zero based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Term::new(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn check_dim(&self, other: &Term) -> Result<()> {
        if self.nvars() == other.nvars() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: other.nvars(),
            })
        }
    }

    pub fn checked_mul(&self, other: &Term) -> Result<Term> {
        self.check_dim(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_divides(&self, other: &Term) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.divides(other))
    }

    /// `self | other`. Panics on mismatched dimension in debug builds.
    pub fn divides(&self, other: &Term) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn mul_unchecked(&self, other: &Term) -> Term {
        Term(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `x_i * self`.
    pub fn mul_var(&self, i: usize) -> Term {
        let mut e = self.0.clone();
        e[i] += 1;
        Term(e)
    }

    /// `self / x_i`, if `x_i` divides `self`.
    pub fn div_var(&self, i: usize) -> Option<Term> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Term(e))
    }

    /// `self / other`, if `other` divides `self`.
    pub fn quotient(&self, other: &Term) -> Option<Term> {
        if !other.divides(self) {
            return None;
        }
        Some(Term(
            self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn lcm(&self, other: &Term) -> Term {
        Term(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// All divisors of this term, including `1` and the term itself.
    pub fn divisors(&self) -> Vec<Term> {
        let mut out = vec![Term::one(self.nvars())];
        for (i, &e) in self.0.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for t in &out {
                for k in 0..=e {
                    let mut t = t.clone();
                    t.0[i] = k;
                    next.push(t);
                }
            }
            out = next;
        }
        out
    }

    /// Formats the term with the given variable names, e.g. `x^2*y`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> TermDisplay<'a> {
        TermDisplay { term: self, names }
    }
}

impl serde::Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl Mul for &Term {
    type Output = Term;

    /// Panics if the dimensions differ; use [`Term::checked_mul`] otherwise.
    fn mul(self, rhs: &Term) -> Term {
        self.checked_mul(rhs).expect("term dimension mismatch")
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(&default_names(self.nvars())))
    }
}

/// `x, y, z` for up to three variables, `x1, x2, ...` beyond.
pub fn default_names(nvars: usize) -> Vec<String> {
    if nvars <= 3 {
        ["x", "y", "z"][..nvars].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

pub struct TermDisplay<'a> {
    term: &'a Term,
    names: &'a [String],
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.term.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (name, &e) in self.names.iter().zip(self.term.exponents()) {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match e {
                1 => write!(f, "{name}")?,
                _ => write!(f, "{name}^{e}")?,
            }
        }
        Ok(())
    }
}

/// Sparse polynomial over the rationals. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Term, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars >= 1, "polynomials need at least one variable");
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(Term::one(nvars), c)
    }

    pub fn monomial(t: Term, c: Rational) -> Self {
        let mut p = Polynomial::zero(t.nvars());
        if !c.is_zero() {
            p.terms.insert(t, c);
        }
        p
    }

    /// Sums the given `(term, coefficient)` pairs; repeated terms are combined.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Term, Rational)>,
    ) -> Result<Self> {
        let mut p = Polynomial::zero(nvars);
        for (t, c) in terms {
            if t.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: t.nvars(),
                });
            }
            p.add_term(t, c);
        }
        Ok(p)
    }

    /// Convenience constructor from integer-exponent / small-rational pairs.
    pub fn from_pairs(nvars: usize, pairs: &[(&[u32], i64, i64)]) -> Self {
        Self::from_terms(
            nvars,
            pairs
                .iter()
                .map(|(e, n, d)| (Term::new(e.to_vec()), rat(*n, *d))),
        )
        .expect("dimension mismatch in literal polynomial")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms and coefficients in lexicographic exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (&Term, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: &Term) -> Option<&Rational> {
        self.terms.get(t)
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.terms.contains_key(t)
    }

    pub fn support(&self) -> impl Iterator<Item = &Term> {
        self.terms.keys()
    }

    pub fn degree(&self) -> Result<u32> {
        self.terms
            .keys()
            .map(Term::degree)
            .max()
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn support_and_degree(&self) -> Result<(BTreeSet<Term>, u32)> {
        let d = self.degree()?;
        Ok((self.terms.keys().cloned().collect(), d))
    }

    fn add_term(&mut self, t: Term, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self + c * g`.
    pub fn add_scaled(&self, c: &Rational, g: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled_assign(c, g);
        out
    }

    pub fn add_scaled_assign(&mut self, c: &Rational, g: &Polynomial) {
        assert_eq!(self.nvars, g.nvars, "polynomial dimension mismatch");
        if c.is_zero() {
            return;
        }
        for (t, a) in &g.terms {
            self.add_term(t.clone(), c * a);
        }
    }

    /// `self + c * m * g` for a term `m`.
    pub fn add_scaled_shifted_assign(&mut self, c: &Rational, m: &Term, g: &Polynomial) {
        if c.is_zero() {
            return;
        }
        for (t, a) in &g.terms {
            self.add_term(m * t, c * a);
        }
    }

    /// `x_i * self` for a zero based variable index.
    pub fn mul_by_variable(&self, i: usize) -> Result<Polynomial> {
        if i >= self.nvars {
            return Err(Error::VariableOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        Ok(Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul_var(i), c.clone()))
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.clone(), a * c))
                .collect(),
        }
    }

    /// Removes `t` from the support, returning its coefficient.
    pub fn remove(&mut self, t: &Term) -> Option<Rational> {
        self.terms.remove(t)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolynomialDisplay<'a> {
        PolynomialDisplay { poly: self, names }
    }

    /// Terms sorted by descending degree, ties by descending exponent vector.
    /// Used for human-readable output only.
    pub fn terms_for_display(&self) -> Vec<(&Term, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| b.0.cmp(a.0)));
        v
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(&default_names(self.nvars)))
    }
}

pub struct PolynomialDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for PolynomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.terms_for_display();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (t, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if t.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", t.display(self.names))?;
            } else {
                write!(f, "{a}*{}", t.display(self.names))?;
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.add_scaled(&Rational::one(), rhs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.add_scaled(&-Rational::one(), rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}
