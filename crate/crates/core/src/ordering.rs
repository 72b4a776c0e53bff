//! Term orderings. These feed the degree-compatible marking strategies and
//! the Gröbner basis oracle; the border basis algorithm itself never needs one.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::polynomial::{Polynomial, Rational, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderingKind {
    Lex,
    DegLex,
    DegRevLex,
}

/// A term ordering together with a variable priority: `priority[0]` is the
/// most significant variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermOrdering {
    kind: OrderingKind,
    priority: Vec<usize>,
}

impl TermOrdering {
    /// `x_1 > x_2 > ... > x_n`.
    pub fn new(kind: OrderingKind, nvars: usize) -> Self {
        TermOrdering {
            kind,
            priority: (0..nvars).collect(),
        }
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(OrderingKind::Lex, nvars)
    }

    pub fn deglex(nvars: usize) -> Self {
        Self::new(OrderingKind::DegLex, nvars)
    }

    pub fn degrevlex(nvars: usize) -> Self {
        Self::new(OrderingKind::DegRevLex, nvars)
    }

    /// Ordering with an explicit variable priority, which must be a
    /// permutation of `0..n`.
    pub fn with_priority(kind: OrderingKind, priority: Vec<usize>) -> Result<Self> {
        let mut sorted = priority.clone();
        sorted.sort_unstable();
        if sorted.iter().enumerate().any(|(i, &v)| i != v) || priority.is_empty() {
            return Err(Error::Strategy(format!(
                "variable priority {priority:?} is not a permutation"
            )));
        }
        Ok(TermOrdering { kind, priority })
    }

    pub fn kind(&self) -> OrderingKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn is_degree_compatible(&self) -> bool {
        !matches!(self.kind, OrderingKind::Lex)
    }

    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        let lex = || {
            self.priority
                .iter()
                .map(|&i| ea[i].cmp(&eb[i]))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        };
        match self.kind {
            OrderingKind::Lex => lex(),
            OrderingKind::DegLex => a.degree().cmp(&b.degree()).then_with(lex),
            OrderingKind::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                self.priority
                    .iter()
                    .rev()
                    .map(|&i| eb[i].cmp(&ea[i]))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            }),
        }
    }

    /// Largest support term and its coefficient.
    pub fn leading<'a>(&self, f: &'a Polynomial) -> Option<(&'a Term, &'a Rational)> {
        f.iter().max_by(|a, b| self.cmp(a.0, b.0))
    }

    pub fn leading_term<'a>(&self, f: &'a Polynomial) -> Option<&'a Term> {
        self.leading(f).map(|(t, _)| t)
    }
}
