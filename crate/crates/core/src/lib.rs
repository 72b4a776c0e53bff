//! Border bases of zero-dimensional polynomial ideals over the rationals,
//! computed from a marking of the input polynomials rather than a term
//! ordering.
//!
//! The main entry points are [`bba::run`] and [`bba::run_with_backtracking`];
//! [`solve::solve`] wires them to the text input format of [`parser`].
//! [`verification`] holds an independent Gröbner basis oracle and the
//! multiplication-matrix test used to certify results.

pub mod bba;
pub mod error;
pub mod interreduction;
pub mod marking;
pub mod order_ideal;
pub mod ordering;
pub mod parser;
pub mod polynomial;
pub mod render;
pub mod solve;
pub mod verification;

pub use bba::{BbaConfig, BbaOutcome};
pub use error::{Error, Result};
pub use interreduction::{marked_interreduce, ChoiceKey, ChoicePoint, InterreductionResult, PivotOverrides};
pub use marking::{MarkedPolynomial, MarkingStrategy, TermEnumeration};
pub use order_ideal::OrderIdeal;
pub use ordering::{OrderingKind, TermOrdering};
pub use polynomial::{Polynomial, Rational, Term};
