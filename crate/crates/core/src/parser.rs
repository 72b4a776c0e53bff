//! Reader for the problem file format.
//!
//! ```text
//! # the five point ideal
//! vars: x y
//! enum: y^3, x*y^2, x*y, x^2, y^2, x, y
//! x^2 + x*y - 1/2*y^2 - x - 1/2*y @ x*y
//! y^3 - y @ y^3
//! x*y^2 - x*y @ x*y^2
//! ```
//!
//! The first non-blank line declares the variables. Any further `key: value`
//! line is an option; every other line is one polynomial, optionally followed
//! by `@` and its marked term. `#` starts a comment.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polynomial::{Polynomial, Rational, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemItem {
    pub poly: Polynomial,
    pub marked: Option<Term>,
    /// 1-based source line.
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemFile {
    pub variables: Vec<String>,
    pub items: Vec<ProblemItem>,
    /// Raw option values keyed by name, with their source line.
    pub options: BTreeMap<String, (String, usize)>,
}

impl ProblemFile {
    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.items.iter().map(|i| i.poly.clone()).collect()
    }

    pub fn option(&self, key: &str) -> Option<&str> {
        self.options.get(key).map(|(v, _)| v.as_str())
    }

    /// Parses an option value as a comma or whitespace separated term list.
    pub fn option_terms(&self, key: &str) -> Option<Result<Vec<Term>>> {
        let (v, line) = self.options.get(key)?;
        Some(parse_term_list(v, &self.variables).map_err(|e| relocate(e, *line, 0)))
    }
}

fn relocate(e: Error, line: usize, offset: usize) -> Error {
    match e {
        Error::Parse {
            column, message, ..
        } => Error::Parse {
            line,
            column: column + offset,
            message,
        },
        other => other,
    }
}

fn is_valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let mut variables: Option<Vec<String>> = None;
    let mut items = Vec::new();
    let mut options = BTreeMap::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let err = |column: usize, message: String| Error::Parse {
            line: line_no,
            column,
            message,
        };
        if let Some(colon) = content.find(':') {
            let key = content[..colon].trim();
            let value = content[colon + 1..].trim();
            let key_col = content.find(key).unwrap_or(0) + 1;
            if !is_valid_name(&key.replace('-', "_")) {
                return Err(err(key_col, format!("invalid option name `{key}`")));
            }
            if key == "vars" {
                if variables.is_some() {
                    return Err(err(key_col, "variables declared twice".into()));
                }
                let names: Vec<String> = value.split_whitespace().map(str::to_string).collect();
                if names.is_empty() {
                    return Err(err(colon + 2, "at least one variable is required".into()));
                }
                for (k, name) in names.iter().enumerate() {
                    if !is_valid_name(name) {
                        return Err(err(colon + 2, format!("invalid variable name `{name}`")));
                    }
                    if names[..k].contains(name) {
                        return Err(err(colon + 2, format!("variable `{name}` declared twice")));
                    }
                }
                variables = Some(names);
            } else {
                if variables.is_none() {
                    return Err(err(1, "expected `vars:` header first".into()));
                }
                if options.insert(key.to_string(), (value.to_string(), line_no)).is_some() {
                    return Err(err(key_col, format!("option `{key}` given twice")));
                }
            }
            continue;
        }
        let Some(vars) = &variables else {
            return Err(err(1, "expected `vars:` header first".into()));
        };
        let (poly_text, marked_text) = match content.find('@') {
            Some(at) => (&content[..at], Some((at + 1, &content[at + 1..]))),
            None => (content, None),
        };
        let poly = parse_polynomial(poly_text, vars).map_err(|e| relocate(e, line_no, 0))?;
        let marked = marked_text
            .map(|(offset, s)| parse_monomial(s, vars).map_err(|e| relocate(e, line_no, offset)))
            .transpose()?;
        items.push(ProblemItem {
            poly,
            marked,
            line: line_no,
        });
    }
    let variables = variables.ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "missing `vars:` header".into(),
    })?;
    Ok(ProblemFile {
        variables,
        items,
        options,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

/// Tokens with their 1-based column.
fn lex(s: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, col));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Num(s[start..i].parse().expect("digits")), col));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(s[start..i].to_string()), col));
        } else {
            return Err(Error::Parse {
                line: 0,
                column: col,
                message: format!("unexpected character `{}`", s[i..].chars().next().unwrap_or(c)),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn new<'a>(s: &str, vars: &'a [String]) -> Result<Parser<'a>> {
        Ok(Parser {
            toks: lex(s)?,
            pos: 0,
            end: s.len() + 1,
            vars,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: 0,
            column: self.column(),
            message: message.into(),
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("unexpected {t:?}"))),
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.error("expected an unsigned integer")),
        }
    }

    fn coeff(&mut self) -> Result<Rational> {
        let num = self.uint()?;
        if self.eat(&Tok::Slash) {
            let col = self.column();
            let den = self.uint()?;
            if den.is_zero() {
                return Err(Error::Parse {
                    line: 0,
                    column: col,
                    message: "zero denominator".into(),
                });
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<()> {
        let col = self.column();
        let Some(Tok::Ident(name)) = self.peek().cloned() else {
            return Err(self.error("expected a variable"));
        };
        self.pos += 1;
        let idx = self.vars.iter().position(|v| *v == name).ok_or(Error::Parse {
            line: 0,
            column: col,
            message: format!("unknown variable `{name}`"),
        })?;
        let e = if self.eat(&Tok::Caret) {
            let col = self.column();
            let n = self.uint()?;
            u32::try_from(n).map_err(|_| Error::Parse {
                line: 0,
                column: col,
                message: "exponent too large".into(),
            })?
        } else {
            1
        };
        exps[idx] = exps[idx].checked_add(e).ok_or_else(|| self.error("exponent overflow"))?;
        Ok(())
    }

    fn monomial(&mut self) -> Result<Term> {
        let mut exps = vec![0u32; self.vars.len()];
        self.factor(&mut exps)?;
        while self.eat(&Tok::Star) {
            self.factor(&mut exps)?;
        }
        Ok(Term::new(exps))
    }

    fn term(&mut self) -> Result<(Term, Rational)> {
        match self.peek() {
            Some(Tok::Num(_)) => {
                let c = self.coeff()?;
                if self.eat(&Tok::Star) {
                    Ok((self.monomial()?, c))
                } else {
                    Ok((Term::one(self.vars.len()), c))
                }
            }
            Some(Tok::Ident(_)) => Ok((self.monomial()?, Rational::one())),
            _ => Err(self.error("expected a term")),
        }
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let mut terms = Vec::new();
        let mut negative = self.eat(&Tok::Minus);
        loop {
            let (t, c) = self.term()?;
            terms.push((t, if negative { -c } else { c }));
            if self.eat(&Tok::Plus) {
                negative = false;
            } else if self.eat(&Tok::Minus) {
                negative = true;
            } else {
                break;
            }
        }
        Polynomial::from_terms(self.vars.len(), terms)
    }
}

/// Parses a polynomial over the given variables. Line numbers in errors are 0.
pub fn parse_polynomial(s: &str, vars: &[String]) -> Result<Polynomial> {
    let mut p = Parser::new(s, vars)?;
    let f = p.polynomial()?;
    p.finish()?;
    Ok(f)
}

/// Parses a single power product such as `x^2*y`, or `1`.
pub fn parse_monomial(s: &str, vars: &[String]) -> Result<Term> {
    let mut p = Parser::new(s, vars)?;
    let t = if p.peek() == Some(&Tok::Num(BigInt::one())) {
        p.pos += 1;
        Term::one(vars.len())
    } else {
        p.monomial()?
    };
    p.finish()?;
    Ok(t)
}

/// Parses a comma or whitespace separated list of power products.
pub fn parse_term_list(s: &str, vars: &[String]) -> Result<Vec<Term>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in s.split(',') {
        for word in piece.split_whitespace() {
            let col = offset + piece.find(word).unwrap_or(0);
            out.push(parse_monomial(word, vars).map_err(|e| relocate(e, 0, col))?);
        }
        offset += piece.len() + 1;
    }
    Ok(out)
}
