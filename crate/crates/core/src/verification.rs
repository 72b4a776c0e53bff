//! Independent checks for computed border bases.
//!
//! Nothing here shares code with the marked algorithm beyond the polynomial
//! arithmetic: ideal membership and quotient dimensions come from a plain
//! Buchberger implementation, and the border basis property is tested through
//! the commutativity of the formal multiplication matrices.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::marking::MarkedPolynomial;
use crate::order_ideal::OrderIdeal;
use crate::ordering::TermOrdering;
use crate::polynomial::{Polynomial, Rational, Term};

fn leading(f: &Polynomial, ord: &TermOrdering) -> (Term, Rational) {
    let (t, c) = ord.leading(f).expect("nonzero polynomial");
    (t.clone(), c.clone())
}

fn monic(f: &Polynomial, ord: &TermOrdering) -> Polynomial {
    let (_, c) = leading(f, ord);
    f.scale(&c.recip())
}

/// Fully reduced remainder of `f` modulo `g` (any finite set, not
/// necessarily a Gröbner basis).
fn reduce(f: &Polynomial, g: &[(Term, Rational, &Polynomial)], ord: &TermOrdering) -> Polynomial {
    let mut p = f.clone();
    let mut r = Polynomial::zero(f.nvars());
    while let Some((lt, lc)) = ord.leading(&p).map(|(t, c)| (t.clone(), c.clone())) {
        match g.iter().find(|(gt, _, _)| gt.divides(&lt)) {
            Some((gt, gc, gp)) => {
                let m = lt.quotient(gt).expect("divides");
                p.add_scaled_shifted_assign(&-(&lc / gc), &m, gp);
            }
            None => {
                p.remove(&lt);
                r.add_scaled_assign(&Rational::one(), &Polynomial::monomial(lt, lc));
            }
        }
    }
    r
}

fn with_leading<'a>(g: &'a [Polynomial], ord: &TermOrdering) -> Vec<(Term, Rational, &'a Polynomial)> {
    g.iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let (t, c) = leading(p, ord);
            (t, c, p)
        })
        .collect()
}

/// The `ord`-normal form of `f` with respect to `g`. For a Gröbner basis `g`
/// it is zero exactly when `f` lies in the ideal.
pub fn normal_form(f: &Polynomial, g: &[Polynomial], ord: &TermOrdering) -> Polynomial {
    reduce(f, &with_leading(g, ord), ord)
}

/// Reduced Gröbner basis of the ideal generated by `f`, sorted by descending
/// leading term. Buchberger's algorithm with the normal selection strategy
/// and the coprime leading term criterion.
pub fn buchberger(f: &[Polynomial], ord: &TermOrdering) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut lts: Vec<Term> = Vec::new();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();

    let add = |p: Polynomial, basis: &mut Vec<Polynomial>, lts: &mut Vec<Term>, pairs: &mut BTreeSet<(usize, usize)>| {
        let p = monic(&p, ord);
        let k = basis.len();
        lts.push(leading(&p, ord).0);
        basis.push(p);
        for i in 0..k {
            pairs.insert((i, k));
        }
    };

    for p in f.iter().filter(|p| !p.is_zero()) {
        add(p.clone(), &mut basis, &mut lts, &mut pairs);
    }

    while let Some(&(i, j)) = pairs.iter().min_by(|a, b| {
        ord.cmp(&lts[a.0].lcm(&lts[a.1]), &lts[b.0].lcm(&lts[b.1]))
            .then_with(|| a.cmp(b))
    }) {
        pairs.remove(&(i, j));
        let lcm = lts[i].lcm(&lts[j]);
        if lcm == &lts[i] * &lts[j] {
            continue;
        }
        let mut s = Polynomial::zero(basis[i].nvars());
        s.add_scaled_shifted_assign(&Rational::one(), &lcm.quotient(&lts[i]).unwrap(), &basis[i]);
        s.add_scaled_shifted_assign(&-Rational::one(), &lcm.quotient(&lts[j]).unwrap(), &basis[j]);
        let r = normal_form(&s, &basis, ord);
        if !r.is_zero() {
            add(r, &mut basis, &mut lts, &mut pairs);
        }
    }

    // minimalize
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let redundant = (0..basis.len()).any(|j| {
            j != i && lts[j].divides(&lts[i]) && (lts[j] != lts[i] || j < i)
        });
        if !redundant {
            keep.push(i);
        }
    }
    let minimal: Vec<Polynomial> = keep.iter().map(|&i| basis[i].clone()).collect();

    // tail-reduce
    let mut reduced: Vec<Polynomial> = (0..minimal.len())
        .map(|i| {
            let (lt, _) = leading(&minimal[i], ord);
            let mut tail = minimal[i].clone();
            tail.remove(&lt);
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            let mut out = normal_form(&tail, &others, ord);
            out.add_scaled_assign(&Rational::one(), &Polynomial::monomial(lt, Rational::one()));
            out
        })
        .collect();
    reduced.sort_by(|a, b| ord.cmp(&leading(b, ord).0, &leading(a, ord).0));
    reduced
}

/// Terms not divisible by any leading term of the Gröbner basis `g`.
pub fn sigma_quotient_basis(g: &[Polynomial], ord: &TermOrdering) -> Result<OrderIdeal> {
    let nvars = ord.nvars();
    let lts: Vec<Term> = with_leading(g, ord).into_iter().map(|(t, _, _)| t).collect();
    let mut bounds = Vec::with_capacity(nvars);
    for i in 0..nvars {
        let pure = lts
            .iter()
            .filter(|t| t.exponents().iter().enumerate().all(|(k, &e)| k == i || e == 0))
            .map(|t| t.exponents()[i])
            .min()
            .ok_or(Error::NotZeroDimensional { variable: i })?;
        bounds.push(pure);
    }
    let mut terms = BTreeSet::new();
    let mut e = vec![0u32; nvars];
    'outer: loop {
        let t = Term::new(e.clone());
        if !lts.iter().any(|l| l.divides(&t)) {
            terms.insert(t);
        }
        for k in 0..nvars {
            e[k] += 1;
            if e[k] < bounds[k] {
                continue 'outer;
            }
            e[k] = 0;
        }
        break;
    }
    Ok(OrderIdeal::from_terms(nvars, terms).expect("complement of a monomial ideal"))
}

/// Exact value of `f` at `point`.
pub fn evaluate(f: &Polynomial, point: &[Rational]) -> Result<Rational> {
    if point.len() != f.nvars() {
        return Err(Error::DimensionMismatch {
            expected: f.nvars(),
            found: point.len(),
        });
    }
    Ok(f.iter().fold(Rational::zero(), |acc, (t, c)| {
        let v = t
            .exponents()
            .iter()
            .zip(point)
            .fold(Rational::one(), |m, (&e, x)| m * num_traits::pow(x.clone(), e as usize));
        acc + c * v
    }))
}

/// Matrix of multiplication by `x_variable` on the span of `O`, columns and
/// rows indexed by `O` in its canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicationMatrix {
    pub variable: usize,
    pub entries: Vec<Vec<Rational>>,
}

impl MultiplicationMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn mul(&self, other: &MultiplicationMatrix) -> Vec<Vec<Rational>> {
        let n = self.size();
        let mut out = vec![vec![Rational::zero(); n]; n];
        for (i, row) in self.entries.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.entries[k].iter().enumerate() {
                    if !b.is_zero() {
                        out[i][j] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// Checks that `g` has one polynomial per border term of `o`, marked at that
/// border term, with every other support term in `o`.
pub fn check_prebasis(g: &[MarkedPolynomial], o: &OrderIdeal) -> Result<()> {
    let border = o.border();
    let mut seen = BTreeSet::new();
    for f in g {
        if !border.contains(f.marked()) {
            return Err(Error::NotPrebasis(format!("marked term {:?} is not a border term", f.marked())));
        }
        if !seen.insert(f.marked().clone()) {
            return Err(Error::NotPrebasis(format!("border term {:?} is marked twice", f.marked())));
        }
        if let Some(t) = f.poly().support().find(|t| *t != f.marked() && !o.contains(t)) {
            return Err(Error::NotPrebasis(format!("{t:?} in {f:?} lies outside the order ideal")));
        }
    }
    if let Some(b) = border.difference(&seen).next() {
        return Err(Error::NotPrebasis(format!("no polynomial for border term {b:?}")));
    }
    Ok(())
}

/// The formal multiplication matrices of a border prebasis.
pub fn multiplication_matrices(g: &[MarkedPolynomial], o: &OrderIdeal) -> Result<Vec<MultiplicationMatrix>> {
    check_prebasis(g, o)?;
    let index: HashMap<&Term, usize> = o.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let by_border: BTreeMap<&Term, MarkedPolynomial> =
        g.iter().map(|f| (f.marked(), f.normalized())).collect();
    let mu = o.len();
    Ok((0..o.nvars())
        .map(|var| {
            let mut entries = vec![vec![Rational::zero(); mu]; mu];
            for (col, t) in o.iter().enumerate() {
                let s = t.mul_var(var);
                match index.get(&s) {
                    Some(&row) => entries[row][col] = Rational::one(),
                    None => {
                        let f = &by_border[&s];
                        for (u, c) in f.poly().iter().filter(|(u, _)| *u != f.marked()) {
                            entries[index[u]][col] = -c;
                        }
                    }
                }
            }
            MultiplicationMatrix { variable: var, entries }
        })
        .collect())
}

/// True iff the multiplication matrices of the prebasis `g` commute pairwise,
/// i.e. `g` is the `o`-border basis of the ideal it generates.
pub fn is_border_basis(g: &[MarkedPolynomial], o: &OrderIdeal) -> Result<bool> {
    let m = multiplication_matrices(g, o)?;
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            if m[i].mul(&m[j]) != m[j].mul(&m[i]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of certifying a computed border basis against its input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// Marked terms are exactly the border, tails lie in `O`.
    pub prebasis: bool,
    pub commuting: bool,
    /// Every basis polynomial reduces to zero modulo a DegLex Gröbner basis
    /// of the input.
    pub in_ideal: bool,
    /// `|O|` equals the dimension of the quotient ring.
    pub dimension: Option<usize>,
    pub order_ideal_size: usize,
}

impl Certificate {
    pub fn is_valid(&self) -> bool {
        self.prebasis && self.commuting && self.in_ideal && self.dimension == Some(self.order_ideal_size)
    }
}

/// Certifies that `basis` is the `o`-border basis of the ideal generated by
/// `input`.
pub fn certify(input: &[Polynomial], basis: &[MarkedPolynomial], o: &OrderIdeal) -> Certificate {
    let nvars = o.nvars();
    let ord = TermOrdering::deglex(nvars);
    let (prebasis, commuting) = match is_border_basis(basis, o) {
        Ok(c) => (true, c),
        Err(_) => (false, false),
    };
    let gb = buchberger(input, &ord);
    let in_ideal = basis
        .iter()
        .all(|g| normal_form(g.poly(), &gb, &ord).is_zero());
    let dimension = sigma_quotient_basis(&gb, &ord).ok().map(|q| q.len());
    Certificate {
        prebasis,
        commuting,
        in_ideal,
        dimension,
        order_ideal_size: o.len(),
    }
}
