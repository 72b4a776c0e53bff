//! Finite order ideals (sets of terms closed under divisors) and their borders.

use std::collections::BTreeSet;

use crate::polynomial::Term;

/// A finite set of terms closed under taking divisors. Iteration is in
/// lexicographic exponent order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderIdeal {
    nvars: usize,
    terms: BTreeSet<Term>,
}

impl OrderIdeal {
    pub fn empty(nvars: usize) -> Self {
        OrderIdeal {
            nvars,
            terms: BTreeSet::new(),
        }
    }

    /// Smallest order ideal containing every term of `generators`.
    pub fn divisor_closure<'a>(nvars: usize, generators: impl IntoIterator<Item = &'a Term>) -> Self {
        let mut terms = BTreeSet::new();
        // Walk down one variable at a time; stop as soon as a term is known.
        let mut stack: Vec<Term> = generators.into_iter().cloned().collect();
        while let Some(t) = stack.pop() {
            debug_assert_eq!(t.nvars(), nvars);
            if terms.contains(&t) {
                continue;
            }
            for i in 0..nvars {
                if let Some(d) = t.div_var(i) {
                    if !terms.contains(&d) {
                        stack.push(d);
                    }
                }
            }
            terms.insert(t);
        }
        OrderIdeal { nvars, terms }
    }

    /// Wraps `terms` if they are closed under divisors.
    pub fn from_terms(nvars: usize, terms: BTreeSet<Term>) -> Option<Self> {
        is_order_ideal(&terms).then_some(OrderIdeal { nvars, terms })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeSet<Term> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeSet<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.terms.contains(t)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter()
    }

    pub fn is_subset(&self, other: &OrderIdeal) -> bool {
        self.terms.is_subset(&other.terms)
    }

    /// `(x_1 O ∪ ... ∪ x_n O) \ O`, with the border of the empty ideal being `{1}`.
    pub fn border(&self) -> BTreeSet<Term> {
        if self.terms.is_empty() {
            return BTreeSet::from([Term::one(self.nvars)]);
        }
        let mut out = BTreeSet::new();
        for t in &self.terms {
            for i in 0..self.nvars {
                let b = t.mul_var(i);
                if !self.terms.contains(&b) {
                    out.insert(b);
                }
            }
        }
        out
    }

    /// `O ∪ x_1 O ∪ ... ∪ x_n O`. The empty ideal expands to itself.
    pub fn plus_expand(&self) -> OrderIdeal {
        let mut terms = self.terms.clone();
        for t in &self.terms {
            for i in 0..self.nvars {
                terms.insert(t.mul_var(i));
            }
        }
        OrderIdeal {
            nvars: self.nvars,
            terms,
        }
    }

    /// Smallest order ideal containing `self` and `extra`.
    pub fn extend<'a>(&self, extra: impl IntoIterator<Item = &'a Term>) -> OrderIdeal {
        let mut out = self.clone();
        let fresh: Vec<&Term> = extra.into_iter().filter(|t| !self.terms.contains(*t)).collect();
        if fresh.is_empty() {
            return out;
        }
        out.terms
            .extend(OrderIdeal::divisor_closure(self.nvars, fresh).terms);
        out
    }
}

/// True iff `terms` is closed under divisors.
pub fn is_order_ideal(terms: &BTreeSet<Term>) -> bool {
    terms.iter().all(|t| {
        (0..t.nvars()).all(|i| t.div_var(i).is_none_or(|d| terms.contains(&d)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(e: &[u32]) -> Term {
        Term::new(e.to_vec())
    }

    fn set(ts: &[&[u32]]) -> BTreeSet<Term> {
        ts.iter().map(|e| t(e)).collect()
    }

    #[test]
    fn closure_of_a_pure_power() {
        let o = OrderIdeal::divisor_closure(2, &[t(&[2, 0])]);
        assert_eq!(o.terms(), &set(&[&[0, 0], &[1, 0], &[2, 0]]));
    }

    #[test]
    fn closure_of_the_five_point_supports() {
        // supports of x^2 + xy - 1/2 y^2 - x - 1/2 y, y^3 - y, xy^2 - xy
        let supports = set(&[
            &[2, 0], &[1, 1], &[0, 2], &[1, 0], &[0, 1], &[0, 3], &[1, 2],
        ]);
        let o = OrderIdeal::divisor_closure(2, &supports);
        let expected = set(&[
            &[0, 0], &[1, 0], &[0, 1], &[2, 0], &[1, 1], &[0, 2], &[1, 2], &[0, 3],
        ]);
        assert_eq!(o.terms(), &expected);
    }

    #[test]
    fn closure_of_degree_four_staircase_has_fourteen_terms() {
        let gens = [t(&[0, 4]), t(&[1, 3]), t(&[2, 2]), t(&[3, 1])];
        let o = OrderIdeal::divisor_closure(2, &gens);
        // brute force: every term of degree <= 4 dividing some generator
        let mut brute = BTreeSet::new();
        for a in 0..=4u32 {
            for b in 0..=4u32 {
                let c = t(&[a, b]);
                if gens.iter().any(|g| c.divides(g)) {
                    brute.insert(c);
                }
            }
        }
        assert_eq!(brute.len(), 14);
        assert_eq!(o.terms(), &brute);
    }

    #[test]
    fn border_examples() {
        assert_eq!(OrderIdeal::empty(2).border(), set(&[&[0, 0]]));
        let o = OrderIdeal::from_terms(2, set(&[&[0, 0], &[1, 0], &[0, 1], &[2, 0], &[0, 2]])).unwrap();
        assert_eq!(
            o.border(),
            set(&[&[1, 1], &[3, 0], &[2, 1], &[1, 2], &[0, 3]])
        );
        let one = OrderIdeal::from_terms(2, set(&[&[0, 0]])).unwrap();
        assert_eq!(one.border(), set(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn is_order_ideal_examples() {
        assert!(!is_order_ideal(&set(&[
            &[0, 0], &[1, 0], &[0, 1], &[2, 0], &[0, 2], &[1, 2]
        ])));
        assert!(is_order_ideal(&set(&[&[0, 0], &[1, 0], &[0, 1], &[2, 0], &[0, 2]])));
        assert!(is_order_ideal(&BTreeSet::new()));
    }

    #[test]
    fn plus_expand_examples() {
        let one = OrderIdeal::from_terms(2, set(&[&[0, 0]])).unwrap();
        assert_eq!(one.plus_expand().terms(), &set(&[&[0, 0], &[1, 0], &[0, 1]]));

        let u = OrderIdeal::from_terms(
            2,
            set(&[&[0, 0], &[1, 0], &[0, 1], &[2, 0], &[1, 1], &[0, 2], &[1, 2], &[0, 3]]),
        )
        .unwrap();
        let expected = set(&[
            &[0, 0], &[1, 0], &[0, 1], &[2, 0], &[1, 1], &[0, 2], &[3, 0], &[2, 1], &[1, 2],
            &[0, 3], &[2, 2], &[1, 3], &[0, 4],
        ]);
        assert_eq!(u.plus_expand().terms(), &expected);
        assert!(OrderIdeal::empty(2).plus_expand().is_empty());
    }

    fn arb_terms() -> impl Strategy<Value = BTreeSet<Term>> {
        proptest::collection::btree_set(
            proptest::collection::vec(0u32..4, 3).prop_map(Term::new),
            0..6,
        )
    }

    proptest! {
        #[test]
        fn closure_is_idempotent_and_monotone(s in arb_terms(), extra in arb_terms()) {
            let c = OrderIdeal::divisor_closure(3, &s);
            prop_assert!(is_order_ideal(c.terms()));
            prop_assert_eq!(&OrderIdeal::divisor_closure(3, c.terms()), &c);
            let bigger: BTreeSet<Term> = s.union(&extra).cloned().collect();
            prop_assert!(c.is_subset(&OrderIdeal::divisor_closure(3, &bigger)));
        }

        #[test]
        fn border_is_disjoint_and_one_step_away(s in arb_terms()) {
            let o = OrderIdeal::divisor_closure(3, &s);
            prop_assume!(!o.is_empty());
            for b in o.border() {
                prop_assert!(!o.contains(&b));
                prop_assert!((0..3).any(|i| b.div_var(i).is_some_and(|d| o.contains(&d))));
            }
        }

        #[test]
        fn plus_expand_contains_and_stays_order_ideal(s in arb_terms()) {
            let o = OrderIdeal::divisor_closure(3, &s);
            let p = o.plus_expand();
            prop_assert!(o.is_subset(&p));
            prop_assert!(is_order_ideal(p.terms()));
        }
    }
}
