//! Formal integer linear combinations of basis labels, with multiplication
//! delegated to a pluggable rule on labels. This is the shared skeleton of
//! every concrete Grothendieck ring in this crate: a ring element is a
//! finitely supported map `label -> nonzero coefficient`, kept canonical
//! (sorted by the label order, zero coefficients dropped), so structural
//! equality decides ring equality.

use std::collections::BTreeMap;
use std::fmt;

/// Labels with a grade living in some commutative monoid. Concrete rings use
/// this to state (and test) the grading law: every term of a product of
/// homogeneous elements is graded by the product of the grades.
pub trait Graded {
    type Grade: Ord + Clone + fmt::Debug;

    fn grade(&self) -> Self::Grade;

    fn mul_grade(a: &Self::Grade, b: &Self::Grade) -> Self::Grade;
}

/// A finitely supported integer combination of basis labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElement<L: Ord + Clone> {
    terms: BTreeMap<L, i64>,
}

impl<L: Ord + Clone> RingElement<L> {
    pub fn zero() -> Self {
        RingElement { terms: BTreeMap::new() }
    }

    pub fn from_label(label: L) -> Self {
        Self::term(label, 1)
    }

    pub fn term(label: L, coeff: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(label, coeff);
        }
        RingElement { terms }
    }

    /// Canonicalizing constructor: merges duplicate labels and drops zeros.
    /// Idempotent by construction; feeding a `RingElement`'s own terms back
    /// in reproduces it exactly.
    pub fn from_terms<I: IntoIterator<Item = (L, i64)>>(iter: I) -> Self {
        let mut terms: BTreeMap<L, i64> = BTreeMap::new();
        for (label, coeff) in iter {
            let entry = terms.entry(label).or_insert(0);
            *entry += coeff;
        }
        terms.retain(|_, c| *c != 0);
        RingElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, label: &L) -> i64 {
        self.terms.get(label).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&L, i64)> {
        self.terms.iter().map(|(l, c)| (l, *c))
    }

    pub fn labels(&self) -> impl Iterator<Item = &L> {
        self.terms.keys()
    }

    /// If the element is a single label with coefficient 1, return it.
    pub fn as_single_class(&self) -> Option<&L> {
        if self.terms.len() == 1 {
            let (l, c) = self.terms.iter().next().unwrap();
            if *c == 1 {
                return Some(l);
            }
        }
        None
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (l, c) in &other.terms {
            let entry = terms.entry(l.clone()).or_insert(0);
            *entry += c;
        }
        terms.retain(|_, c| *c != 0);
        RingElement { terms }
    }

    pub fn neg(&self) -> Self {
        RingElement {
            terms: self.terms.iter().map(|(l, c)| (l.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scaled(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        RingElement {
            terms: self.terms.iter().map(|(l, c)| (l.clone(), c * k)).collect(),
        }
    }

    /// Bilinear extension of a basis multiplication rule.
    pub fn mul_with<F>(&self, other: &Self, rule: F) -> Self
    where
        F: Fn(&L, &L) -> RingElement<L>,
    {
        let mut acc: BTreeMap<L, i64> = BTreeMap::new();
        for (la, ca) in &self.terms {
            for (lb, cb) in &other.terms {
                for (l, c) in rule(la, lb).terms {
                    let entry = acc.entry(l).or_insert(0);
                    *entry += ca * cb * c;
                }
            }
        }
        acc.retain(|_, c| *c != 0);
        RingElement { terms: acc }
    }

    /// Linear extension of a label map into a (possibly different) ring.
    pub fn map_labels<M, F>(&self, f: F) -> RingElement<M>
    where
        M: Ord + Clone,
        F: Fn(&L) -> RingElement<M>,
    {
        let mut acc = RingElement::zero();
        for (l, c) in &self.terms {
            acc = acc.add(&f(l).scaled(*c));
        }
        acc
    }
}

impl<L: Ord + Clone + Graded> RingElement<L> {
    /// Check the grading law for a product of two single classes: every term
    /// of `product` is graded by `mul_grade(grade(a), grade(b))`.
    pub fn respects_grading(product: &Self, a: &L, b: &L) -> bool {
        let expected = L::mul_grade(&a.grade(), &b.grade());
        product.labels().all(|l| l.grade() == expected)
    }
}

impl<L: Ord + Clone + fmt::Display> fmt::Display for RingElement<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else if *c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", c.unsigned_abs(), l)?;
        }
        Ok(())
    }
}

impl<L: Ord + Clone + fmt::Display> fmt::Debug for RingElement<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // A toy free commutative basis on u8 labels: rule(a, b) = a, arbitrary
    // enough to exercise bilinearity bookkeeping.
    fn concat_rule(a: &u8, b: &u8) -> RingElement<u8> {
        RingElement::from_label(a.wrapping_add(*b))
    }

    #[test]
    fn additive_inverse_cancels() {
        let a = RingElement::term(7u8, 2);
        let b = RingElement::term(7u8, -2);
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn free_sum_keeps_distinct_labels() {
        let a = RingElement::from_label(1u8);
        let b = RingElement::from_label(2u8);
        let s = a.add(&b);
        assert_eq!(s.num_terms(), 2);
        assert_eq!(s.coeff(&1), 1);
        assert_eq!(s.coeff(&2), 1);
    }

    #[test]
    fn coefficients_merge() {
        let a = RingElement::from_terms([(1u8, 1), (2u8, 1)]);
        let b = RingElement::from_label(2u8);
        let s = a.add(&b);
        assert_eq!(s.coeff(&2), 2);
        assert_eq!(s.coeff(&1), 1);
    }

    #[test]
    fn bilinearity_scales_through_rule() {
        let a = RingElement::term(1u8, 2);
        let b = RingElement::term(2u8, 3);
        let p = a.mul_with(&b, concat_rule);
        assert_eq!(p, RingElement::term(3u8, 6));
    }

    #[test]
    fn display_signs() {
        let e = RingElement::from_terms([(1u8, -2), (2u8, 1)]);
        assert_eq!(e.to_string(), "-2*1 + 1*2");
        assert_eq!(RingElement::<u8>::zero().to_string(), "0");
    }

    proptest! {
        #[test]
        fn from_terms_is_idempotent(pairs in proptest::collection::vec((any::<u8>(), -5i64..=5), 0..12)) {
            let once = RingElement::from_terms(pairs.clone());
            let twice = RingElement::from_terms(once.terms().map(|(l, c)| (*l, c)));
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn add_is_assoc_comm_with_zero_identity(
            xs in proptest::collection::vec((any::<u8>(), -5i64..=5), 0..8),
            ys in proptest::collection::vec((any::<u8>(), -5i64..=5), 0..8),
            zs in proptest::collection::vec((any::<u8>(), -5i64..=5), 0..8),
        ) {
            let a = RingElement::from_terms(xs);
            let b = RingElement::from_terms(ys);
            let c = RingElement::from_terms(zs);
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.add(&RingElement::zero()), a.clone());
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn mul_distributes_over_add(
            xs in proptest::collection::vec((any::<u8>(), -3i64..=3), 0..6),
            ys in proptest::collection::vec((any::<u8>(), -3i64..=3), 0..6),
            zs in proptest::collection::vec((any::<u8>(), -3i64..=3), 0..6),
        ) {
            let a = RingElement::from_terms(xs);
            let b = RingElement::from_terms(ys);
            let c = RingElement::from_terms(zs);
            let lhs = a.mul_with(&b.add(&c), concat_rule);
            let rhs = a.mul_with(&b, concat_rule).add(&a.mul_with(&c, concat_rule));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
