//! The rank-1 Grothendieck ring over the integral orbit: simple weight
//! modules are labeled by an interval between consecutive extended zeros of
//! the grading parameter, and tensoring intersects intervals. The generator
//! presentation (words in `x+(s)`, `x-(s)`) and the unit-direction tensor
//! factor for general rational parameters live here too.

use std::collections::BTreeSet;
use std::fmt;

use crate::halfint::{ExtHalfInt, HalfInt};
use crate::ring::{Graded, RingElement};
use crate::roots::{RationalRoots, RootMultiset};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LineError {
    #[error("invalid interval class: {0}")]
    InvalidInterval(String),
    #[error("unit-direction factor contains half-integer roots: {0}")]
    UnfactoredPair(RationalRoots),
}

/// Basis class of the rank-1 ring: parameter `t` together with an open
/// interval between consecutive elements of the extended zero set of `t`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalClass {
    t: RootMultiset,
    lo: ExtHalfInt,
    hi: ExtHalfInt,
}

impl IntervalClass {
    pub fn new(t: RootMultiset, lo: ExtHalfInt, hi: ExtHalfInt) -> Result<Self, LineError> {
        if lo >= hi {
            return Err(LineError::InvalidInterval(format!("need lo < hi, got ({lo},{hi})")));
        }
        for end in [lo, hi] {
            if let ExtHalfInt::Fin(x) = end {
                if !t.is_root(x) {
                    return Err(LineError::InvalidInterval(format!(
                        "endpoint {x} is not a zero of t={t}"
                    )));
                }
            }
        }
        if t.distinct_roots().any(|r| lo.lt_fin(r) && hi.gt_fin(r)) {
            return Err(LineError::InvalidInterval(format!(
                "interval ({lo},{hi}) contains a zero of t={t}"
            )));
        }
        Ok(IntervalClass { t, lo, hi })
    }

    /// The unit class: trivial parameter, full line.
    pub fn unit() -> Self {
        IntervalClass {
            t: RootMultiset::one(),
            lo: ExtHalfInt::NegInf,
            hi: ExtHalfInt::PosInf,
        }
    }

    pub fn t(&self) -> &RootMultiset {
        &self.t
    }

    pub fn lo(&self) -> ExtHalfInt {
        self.lo
    }

    pub fn hi(&self) -> ExtHalfInt {
        self.hi
    }
}

impl Graded for IntervalClass {
    type Grade = RootMultiset;

    fn grade(&self) -> RootMultiset {
        self.t.clone()
    }

    fn mul_grade(a: &RootMultiset, b: &RootMultiset) -> RootMultiset {
        a.product(b)
    }
}

impl fmt::Display for IntervalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M[{};({},{})]", self.t, self.lo, self.hi)
    }
}

impl fmt::Debug for IntervalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Generator class `x+(s)`: parameter `z - s`, interval `(s, inf)`.
pub fn xplus(s: HalfInt) -> IntervalClass {
    IntervalClass::new(RootMultiset::linear(s), ExtHalfInt::Fin(s), ExtHalfInt::PosInf)
        .expect("generator interval is always valid")
}

/// Generator class `x-(s)`: parameter `z - s`, interval `(-inf, s)`.
pub fn xminus(s: HalfInt) -> IntervalClass {
    IntervalClass::new(RootMultiset::linear(s), ExtHalfInt::NegInf, ExtHalfInt::Fin(s))
        .expect("generator interval is always valid")
}

/// All simple classes for a fixed parameter: consecutive pairs of the
/// extended zero set, `distinct_count + 1` of them.
pub fn enumerate_simples(t: &RootMultiset) -> Vec<IntervalClass> {
    let zs = t.zeros_hat();
    zs.windows(2)
        .map(|w| IntervalClass::new(t.clone(), w[0], w[1]).expect("consecutive zeros bound a valid class"))
        .collect()
}

/// Integer support of a simple class inside an inclusive window.
pub fn simple_support(c: &IntervalClass, window: (i64, i64)) -> BTreeSet<i64> {
    (window.0..=window.1)
        .filter(|k| {
            let x = HalfInt::from_int(*k);
            c.lo.lt_fin(x) && c.hi.gt_fin(x)
        })
        .collect()
}

/// Tensor rule on simple classes: parameters multiply, intervals intersect;
/// an empty intersection is the zero element.
pub fn mul_interval(a: &IntervalClass, b: &IntervalClass) -> RingElement<IntervalClass> {
    let lo = a.lo.max(b.lo);
    let hi = a.hi.min(b.hi);
    if lo < hi {
        let c = IntervalClass::new(a.t.product(&b.t), lo, hi)
            .expect("intersection of simple intervals is a valid class");
        RingElement::from_label(c)
    } else {
        RingElement::zero()
    }
}

/// Signed generators of the rank-1 presentation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LineGen {
    Plus(HalfInt),
    Minus(HalfInt),
}

impl fmt::Display for LineGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineGen::Plus(s) => write!(f, "x+({s})"),
            LineGen::Minus(s) => write!(f, "x-({s})"),
        }
    }
}

/// A commutative word in the generators, as (generator, exponent) pairs.
pub type LineWord = Vec<(LineGen, u32)>;

fn gen_class(g: LineGen) -> IntervalClass {
    match g {
        LineGen::Plus(s) => xplus(s),
        LineGen::Minus(s) => xminus(s),
    }
}

/// Evaluate a word to its basis expansion (a single class or zero).
pub fn class_from_word(word: &[(LineGen, u32)]) -> RingElement<IntervalClass> {
    let mut acc = RingElement::from_label(IntervalClass::unit());
    for (g, e) in word {
        let gc = RingElement::from_label(gen_class(*g));
        for _ in 0..*e {
            acc = acc.mul_with(&gc, mul_interval);
            if acc.is_zero() {
                return acc;
            }
        }
    }
    acc
}

/// The canonical word of a class: `x+` over the roots at or below the left
/// endpoint, `x-` over the roots at or above the right endpoint, with full
/// multiplicities. Inverts [`class_from_word`] on basis classes.
pub fn word_from_class(c: &IntervalClass) -> LineWord {
    let mut word = LineWord::new();
    for (r, m) in c.t.iter() {
        if !c.lo.lt_fin(r) {
            word.push((LineGen::Plus(r), m));
        } else if !c.hi.gt_fin(r) {
            word.push((LineGen::Minus(r), m));
        } else {
            unreachable!("interval class cannot contain a root of its parameter");
        }
    }
    word
}

/// Split a rational root multiset into its unit-direction part (roots off
/// `Z + 1/2`, invertible on the integral orbit) and its half-integer part.
pub fn factor_omega(t: &RationalRoots) -> (RationalRoots, RootMultiset) {
    let mut unit = RationalRoots::one();
    let mut half = RootMultiset::one();
    for (r, m) in t.iter() {
        if let Some(h) = rational_to_proper_halfint(r) {
            half.insert(h, m).expect("checked proper");
        } else {
            unit.insert(r, m);
        }
    }
    (unit, half)
}

fn rational_to_proper_halfint(r: Rational) -> Option<HalfInt> {
    if *r.denom() == 2 {
        let n = *r.numer();
        i64::try_from(n).ok().map(HalfInt::from_twice)
    } else {
        None
    }
}

/// Basis class of the full ring over mixed rational parameters: a
/// unit-direction grade times an interval class for the half-integer part.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OmegaClass {
    unit_part: RationalRoots,
    class: IntervalClass,
}

impl OmegaClass {
    pub fn new(unit_part: RationalRoots, class: IntervalClass) -> Result<Self, LineError> {
        if unit_part.iter().any(|(r, _)| rational_to_proper_halfint(r).is_some()) {
            return Err(LineError::UnfactoredPair(unit_part));
        }
        Ok(OmegaClass { unit_part, class })
    }

    pub fn unit_part(&self) -> &RationalRoots {
        &self.unit_part
    }

    pub fn class(&self) -> &IntervalClass {
        &self.class
    }
}

impl Graded for OmegaClass {
    type Grade = (RationalRoots, RootMultiset);

    fn grade(&self) -> Self::Grade {
        (self.unit_part.clone(), self.class.t().clone())
    }

    fn mul_grade(a: &Self::Grade, b: &Self::Grade) -> Self::Grade {
        (a.0.product(&b.0), a.1.product(&b.1))
    }
}

impl fmt::Display for OmegaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(x){}", self.unit_part, self.class)
    }
}

impl fmt::Debug for OmegaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Multiplication in the full ring: unit-direction grades add as multisets
/// (a semigroup ring) and never interfere with the interval factor.
pub fn full_mul(a: &OmegaClass, b: &OmegaClass) -> RingElement<OmegaClass> {
    let unit_part = a.unit_part.product(&b.unit_part);
    mul_interval(&a.class, &b.class).map_labels(|c| {
        RingElement::from_label(
            OmegaClass::new(unit_part.clone(), c.clone()).expect("product of factored parts stays factored"),
        )
    })
}
