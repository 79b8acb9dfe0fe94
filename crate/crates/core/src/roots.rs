//! Grading parameters as root multisets of monic polynomials. The rank-1
//! rings over the integral orbit only ever see roots in `Z + 1/2`
//! ([`RootMultiset`]); the unit-direction factor and the rank-2 consistency
//! check work with arbitrary rational roots ([`RationalRoots`]).

use std::collections::BTreeMap;
use std::fmt;

use crate::halfint::{ExtHalfInt, HalfInt};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("root {0} is not a half-integer in Z+1/2")]
    NotProper(HalfInt),
    #[error("multiplicity must be positive")]
    ZeroMultiplicity,
}

/// A monic polynomial with all roots in `Z + 1/2`, kept as the multiset of
/// its roots. The empty multiset is the constant polynomial `1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RootMultiset {
    roots: BTreeMap<HalfInt, u32>,
}

impl RootMultiset {
    pub fn one() -> Self {
        RootMultiset::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (HalfInt, u32)>>(iter: I) -> Result<Self, RootError> {
        let mut out = RootMultiset::default();
        for (root, mult) in iter {
            out.insert(root, mult)?;
        }
        Ok(out)
    }

    /// Single root `z - s` with multiplicity 1.
    pub fn linear(s: HalfInt) -> Self {
        Self::from_pairs([(s, 1)]).expect("linear factor requires a proper half-integer root")
    }

    pub fn insert(&mut self, root: HalfInt, mult: u32) -> Result<(), RootError> {
        if !root.is_proper() {
            return Err(RootError::NotProper(root));
        }
        if mult == 0 {
            return Err(RootError::ZeroMultiplicity);
        }
        *self.roots.entry(root).or_insert(0) += mult;
        Ok(())
    }

    pub fn is_one(&self) -> bool {
        self.roots.is_empty()
    }

    /// Number of distinct roots.
    pub fn distinct_count(&self) -> usize {
        self.roots.len()
    }

    /// Degree of the polynomial (roots counted with multiplicity).
    pub fn degree(&self) -> u32 {
        self.roots.values().sum()
    }

    pub fn multiplicity(&self, root: HalfInt) -> u32 {
        self.roots.get(&root).copied().unwrap_or(0)
    }

    pub fn is_root(&self, x: HalfInt) -> bool {
        self.roots.contains_key(&x)
    }

    pub fn iter(&self) -> impl Iterator<Item = (HalfInt, u32)> + '_ {
        self.roots.iter().map(|(r, m)| (*r, *m))
    }

    /// Distinct roots in ascending order.
    pub fn distinct_roots(&self) -> impl Iterator<Item = HalfInt> + '_ {
        self.roots.keys().copied()
    }

    /// Multiset sum, i.e. the product of the monic polynomials.
    pub fn product(&self, other: &Self) -> Self {
        let mut roots = self.roots.clone();
        for (r, m) in &other.roots {
            *roots.entry(*r).or_insert(0) += m;
        }
        RootMultiset { roots }
    }

    /// The ordered zero set extended with infinities on both sides:
    /// `-inf, s_1 < ... < s_l, inf`.
    pub fn zeros_hat(&self) -> Vec<ExtHalfInt> {
        let mut out = Vec::with_capacity(self.roots.len() + 2);
        out.push(ExtHalfInt::NegInf);
        out.extend(self.roots.keys().map(|r| ExtHalfInt::Fin(*r)));
        out.push(ExtHalfInt::PosInf);
        out
    }

    /// Evaluate the polynomial at a point whose distance to every root is an
    /// integer (in this crate: at `k +- 1/2` for integer weights `k`).
    pub fn eval(&self, x: HalfInt) -> i128 {
        let mut acc: i128 = 1;
        for (r, m) in &self.roots {
            let d = (x - *r).as_integer().expect("evaluation point must differ from roots by integers") as i128;
            for _ in 0..*m {
                acc *= d;
            }
        }
        acc
    }
}

impl fmt::Display for RootMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (r, m)) in self.roots.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}:{m}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for RootMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A monic polynomial with arbitrary rational roots, as a root multiset.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RationalRoots {
    roots: BTreeMap<Rational, u32>,
}

impl RationalRoots {
    pub fn one() -> Self {
        RationalRoots::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (Rational, u32)>>(iter: I) -> Self {
        let mut roots: BTreeMap<Rational, u32> = BTreeMap::new();
        for (r, m) in iter {
            if m > 0 {
                *roots.entry(r).or_insert(0) += m;
            }
        }
        RationalRoots { roots }
    }

    pub fn insert(&mut self, root: Rational, mult: u32) {
        if mult > 0 {
            *self.roots.entry(root).or_insert(0) += mult;
        }
    }

    pub fn is_one(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.roots.values().sum()
    }

    pub fn multiplicity(&self, root: &Rational) -> u32 {
        self.roots.get(root).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Rational, u32)> + '_ {
        self.roots.iter().map(|(r, m)| (*r, *m))
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut roots = self.roots.clone();
        for (r, m) in &other.roots {
            *roots.entry(*r).or_insert(0) += m;
        }
        RationalRoots { roots }
    }

    /// Root multiset of the shifted polynomial `t(z - delta)`: every root
    /// moves by `+delta`.
    pub fn shifted(&self, delta: Rational) -> Self {
        RationalRoots {
            roots: self.roots.iter().map(|(r, m)| (*r + delta, *m)).collect(),
        }
    }
}

impl fmt::Display for RationalRoots {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (r, m)) in self.roots.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}:{m}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for RationalRoots {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
