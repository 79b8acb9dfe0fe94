//! Half-integers stored exactly as twice their value, and their extension by
//! `-inf` / `inf`. These index everything in the rank-1 rings: roots of the
//! grading parameter, interval endpoints, and directed marks.

use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A number in `(1/2)Z`, stored as `twice` so that arithmetic stays in `i64`.
///
/// "Proper" half-integers (odd `twice`) are the elements of `Z + 1/2`; even
/// `twice` means the value is an ordinary integer.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    /// `k + 1/2` for integer `k`.
    pub const fn int_plus_half(k: i64) -> Self {
        HalfInt { twice: 2 * k + 1 }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    /// True for elements of `Z + 1/2`.
    pub const fn is_proper(self) -> bool {
        self.twice % 2 != 0
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub const fn as_integer(self) -> Option<i64> {
        if self.twice % 2 == 0 {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    pub const fn plus_half(self) -> Self {
        HalfInt { twice: self.twice + 1 }
    }

    pub const fn minus_half(self) -> Self {
        HalfInt { twice: self.twice - 1 }
    }

    pub fn floor(self) -> i64 {
        self.twice.div_euclid(2)
    }

    pub fn ceil(self) -> i64 {
        (self.twice + 1).div_euclid(2)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + rhs.twice }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - rhs.twice }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::from_int(n)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `HalfInt` extended with infinities on both sides; the derived order is
/// `NegInf < Fin(_) < PosInf`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtHalfInt {
    NegInf,
    Fin(HalfInt),
    PosInf,
}

impl ExtHalfInt {
    pub fn finite(self) -> Option<HalfInt> {
        match self {
            ExtHalfInt::Fin(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtHalfInt::Fin(_))
    }

    /// Compare against a finite value without wrapping it first.
    pub fn lt_fin(self, x: HalfInt) -> bool {
        self < ExtHalfInt::Fin(x)
    }

    pub fn gt_fin(self, x: HalfInt) -> bool {
        self > ExtHalfInt::Fin(x)
    }
}

impl From<HalfInt> for ExtHalfInt {
    fn from(x: HalfInt) -> Self {
        ExtHalfInt::Fin(x)
    }
}

impl fmt::Display for ExtHalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtHalfInt::NegInf => write!(f, "-inf"),
            ExtHalfInt::Fin(x) => write!(f, "{x}"),
            ExtHalfInt::PosInf => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for ExtHalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proper_and_integer() {
        assert!(HalfInt::from_twice(1).is_proper());
        assert!(HalfInt::from_twice(-3).is_proper());
        assert!(HalfInt::from_int(2).is_integer());
        assert_eq!(HalfInt::from_int(2).as_integer(), Some(2));
        assert_eq!(HalfInt::from_twice(5).as_integer(), None);
    }

    #[test]
    fn display_forms() {
        assert_eq!(HalfInt::from_twice(3).to_string(), "3/2");
        assert_eq!(HalfInt::from_twice(-1).to_string(), "-1/2");
        assert_eq!(HalfInt::from_int(4).to_string(), "4");
        assert_eq!(ExtHalfInt::NegInf.to_string(), "-inf");
        assert_eq!(ExtHalfInt::PosInf.to_string(), "inf");
    }

    #[test]
    fn extended_order() {
        let a = ExtHalfInt::NegInf;
        let b = ExtHalfInt::Fin(HalfInt::from_twice(-99));
        let c = ExtHalfInt::Fin(HalfInt::from_twice(7));
        let d = ExtHalfInt::PosInf;
        assert!(a < b && b < c && c < d);
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(HalfInt::from_twice(3).floor(), 1);
        assert_eq!(HalfInt::from_twice(3).ceil(), 2);
        assert_eq!(HalfInt::from_twice(-3).floor(), -2);
        assert_eq!(HalfInt::from_twice(-3).ceil(), -1);
        assert_eq!(HalfInt::from_int(5).floor(), 5);
        assert_eq!(HalfInt::from_int(5).ceil(), 5);
    }
}
