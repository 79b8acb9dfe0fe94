//! Exact arithmetic in the Grothendieck rings of weight-module categories
//! over (twisted) generalized Weyl algebras with polynomial base ring and
//! shift automorphisms, over the integral orbit:
//!
//! - [`line`]: the rank-1 ring — interval-labeled simple classes, the
//!   intersection multiplication rule, the `x+/x-` presentation, and the
//!   unit-direction tensor factor for general rational parameters;
//! - [`split`]: its split variant — directed subsets, admissibility,
//!   indecomposable classes, the `x/y` presentation, and the surjection
//!   onto the non-split ring;
//! - [`cylinder`]: the rank-2 ring — ice-rule configurations on the
//!   quotient cylinder, path chains, complement components with winding
//!   detection, and the three-case multiplication;
//! - [`modsim`]: the brute-force cross-check — explicit weight modules with
//!   exact structure constants, tensor products, directed-subset readout,
//!   and the sl2 tensor example;
//! - [`verify`]: exhaustive sweeps tying the combinatorial rules to the
//!   simulator.
//!
//! Everything is immutable after construction and safe to share across
//! threads; all arithmetic is exact (integers and rationals).

pub mod halfint;
pub mod ring;
pub mod roots;
pub mod line;
pub mod split;
pub mod cylinder;
pub mod modsim;
pub mod verify;

/// The exact scalar type used for component scales, rational roots, and the
/// sl2 matrices.
pub type Rational = num_rational::Ratio<i128>;

pub use halfint::{ExtHalfInt, HalfInt};
pub use ring::{Graded, RingElement};
pub use roots::{RationalRoots, RootMultiset};
