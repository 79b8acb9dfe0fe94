//! The rank-2 setting: edge-multiplicity configurations on the quotient
//! cylinder `R^2 / (m,n)Z`, subject to the ice rule at every vertex.
//! Configurations grade the rank-2 ring; their complement components label
//! basis classes; their edge data determines the pair of polynomial
//! parameters through the consistency equation.
//!
//! Coordinates: faces sit at integer points, vertices at half-integer
//! points. The first edge lattice holds the vertical unit segments with
//! midpoints `(a+1/2, b)` (crossed by horizontal moves, traversed by north
//! steps); the second holds the horizontal segments with midpoints
//! `(a, b+1/2)` (crossed by vertical moves, traversed by east steps).

mod components;
mod paths;
mod ring;

pub use components::{complement_components, face_component_id, Component, ComponentId};
pub use paths::{chain_decompose, enumerate_paths, path_join_meet, PathProfile};
pub use ring::{cyl_mul, eval_cyl_word, intersect_components, CylClass, CylGen, CylWord};

use std::collections::BTreeMap;
use std::fmt;

use crate::halfint::HalfInt;
use crate::ring::Graded;
use crate::roots::RationalRoots;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CylError {
    #[error("cylinder periods must be coprime positive integers, got ({0},{1})")]
    BadGeometry(i64, i64),
    #[error("edge midpoint ({s1},{s2}) is not on the {kind:?} lattice")]
    BadEdge { kind: EdgeKind, s1: HalfInt, s2: HalfInt },
    #[error("edge multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("ice rule fails at vertex ({0},{1}): in-flow {2}, out-flow {3}")]
    IceRuleViolation(HalfInt, HalfInt, u64, u64),
    #[error("geometry mismatch: ({0},{1}) vs ({2},{3})")]
    GeometryMismatch(i64, i64, i64, i64),
    #[error("invalid path profile: {0}")]
    BadProfile(String),
    #[error("config file: {0}")]
    File(String),
    #[error("component {0} does not occur in the complement")]
    UnknownComponent(String),
    #[error("xi must be zero exactly on contractible components")]
    XiMismatch,
}

/// The pair of coprime periods `(m, n)`: the quotient identifies
/// `(x, y) ~ (x + m, y + n)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CylGeometry {
    m: i64,
    n: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

impl CylGeometry {
    pub fn new(m: i64, n: i64) -> Result<Self, CylError> {
        if m <= 0 || n <= 0 || gcd(m, n) != 1 {
            return Err(CylError::BadGeometry(m, n));
        }
        Ok(CylGeometry { m, n })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// Canonical representative of a lattice point with `0 <= x < m`,
    /// shifting by multiples of `(m, n)`. Works in doubled coordinates so
    /// it serves faces, vertices, and both edge lattices.
    pub(crate) fn canonical_twice(&self, x_twice: i64, y_twice: i64) -> (i64, i64) {
        let k = x_twice.div_euclid(2 * self.m);
        (x_twice - k * 2 * self.m, y_twice - k * 2 * self.n)
    }

    pub(crate) fn canonical_face(&self, a: i64, b: i64) -> (i64, i64) {
        let k = a.div_euclid(self.m);
        (a - k * self.m, b - k * self.n)
    }
}

/// The two edge lattices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum EdgeKind {
    /// vertical segments, midpoints `(a + 1/2, b)`.
    E1,
    /// horizontal segments, midpoints `(a, b + 1/2)`.
    E2,
}

/// An ice-rule configuration: finitely many edges with positive
/// multiplicity, conserved at every vertex. Edges are stored canonically,
/// so equality is structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    geom: CylGeometry,
    e1: BTreeMap<(HalfInt, HalfInt), u32>,
    e2: BTreeMap<(HalfInt, HalfInt), u32>,
}

impl Configuration {
    pub fn zero(geom: CylGeometry) -> Self {
        Configuration { geom, e1: BTreeMap::new(), e2: BTreeMap::new() }
    }

    /// Validate and canonicalize raw edge data; duplicate mentions of one
    /// edge accumulate. Rejects off-lattice midpoints and ice-rule
    /// violations (reporting the offending vertex).
    pub fn from_edges<I>(geom: CylGeometry, edges: I) -> Result<Self, CylError>
    where
        I: IntoIterator<Item = (EdgeKind, HalfInt, HalfInt, u32)>,
    {
        let mut cfg = Configuration::zero(geom);
        for (kind, s1, s2, mult) in edges {
            if mult == 0 {
                return Err(CylError::ZeroMultiplicity);
            }
            let on_lattice = match kind {
                EdgeKind::E1 => s1.is_proper() && s2.is_integer(),
                EdgeKind::E2 => s1.is_integer() && s2.is_proper(),
            };
            if !on_lattice {
                return Err(CylError::BadEdge { kind, s1, s2 });
            }
            let (x, y) = geom.canonical_twice(s1.twice(), s2.twice());
            let key = (HalfInt::from_twice(x), HalfInt::from_twice(y));
            let map = match kind {
                EdgeKind::E1 => &mut cfg.e1,
                EdgeKind::E2 => &mut cfg.e2,
            };
            *map.entry(key).or_insert(0) += mult;
        }
        cfg.check_ice_rule()?;
        Ok(cfg)
    }

    fn check_ice_rule(&self) -> Result<(), CylError> {
        let mut vertices: Vec<(HalfInt, HalfInt)> = Vec::new();
        for (s1, s2) in self.e1.keys() {
            vertices.push((*s1, s2.minus_half()));
            vertices.push((*s1, s2.plus_half()));
        }
        for (s1, s2) in self.e2.keys() {
            vertices.push((s1.minus_half(), *s2));
            vertices.push((s1.plus_half(), *s2));
        }
        for v in &mut vertices {
            let (x, y) = self.geom.canonical_twice(v.0.twice(), v.1.twice());
            *v = (HalfInt::from_twice(x), HalfInt::from_twice(y));
        }
        vertices.sort();
        vertices.dedup();
        for (x, y) in vertices {
            let west = self.e2_mult(x.minus_half(), y) as u64;
            let south = self.e1_mult(x, y.minus_half()) as u64;
            let east = self.e2_mult(x.plus_half(), y) as u64;
            let north = self.e1_mult(x, y.plus_half()) as u64;
            if west + south != east + north {
                return Err(CylError::IceRuleViolation(x, y, west + south, east + north));
            }
        }
        Ok(())
    }

    pub fn geom(&self) -> CylGeometry {
        self.geom
    }

    pub fn is_zero(&self) -> bool {
        self.e1.is_empty() && self.e2.is_empty()
    }

    pub fn e1_mult(&self, s1: HalfInt, s2: HalfInt) -> u32 {
        let (x, y) = self.geom.canonical_twice(s1.twice(), s2.twice());
        self.e1.get(&(HalfInt::from_twice(x), HalfInt::from_twice(y))).copied().unwrap_or(0)
    }

    pub fn e2_mult(&self, s1: HalfInt, s2: HalfInt) -> u32 {
        let (x, y) = self.geom.canonical_twice(s1.twice(), s2.twice());
        self.e2.get(&(HalfInt::from_twice(x), HalfInt::from_twice(y))).copied().unwrap_or(0)
    }

    pub fn iter_e1(&self) -> impl Iterator<Item = ((HalfInt, HalfInt), u32)> + '_ {
        self.e1.iter().map(|(k, v)| (*k, *v))
    }

    pub fn iter_e2(&self) -> impl Iterator<Item = ((HalfInt, HalfInt), u32)> + '_ {
        self.e2.iter().map(|(k, v)| (*k, *v))
    }

    pub fn edge_count(&self) -> usize {
        self.e1.len() + self.e2.len()
    }

    /// Sum of configurations (valid whenever both inputs are: the ice rule
    /// is linear).
    pub fn add(&self, other: &Configuration) -> Configuration {
        assert_eq!(self.geom, other.geom, "configuration sum requires one geometry");
        let mut out = self.clone();
        for (k, v) in &other.e1 {
            *out.e1.entry(*k).or_insert(0) += v;
        }
        for (k, v) in &other.e2 {
            *out.e2.entry(*k).or_insert(0) += v;
        }
        out
    }

    /// Integer row range `[lo, hi]` covering the support's y-extent, if any.
    pub fn support_rows(&self) -> Option<(i64, i64)> {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for (_, s2) in self.e1.keys().chain(self.e2.keys()) {
            lo = lo.min(s2.floor());
            hi = hi.max(s2.ceil());
        }
        if lo > hi {
            None
        } else {
            Some((lo, hi))
        }
    }

    /// The pair of parameters attached to the configuration: an edge at
    /// `(s1, s2)` with multiplicity `w` contributes the root
    /// `s2 * m - s1 * n` with multiplicity `w` to the parameter of its
    /// lattice.
    pub fn to_t(&self) -> (RationalRoots, RationalRoots) {
        let root = |s1: HalfInt, s2: HalfInt| {
            Rational::new(
                (s2.twice() as i128) * self.geom.m as i128 - (s1.twice() as i128) * self.geom.n as i128,
                2,
            )
        };
        let t1 = RationalRoots::from_pairs(self.e1.iter().map(|((s1, s2), w)| (root(*s1, *s2), *w)));
        let t2 = RationalRoots::from_pairs(self.e2.iter().map(|((s1, s2), w)| (root(*s1, *s2), *w)));
        (t1, t2)
    }

    /// Parse the configuration file format: a header `m n`, then lines
    /// `H a b k` (first-lattice edge with midpoint `(a+1/2, b)`) and
    /// `V a b k` (second-lattice edge with midpoint `(a, b+1/2)`).
    pub fn parse(text: &str) -> Result<Configuration, CylError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| CylError::File("empty file".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(CylError::File(format!("header must be 'm n', got '{header}'")));
        }
        let m: i64 = parts[0].parse().map_err(|_| CylError::File(format!("bad m '{}'", parts[0])))?;
        let n: i64 = parts[1].parse().map_err(|_| CylError::File(format!("bad n '{}'", parts[1])))?;
        let geom = CylGeometry::new(m, n)?;
        let mut edges = Vec::new();
        for (idx, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 {
                return Err(CylError::File(format!("line {}: expected 'H|V a b k'", idx + 1)));
            }
            let parse_i = |s: &str| -> Result<i64, CylError> {
                s.parse().map_err(|_| CylError::File(format!("line {}: bad integer '{s}'", idx + 1)))
            };
            let a = parse_i(parts[1])?;
            let b = parse_i(parts[2])?;
            let k = parse_i(parts[3])?;
            if k <= 0 {
                return Err(CylError::File(format!("line {}: multiplicity must be positive", idx + 1)));
            }
            match parts[0] {
                "H" => edges.push((EdgeKind::E1, HalfInt::int_plus_half(a), HalfInt::from_int(b), k as u32)),
                "V" => edges.push((EdgeKind::E2, HalfInt::from_int(a), HalfInt::int_plus_half(b), k as u32)),
                other => return Err(CylError::File(format!("line {}: unknown edge kind '{other}'", idx + 1))),
            }
        }
        Configuration::from_edges(geom, edges)
    }
}

impl Graded for Configuration {
    type Grade = Configuration;

    fn grade(&self) -> Configuration {
        self.clone()
    }

    fn mul_grade(a: &Configuration, b: &Configuration) -> Configuration {
        a.add(b)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for ((s1, s2), w) in &self.e1 {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "H({},{}):{w}", s1.floor(), s2)?;
        }
        for ((s1, s2), w) in &self.e2 {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "V({},{}):{w}", s1, s2.floor())?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The consistency equation for the pair `(t1, t2)` under the half-shifts
/// `z -> z + n/2` (first) and `z -> z - m/2` (second): as root multisets,
/// shifting `t2` down by `n/2` and `t1` up by `m/2` must equal shifting
/// `t2` up by `n/2` and `t1` down by `m/2`.
pub fn consistency_check(geom: CylGeometry, t1: &RationalRoots, t2: &RationalRoots) -> bool {
    let half_m = Rational::new(geom.m as i128, 2);
    let half_n = Rational::new(geom.n as i128, 2);
    let lhs = t2.shifted(-half_n).product(&t1.shifted(half_m));
    let rhs = t2.shifted(half_n).product(&t1.shifted(-half_m));
    lhs == rhs
}
