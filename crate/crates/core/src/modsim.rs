//! Brute-force oracle for the rank-1 rings: explicit weight modules over a
//! truncation window, with exact integer structure constants for the raising
//! and lowering actions. Tensoring multiplies structure constants pointwise;
//! reading the vanishing pattern back recovers the directed subset, which is
//! what the combinatorial multiplication rules are checked against.
//!
//! The same machinery drives the sl2 example: matrices of `e`, `f`, `h` on a
//! tensor product of two Weyl-algebra modules, with the imaginary prefactors
//! of the embedding folded into the basis scaling so all arithmetic is
//! rational.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::halfint::{ExtHalfInt, HalfInt};
use crate::split::{Dir, DirectedSubset, Piece, SplitError};
use crate::roots::RootMultiset;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("directed subset is not admissible for the parameter")]
    Inadmissible(#[from] SplitError),
    #[error("expected a connected directed subset (or empty for the zero module)")]
    NotConnected,
    #[error("window mismatch: {0:?} vs {1:?}")]
    WindowMismatch((i64, i64), (i64, i64)),
    #[error("sl2 parameters must satisfy {0}")]
    BadSl2Parameters(&'static str),
}

/// A thin weight module truncated to an integer window. `up[k]` is the
/// coefficient of the raising action `v_k -> v_{k+1}`, `down[k]` of the
/// lowering action `v_k -> v_{k-1}`; absent keys mean zero. The defining
/// relations tie the product across each wall `k + 1/2` to the parameter
/// evaluated there: `up(k) * down(k+1) = t(k + 1/2)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExplicitModule {
    pub(crate) t: RootMultiset,
    pub(crate) window: (i64, i64),
    pub(crate) basis: BTreeSet<i64>,
    pub(crate) up: BTreeMap<i64, i128>,
    pub(crate) down: BTreeMap<i64, i128>,
}

impl ExplicitModule {
    pub fn t(&self) -> &RootMultiset {
        &self.t
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    pub fn basis(&self) -> &BTreeSet<i64> {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn up_coeff(&self, k: i64) -> i128 {
        self.up.get(&k).copied().unwrap_or(0)
    }

    pub fn down_coeff(&self, k: i64) -> i128 {
        self.down.get(&k).copied().unwrap_or(0)
    }
}

/// True when the window contains every root of `t` with two integer steps to
/// spare, which makes windowed readouts exact.
pub fn window_covers(t: &RootMultiset, window: (i64, i64)) -> bool {
    t.distinct_roots().all(|r| {
        let f = r.floor();
        f >= window.0 + 2 && f + 1 <= window.1 - 2
    })
}

/// Build the explicit module of a connected admissible directed subset.
/// Raising coefficients are normalized to 1 wherever nonzero; only the
/// vanishing pattern is classification data. An empty subset gives the zero
/// module.
pub fn build_indecomposable(
    t: &RootMultiset,
    s: &DirectedSubset,
    window: (i64, i64),
) -> Result<ExplicitModule, SimError> {
    if !s.is_admissible(t) {
        return Err(SimError::Inadmissible(SplitError::NotAdmissible(t.clone())));
    }
    if s.pieces().len() > 1 {
        return Err(SimError::NotConnected);
    }
    let mut basis = BTreeSet::new();
    let mut up = BTreeMap::new();
    let mut down = BTreeMap::new();
    if let Some(piece) = s.pieces().first() {
        for k in window.0..=window.1 {
            if piece.contains(HalfInt::from_int(k)) {
                basis.insert(k);
            }
        }
        for k in window.0..window.1 {
            if !(basis.contains(&k) && basis.contains(&(k + 1))) {
                continue;
            }
            let wall = HalfInt::int_plus_half(k);
            if t.is_root(wall) {
                match piece.marks().get(&wall) {
                    Some(Dir::R) => {
                        up.insert(k, 1);
                    }
                    Some(Dir::L) => {
                        down.insert(k + 1, 1);
                    }
                    None => unreachable!("admissible pieces mark every interior root"),
                }
            } else {
                up.insert(k, 1);
                down.insert(k + 1, t.eval(wall));
            }
        }
    }
    Ok(ExplicitModule { t: t.clone(), window, basis, up, down })
}

/// A single failed relation at a wall between two integer weights.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GwaViolation {
    pub wall: HalfInt,
    pub expected: i128,
    pub found: i128,
}

impl fmt::Display for GwaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "wall {}: expected {}, found {}", self.wall, self.expected, self.found)
    }
}

/// Verify the defining relations at every wall strictly inside the window.
/// At walls with both neighbors present the product of the two crossing
/// coefficients must equal the parameter value; at a support boundary the
/// parameter must vanish and the outward action must be zero. Truncation
/// walls at the window edge are not checked.
pub fn gwa_check(m: &ExplicitModule) -> Vec<GwaViolation> {
    let mut violations = Vec::new();
    for k in m.window.0..m.window.1 {
        let wall = HalfInt::int_plus_half(k);
        let lower = m.basis.contains(&k);
        let upper = m.basis.contains(&(k + 1));
        if !lower && !upper {
            continue;
        }
        let tval = m.t.eval(wall);
        if lower && upper {
            let found = m.up_coeff(k) * m.down_coeff(k + 1);
            if found != tval {
                violations.push(GwaViolation { wall, expected: tval, found });
            }
        } else {
            let outward = if lower { m.up_coeff(k) } else { m.down_coeff(k + 1) };
            if outward != 0 || tval != 0 {
                violations.push(GwaViolation { wall, expected: 0, found: if tval != 0 { tval } else { outward } });
            }
        }
    }
    violations
}

/// Tensor product along the diagonal action: parameters multiply, weight
/// spaces intersect, structure constants multiply.
pub fn tensor_explicit(a: &ExplicitModule, b: &ExplicitModule) -> Result<ExplicitModule, SimError> {
    if a.window != b.window {
        return Err(SimError::WindowMismatch(a.window, b.window));
    }
    let basis: BTreeSet<i64> = a.basis.intersection(&b.basis).copied().collect();
    let mut up = BTreeMap::new();
    let mut down = BTreeMap::new();
    for &k in &basis {
        if basis.contains(&(k + 1)) {
            let u = a.up_coeff(k) * b.up_coeff(k);
            if u != 0 {
                up.insert(k, u);
            }
            let d = a.down_coeff(k + 1) * b.down_coeff(k + 1);
            if d != 0 {
                down.insert(k + 1, d);
            }
        }
    }
    Ok(ExplicitModule {
        t: a.t.product(&b.t),
        window: a.window,
        basis,
        up,
        down,
    })
}

/// Reconstruct the directed subset of a thin module from its vanishing
/// pattern: support runs become pieces, walls where exactly one direction
/// acts become marks, dead walls inside a run become punctures, and runs
/// touching the window edge are read as unbounded.
pub fn readout_directed_subset(m: &ExplicitModule) -> DirectedSubset {
    let mut pieces: Vec<Piece> = Vec::new();
    let mut iter = m.basis.iter().copied().peekable();
    while let Some(start) = iter.next() {
        let mut run_end = start;
        while iter.peek() == Some(&(run_end + 1)) {
            run_end = iter.next().unwrap();
        }
        // Split the run [start, run_end] at dead interior walls.
        let mut piece_start = start;
        let mut marks: BTreeMap<HalfInt, Dir> = BTreeMap::new();
        for k in start..run_end {
            let wall = HalfInt::int_plus_half(k);
            let u = m.up_coeff(k) != 0;
            let d = m.down_coeff(k + 1) != 0;
            match (u, d) {
                (true, true) => {}
                (true, false) => {
                    marks.insert(wall, Dir::R);
                }
                (false, true) => {
                    marks.insert(wall, Dir::L);
                }
                (false, false) => {
                    pieces.push(make_piece(m.window, piece_start, k, std::mem::take(&mut marks)));
                    piece_start = k + 1;
                }
            }
        }
        pieces.push(make_piece(m.window, piece_start, run_end, marks));
    }
    DirectedSubset::from_pieces(pieces).expect("runs are disjoint by construction")
}

fn make_piece(window: (i64, i64), first: i64, last: i64, marks: BTreeMap<HalfInt, Dir>) -> Piece {
    let lo = if first == window.0 {
        ExtHalfInt::NegInf
    } else {
        ExtHalfInt::Fin(HalfInt::int_plus_half(first - 1))
    };
    let hi = if last == window.1 {
        ExtHalfInt::PosInf
    } else {
        ExtHalfInt::Fin(HalfInt::int_plus_half(last))
    };
    Piece::new(lo, hi, marks).expect("support runs bound valid pieces")
}

/// Clip a directed subset to the window the readout sees: structure outside
/// the open window is dropped and pieces reaching past the edge are read as
/// unbounded. With [`window_covers`] satisfied this is the identity.
pub fn clip_to_window(s: &DirectedSubset, window: (i64, i64)) -> DirectedSubset {
    let lo_edge = HalfInt::from_int(window.0);
    let hi_edge = HalfInt::from_int(window.1);
    let mut pieces = Vec::new();
    for p in s.pieces() {
        if !p.lo().lt_fin(hi_edge) || !p.hi().gt_fin(lo_edge) {
            continue;
        }
        let lo = if p.lo().lt_fin(lo_edge) { ExtHalfInt::NegInf } else { p.lo() };
        let hi = if p.hi().gt_fin(hi_edge) { ExtHalfInt::PosInf } else { p.hi() };
        let marks = p
            .marks()
            .iter()
            .filter(|(pos, _)| lo.lt_fin(**pos) && hi.gt_fin(**pos))
            .map(|(pos, d)| (*pos, *d))
            .collect();
        pieces.push(Piece::new(lo, hi, marks).expect("clipped piece stays valid"));
    }
    DirectedSubset::from_pieces(pieces).expect("clipping preserves order")
}

// ---------------------------------------------------------------------------
// sl2 via tensor products of Weyl-algebra modules
// ---------------------------------------------------------------------------

/// Which pair of Weyl-algebra modules to tensor: the lowest factor is always
/// the `x`-side module killed by `x`; the second is killed by the derivative
/// (`-+`, finite dimensional for positive integral `k - l`) or by `y`
/// (`--`, a truncated Verma).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sl2Factors {
    MinusPlus,
    MinusMinus,
}

impl Sl2Factors {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "-+" => Some(Sl2Factors::MinusPlus),
            "--" => Some(Sl2Factors::MinusMinus),
            _ => None,
        }
    }
}

pub type Matrix = Vec<Vec<Rational>>;

/// Matrices of `e`, `f`, `h` on the tensor basis. `truncated` marks windowed
/// infinite modules, whose last basis vector has an artificially cut raising
/// image; checks skip the affected column.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sl2Module {
    pub dim: usize,
    pub e: Matrix,
    pub f: Matrix,
    pub h: Matrix,
    /// z-weight of each basis vector (the h-eigenvalue is `2z - (k+l)`).
    pub z_weights: Vec<i64>,
    pub truncated: bool,
}

fn zero_matrix(dim: usize) -> Matrix {
    vec![vec![Rational::zero(); dim]; dim]
}

/// One tensor factor with monomial basis indexed by an exponent: the action
/// of the two Weyl generators on that basis, as `(coefficient, new exponent)`,
/// plus the z-weight of each monomial (stored twice, offset by `k` or `l`).
struct WeylFactor {
    /// multiplication by the variable (`x` or `y`).
    act_var: fn(i64) -> (i128, i64),
    /// the derivative generator.
    act_der: fn(i64) -> (i128, i64),
    weight_twice: fn(i64, i64) -> i64,
}

// Cyclic module killed by the variable, basis d^a:
// x . d^a = -a d^(a-1), d . d^a = d^(a+1), weight(d^a) = k - 1/2 - a.
const KILLED_BY_VAR: WeylFactor = WeylFactor {
    act_var: |a| (-(a as i128), a - 1),
    act_der: |a| (1, a + 1),
    weight_twice: |k_twice, a| k_twice - 1 - 2 * a,
};

// Cyclic module killed by the derivative, basis y^b:
// y . y^b = y^(b+1), d . y^b = b y^(b-1), weight(y^b) = l + 1/2 + b.
const KILLED_BY_DER: WeylFactor = WeylFactor {
    act_var: |b| (1, b + 1),
    act_der: |b| (b as i128, b - 1),
    weight_twice: |l_twice, b| l_twice + 1 + 2 * b,
};

/// Build `e`, `f`, `h` on the weight-matched tensor basis: `e` acts by the
/// variables on both slots, `f` by the derivatives. The imaginary unit of
/// the embedding is folded into an alternating basis scaling, which shows up
/// as a minus sign on every move that lowers the basis index.
pub fn sl2_build(
    k: HalfInt,
    l: HalfInt,
    factors: Sl2Factors,
    basis_cap: usize,
) -> Result<Sl2Module, SimError> {
    if !k.is_proper() || !l.is_proper() {
        return Err(SimError::BadSl2Parameters("half-integer k and l on the integral orbit"));
    }
    let diff = (k - l).as_integer().expect("difference of proper half-integers is an integer");
    match factors {
        Sl2Factors::MinusPlus => {
            if diff <= 0 {
                return Err(SimError::BadSl2Parameters("k - l a positive integer for the -+ factors"));
            }
            // Weight matching k - 1/2 - a = l + 1/2 + b gives a + b = diff - 1.
            let dim = diff as usize;
            Ok(build_from_factors(k, l, dim, false, KILLED_BY_VAR, KILLED_BY_DER, move |s| (s, diff - 1 - s)))
        }
        Sl2Factors::MinusMinus => {
            if diff < 0 {
                return Err(SimError::BadSl2Parameters("k - l a nonnegative integer for the -- factors"));
            }
            let dim = basis_cap.max(2);
            // Weight matching k - 1/2 - a = l - 1/2 - b gives a = diff + b.
            Ok(build_from_factors(k, l, dim, true, KILLED_BY_VAR, KILLED_BY_VAR, move |s| (diff + s, s)))
        }
    }
}

fn build_from_factors(
    k: HalfInt,
    l: HalfInt,
    dim: usize,
    truncated: bool,
    first: WeylFactor,
    second: WeylFactor,
    exps: impl Fn(i64) -> (i64, i64),
) -> Sl2Module {
    let mut e = zero_matrix(dim);
    let mut f = zero_matrix(dim);
    let mut h = zero_matrix(dim);
    let mut z_weights = Vec::with_capacity(dim);
    let kl = (k + l).as_integer().expect("k + l is an integer for integral parameters") as i128;

    for s in 0..dim as i64 {
        let (a, b) = exps(s);
        let zx = (first.weight_twice)(k.twice(), a);
        let zy = (second.weight_twice)(l.twice(), b);
        debug_assert_eq!(zx, zy, "tensor basis must be weight matched");
        debug_assert_eq!(zx % 2, 0, "integral-orbit weights are integers");
        let z = zx / 2;
        z_weights.push(z);
        h[s as usize][s as usize] = Rational::from_integer(2 * z as i128 - kl);

        // Both ring actions move the basis index by exactly one step; the
        // folded phase contributes a minus sign on downward moves.
        let put = |mat: &mut Matrix, coeff: i128, target_exps: (i64, i64), target: i64| {
            if coeff == 0 || target < 0 || target >= dim as i64 {
                return;
            }
            debug_assert_eq!(exps(target), target_exps, "actions move along the basis chain");
            let sign: i128 = if target < s { -1 } else { 1 };
            mat[target as usize][s as usize] = Rational::from_integer(sign * coeff);
        };

        let (cx, a2) = (first.act_var)(a);
        let (cy, b2) = (second.act_var)(b);
        put(&mut e, cx * cy, (a2, b2), s - 1);

        let (dx, a3) = (first.act_der)(a);
        let (dy, b3) = (second.act_der)(b);
        put(&mut f, dx * dy, (a3, b3), s + 1);
    }

    Sl2Module { dim, e, f, h, z_weights, truncated }
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = zero_matrix(n);
    for i in 0..n {
        for kk in 0..n {
            if a[i][kk].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[kk][j].is_zero() {
                    out[i][j] += a[i][kk] * b[kk][j];
                }
            }
        }
    }
    out
}

fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| *x - *y).collect())
        .collect()
}

fn columns_equal(a: &Matrix, b: &Matrix, cols: &[usize]) -> bool {
    cols.iter().all(|&j| a.iter().zip(b.iter()).all(|(ra, rb)| ra[j] == rb[j]))
}

/// Verification report for an sl2 module: bracket relations, the weight
/// structure, highest-weight vectors, and whether the Casimir acts as a
/// scalar (and by what).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sl2Report {
    pub dim: usize,
    pub brackets_ok: bool,
    pub weights_consistent: bool,
    pub h_spectrum: Vec<Rational>,
    /// Indices of basis vectors annihilated by `e`.
    pub highest_weight_vectors: Vec<usize>,
    /// The scalar by which the Casimir `ef + fe + h^2/2` acts, if it is
    /// scalar on the checkable columns.
    pub casimir: Option<Rational>,
}

/// Check the defining relations and the Casimir on an sl2 module. For
/// truncated modules the last column (whose raising image was cut) is
/// excluded from the `[e,f]` and Casimir checks.
pub fn sl2_verify(m: &Sl2Module, k: HalfInt, l: HalfInt) -> Sl2Report {
    let n = m.dim;
    let all: Vec<usize> = (0..n).collect();
    let interior: Vec<usize> = if m.truncated { (0..n.saturating_sub(1)).collect() } else { all.clone() };

    let ef = mat_mul(&m.e, &m.f);
    let fe = mat_mul(&m.f, &m.e);
    let he = mat_mul(&m.h, &m.e);
    let eh = mat_mul(&m.e, &m.h);
    let hf = mat_mul(&m.h, &m.f);
    let fh = mat_mul(&m.f, &m.h);

    let two_e: Matrix = m.e.iter().map(|r| r.iter().map(|x| *x * Rational::from_integer(2)).collect()).collect();
    let neg_two_f: Matrix = m.f.iter().map(|r| r.iter().map(|x| *x * Rational::from_integer(-2)).collect()).collect();

    let ef_fe = mat_sub(&ef, &fe);
    let brackets_ok = columns_equal(&ef_fe, &m.h, &interior)
        && columns_equal(&mat_sub(&he, &eh), &two_e, &all)
        && columns_equal(&mat_sub(&hf, &fh), &neg_two_f, &all);

    let kl = (k + l).as_integer().map(|v| v as i128).unwrap_or(0);
    let weights_consistent = (0..n).all(|s| {
        m.h[s][s] == Rational::from_integer(2 * m.z_weights[s] as i128 - kl)
            && (0..n).all(|r| r == s || m.h[r][s].is_zero())
    });

    let h_spectrum: Vec<Rational> = (0..n).map(|s| m.h[s][s]).collect();
    let highest_weight_vectors: Vec<usize> =
        (0..n).filter(|&s| (0..n).all(|r| m.e[r][s].is_zero())).collect();

    // Casimir = ef + fe + h^2 / 2.
    let h2 = mat_mul(&m.h, &m.h);
    let half = Rational::new(1, 2);
    let mut cas = zero_matrix(n);
    for i in 0..n {
        for j in 0..n {
            cas[i][j] = ef[i][j] + fe[i][j] + h2[i][j] * half;
        }
    }
    let casimir = interior.first().map(|&j0| cas[j0][j0]).filter(|lambda| {
        interior.iter().all(|&j| {
            (0..n).all(|i| if i == j { cas[i][j] == *lambda } else { cas[i][j].is_zero() })
        })
    });

    Sl2Report {
        dim: n,
        brackets_ok,
        weights_consistent,
        h_spectrum,
        highest_weight_vectors,
        casimir,
    }
}
