//! Ring inference and evaluation of parsed expressions.
//!
//! The target ring is inferred from the generators that occur: any cylinder
//! generator selects the rank-2 ring (and requires an explicit geometry);
//! `y` generators select the split rank-1 ring; `x` generators and class
//! literals select the non-split rank-1 ring; bare integers stay integers.
//! Mixing cylinder with line generators, or `y` generators with class
//! literals, is a type error.

use std::fmt;

use weylk0::cylinder::{cyl_mul, CylClass, CylGeometry, PathProfile};
use weylk0::line::{mul_interval, word_from_class, IntervalClass, LineGen};
use weylk0::ring::RingElement;
use weylk0::split::{mul_split, word_from_split_class, SplitClass, SplitGen};
use weylk0::Rational;

use crate::parser::{Expr, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalError(pub String);

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for EvalError {}

fn err<T>(msg: impl Into<String>) -> Result<T, EvalError> {
    Err(EvalError(msg.into()))
}

/// Result of evaluating an expression in its inferred ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    Line(RingElement<IntervalClass>),
    Split(RingElement<SplitClass>),
    Cyl(RingElement<CylClass>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    Int,
    Line,
    Split,
    Cyl,
}

fn scan(e: &Expr, has_x: &mut bool, has_y: &mut bool, has_class: &mut bool, has_cyl: &mut bool) {
    match e {
        Expr::Int(_) => {}
        Expr::LineX(..) => *has_x = true,
        Expr::LineY(..) => *has_y = true,
        Expr::Class(..) => *has_class = true,
        Expr::Gamma(..) | Expr::Path(..) => *has_cyl = true,
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            scan(a, has_x, has_y, has_class, has_cyl);
            scan(b, has_x, has_y, has_class, has_cyl);
        }
        Expr::Pow(a, _) => scan(a, has_x, has_y, has_class, has_cyl),
    }
}

fn infer_target(e: &Expr) -> Result<Target, EvalError> {
    let (mut has_x, mut has_y, mut has_class, mut has_cyl) = (false, false, false, false);
    scan(e, &mut has_x, &mut has_y, &mut has_class, &mut has_cyl);
    if has_cyl && (has_x || has_y || has_class) {
        return err("cannot mix cylinder generators with line generators in one expression");
    }
    if has_y && has_class {
        return err("interval class literals M[...] live in the non-split ring and cannot meet y generators");
    }
    Ok(if has_cyl {
        Target::Cyl
    } else if has_y {
        Target::Split
    } else if has_x || has_class {
        Target::Line
    } else {
        Target::Int
    })
}

/// Evaluate an expression; cylinder expressions need the geometry.
pub fn eval(e: &Expr, geom: Option<CylGeometry>) -> Result<Value, EvalError> {
    match infer_target(e)? {
        Target::Int => Ok(Value::Int(eval_int(e)?)),
        Target::Line => Ok(Value::Line(eval_in(e, &line_ops())?)),
        Target::Split => Ok(Value::Split(eval_in(e, &split_ops())?)),
        Target::Cyl => {
            let geom = match geom {
                Some(g) => g,
                None => return err("cylinder expressions need --m and --n"),
            };
            Ok(Value::Cyl(eval_in(e, &cyl_ops(geom))?))
        }
    }
}

fn eval_int(e: &Expr) -> Result<i64, EvalError> {
    Ok(match e {
        Expr::Int(n) => *n,
        Expr::Add(a, b) => eval_int(a)? + eval_int(b)?,
        Expr::Sub(a, b) => eval_int(a)? - eval_int(b)?,
        Expr::Mul(a, b) => eval_int(a)? * eval_int(b)?,
        Expr::Pow(a, n) => eval_int(a)?.pow(*n),
        _ => unreachable!("integer target has no generators"),
    })
}

/// The three ring evaluators share one shape: a unit, an atom embedding,
/// and a label multiplication rule.
struct RingOps<L: Ord + Clone> {
    unit: RingElement<L>,
    atom: Box<dyn Fn(&Expr) -> Result<RingElement<L>, EvalError>>,
    mul: fn(&L, &L) -> RingElement<L>,
}

fn eval_in<L: Ord + Clone>(e: &Expr, ops: &RingOps<L>) -> Result<RingElement<L>, EvalError> {
    Ok(match e {
        Expr::Int(n) => ops.unit.scaled(*n),
        Expr::Add(a, b) => eval_in(a, ops)?.add(&eval_in(b, ops)?),
        Expr::Sub(a, b) => eval_in(a, ops)?.sub(&eval_in(b, ops)?),
        Expr::Mul(a, b) => eval_in(a, ops)?.mul_with(&eval_in(b, ops)?, ops.mul),
        Expr::Pow(a, n) => {
            let base = eval_in(a, ops)?;
            let mut acc = ops.unit.clone();
            for _ in 0..*n {
                acc = acc.mul_with(&base, ops.mul);
            }
            acc
        }
        atom => (ops.atom)(atom)?,
    })
}

fn line_ops() -> RingOps<IntervalClass> {
    RingOps {
        unit: RingElement::from_label(IntervalClass::unit()),
        atom: Box::new(|e| match e {
            Expr::LineX(Sign::Plus, k) => Ok(RingElement::from_label(weylk0::line::xplus(*k))),
            Expr::LineX(Sign::Minus, k) => Ok(RingElement::from_label(weylk0::line::xminus(*k))),
            Expr::Class(t, lo, hi) => IntervalClass::new(t.clone(), *lo, *hi)
                .map(RingElement::from_label)
                .map_err(|e| EvalError(e.to_string())),
            _ => err("generator not available in the non-split ring"),
        }),
        mul: mul_interval,
    }
}

fn split_ops() -> RingOps<SplitClass> {
    RingOps {
        unit: RingElement::from_label(SplitClass::unit()),
        atom: Box::new(|e| match e {
            Expr::LineX(Sign::Plus, k) => Ok(RingElement::from_label(weylk0::split::xplus_class(*k))),
            Expr::LineX(Sign::Minus, k) => Ok(RingElement::from_label(weylk0::split::xminus_class(*k))),
            Expr::LineY(Sign::Plus, k) => Ok(RingElement::from_label(weylk0::split::yplus_class(*k))),
            Expr::LineY(Sign::Minus, k) => Ok(RingElement::from_label(weylk0::split::yminus_class(*k))),
            _ => err("generator not available in the split ring"),
        }),
        mul: mul_split,
    }
}

fn cyl_ops(geom: CylGeometry) -> RingOps<CylClass> {
    RingOps {
        unit: RingElement::from_label(CylClass::unit(geom)),
        atom: Box::new(move |e| match e {
            Expr::Gamma(xi) => {
                if *xi == Rational::from_integer(0) {
                    return err("g(0) is not a class: scales are nonzero");
                }
                CylClass::gamma(geom, *xi).map(RingElement::from_label).map_err(|e| EvalError(e.to_string()))
            }
            Expr::Path(sign, heights) => {
                let p = PathProfile::new(geom, heights.clone()).map_err(|e| EvalError(e.to_string()))?;
                Ok(RingElement::from_label(match sign {
                    Sign::Plus => CylClass::above_path(&p),
                    Sign::Minus => CylClass::below_path(&p),
                }))
            }
            _ => err("generator not available in the cylinder ring"),
        }),
        mul: cyl_mul,
    }
}

/// Canonical printed value: the basis expansion in the inferred ring.
pub fn print_value(v: &Value) -> String {
    match v {
        Value::Int(n) => n.to_string(),
        Value::Line(e) => e.to_string(),
        Value::Split(e) => e.to_string(),
        Value::Cyl(e) => e.to_string(),
    }
}

fn print_line_word(word: &[(LineGen, u32)]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    word.iter()
        .map(|(g, m)| if *m == 1 { g.to_string() } else { format!("{g}^{m}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn print_split_word(word: &[(SplitGen, u32)]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    word.iter()
        .map(|(g, m)| if *m == 1 { g.to_string() } else { format!("{g}^{m}") })
        .collect::<Vec<_>>()
        .join("*")
}

/// Normalized printed value: for the rank-1 rings every basis class is
/// rendered as its canonical generator word; the cylinder ring's canonical
/// form is its basis expansion already.
pub fn print_normalized(v: &Value) -> String {
    fn join<L, F>(e: &RingElement<L>, to_word: F) -> String
    where
        L: Ord + Clone,
        F: Fn(&L) -> String,
    {
        if e.is_zero() {
            return "0".to_string();
        }
        e.terms()
            .enumerate()
            .map(|(i, (l, c))| {
                let lead = if i == 0 {
                    if c < 0 { "-".to_string() } else { String::new() }
                } else if c < 0 {
                    " - ".to_string()
                } else {
                    " + ".to_string()
                };
                format!("{lead}{}*{}", c.unsigned_abs(), to_word(l))
            })
            .collect()
    }
    match v {
        Value::Int(n) => n.to_string(),
        Value::Line(e) => join(e, |c| print_line_word(&word_from_class(c))),
        Value::Split(e) => join(e, |c| print_split_word(&word_from_split_class(c))),
        Value::Cyl(e) => e.to_string(),
    }
}
