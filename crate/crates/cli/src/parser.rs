//! Expression surface syntax.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := atom ('^' uint)?
//! atom     := int | 'x+(' halfint ')' | 'x-(' halfint ')'
//!           | 'y+(' halfint ')' | 'y-(' halfint ')'
//!           | 'g(' rational ')' | 'xp+[' profile ']' | 'xp-[' profile ']'
//!           | 'M[' t ';' interval ']' | '(' expr ')'
//! halfint  := int | int '/2'
//! rational := int | int '/' uint
//! profile  := halfint (',' halfint)*
//! t        := '{' (halfint ':' uint (',' halfint ':' uint)*)? '}'
//! interval := '('? ('-inf'|halfint) ',' ('inf'|halfint) ')'?
//! ```
//!
//! Whitespace between tokens is ignored. The printer emits canonical text
//! that re-parses to a structurally identical tree.

use std::fmt;

use weylk0::halfint::{ExtHalfInt, HalfInt};
use weylk0::roots::RootMultiset;
use weylk0::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    /// `x+(k)` / `x-(k)`: rank-1 generators (both presentations).
    LineX(Sign, HalfInt),
    /// `y+(k)` / `y-(k)`: the split-only generators.
    LineY(Sign, HalfInt),
    /// `g(xi)`: scale generator of the cylinder ring.
    Gamma(Rational),
    /// `xp+[p0,...]` / `xp-[...]`: path generators of the cylinder ring.
    Path(Sign, Vec<HalfInt>),
    /// `M[t;(lo,hi)]`: an interval basis class literal.
    Class(RootMultiset, ExtHalfInt, ExtHalfInt),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    end: usize,
}

fn lex(text: &str) -> Result<Lexer, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            let n: i64 = text[start..i].parse().map_err(|_| ParseError {
                offset: start,
                message: "integer literal out of range".into(),
            })?;
            toks.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_alphabetic() {
                i += 1;
            }
            toks.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/^()[]{},:;".contains(c) {
            toks.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError { offset: i, message: format!("unexpected character '{c}'") });
        }
    }
    Ok(Lexer { toks, end: text.len() })
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: self.offset(), message: message.into() })
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Sym(s)) if *s == c => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(format!("expected '{c}'")),
        }
    }

    fn expect_int(&mut self) -> Result<i64, ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => self.err("expected an integer"),
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(s)) if *s == c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    // halfint := ['-'] int ['/2']
    fn halfint(&mut self) -> Result<HalfInt, ParseError> {
        let neg = self.eat_sym('-');
        let n = self.expect_int()?;
        let val = if self.eat_sym('/') {
            let at = self.offset();
            let d = self.expect_int()?;
            if d != 2 {
                return Err(ParseError { offset: at, message: "half-integer denominator must be 2".into() });
            }
            HalfInt::from_twice(n)
        } else {
            HalfInt::from_int(n)
        };
        Ok(if neg { -val } else { val })
    }

    fn proper_halfint(&mut self, what: &str) -> Result<HalfInt, ParseError> {
        let at = self.offset();
        let k = self.halfint()?;
        if !k.is_proper() {
            return Err(ParseError {
                offset: at,
                message: format!("{what} must be a half-integer with odd numerator, got {k}"),
            });
        }
        Ok(k)
    }

    // rational := ['-'] int ['/' uint]
    fn rational(&mut self) -> Result<Rational, ParseError> {
        let neg = self.eat_sym('-');
        let n = self.expect_int()? as i128;
        let mut val = if self.eat_sym('/') {
            let at = self.offset();
            let d = self.expect_int()?;
            if d <= 0 {
                return Err(ParseError { offset: at, message: "denominator must be positive".into() });
            }
            Rational::new(n, d as i128)
        } else {
            Rational::from_integer(n)
        };
        if neg {
            val = -val;
        }
        Ok(val)
    }

    // bound := '-inf' | 'inf' | halfint (sign already consumed decides -inf)
    fn interval_bound(&mut self) -> Result<ExtHalfInt, ParseError> {
        if matches!(self.peek(), Some(Tok::Ident(id)) if id == "inf") {
            self.pos += 1;
            return Ok(ExtHalfInt::PosInf);
        }
        if matches!(self.peek(), Some(Tok::Sym('-'))) {
            if let Some((_, Tok::Ident(id))) = self.toks.get(self.pos + 1) {
                if id == "inf" {
                    self.pos += 2;
                    return Ok(ExtHalfInt::NegInf);
                }
            }
        }
        Ok(ExtHalfInt::Fin(self.halfint()?))
    }

    // t := '{' (halfint ':' uint)? (',' halfint ':' uint)* '}'
    fn parameter(&mut self) -> Result<RootMultiset, ParseError> {
        self.expect_sym('{')?;
        let mut t = RootMultiset::one();
        if !self.eat_sym('}') {
            loop {
                let at = self.offset();
                let root = self.proper_halfint("parameter root")?;
                self.expect_sym(':')?;
                let mult_at = self.offset();
                let mult = self.expect_int()?;
                if mult <= 0 {
                    return Err(ParseError { offset: mult_at, message: "multiplicity must be positive".into() });
                }
                t.insert(root, mult as u32).map_err(|e| ParseError { offset: at, message: e.to_string() })?;
                if self.eat_sym('}') {
                    break;
                }
                self.expect_sym(',')?;
            }
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(_)) => Ok(Expr::Int(self.expect_int()?)),
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                match id.as_str() {
                    "x" | "y" => {
                        let sign = self.sign()?;
                        self.expect_sym('(')?;
                        let k = self.proper_halfint("generator index")?;
                        self.expect_sym(')')?;
                        Ok(if id == "x" { Expr::LineX(sign, k) } else { Expr::LineY(sign, k) })
                    }
                    "g" => {
                        self.expect_sym('(')?;
                        let xi = self.rational()?;
                        self.expect_sym(')')?;
                        Ok(Expr::Gamma(xi))
                    }
                    "xp" => {
                        let sign = self.sign()?;
                        self.expect_sym('[')?;
                        let mut heights = vec![self.proper_halfint("path height")?];
                        while self.eat_sym(',') {
                            heights.push(self.proper_halfint("path height")?);
                        }
                        self.expect_sym(']')?;
                        Ok(Expr::Path(sign, heights))
                    }
                    "M" => {
                        self.expect_sym('[')?;
                        let t = self.parameter()?;
                        self.expect_sym(';')?;
                        let parens = self.eat_sym('(');
                        let lo = self.interval_bound()?;
                        self.expect_sym(',')?;
                        let hi = self.interval_bound()?;
                        if parens {
                            self.expect_sym(')')?;
                        }
                        self.expect_sym(']')?;
                        Ok(Expr::Class(t, lo, hi))
                    }
                    other => {
                        self.pos -= 1;
                        self.err(format!("unknown name '{other}'"))
                    }
                }
            }
            _ => self.err("expected an atom"),
        }
    }

    fn sign(&mut self) -> Result<Sign, ParseError> {
        if self.eat_sym('+') {
            Ok(Sign::Plus)
        } else if self.eat_sym('-') {
            Ok(Sign::Minus)
        } else {
            self.err("expected '+' or '-'")
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat_sym('^') {
            let at = self.offset();
            let e = self.expect_int()?;
            if e < 0 {
                return Err(ParseError { offset: at, message: "exponent must be nonnegative".into() });
            }
            Ok(Expr::Pow(Box::new(base), e as u32))
        } else {
            Ok(base)
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        while self.eat_sym('*') {
            let rhs = self.factor()?;
            acc = Expr::Mul(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_sym('+') {
                let rhs = self.term()?;
                acc = Expr::Add(Box::new(acc), Box::new(rhs));
            } else if self.eat_sym('-') {
                let rhs = self.term()?;
                acc = Expr::Sub(Box::new(acc), Box::new(rhs));
            } else {
                break;
            }
        }
        Ok(acc)
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let lexer = lex(text)?;
    let mut p = Parser { toks: lexer.toks, pos: 0, end: lexer.end };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parse a parameter literal `{1/2:1,5/2:2}` on its own.
pub fn parse_parameter(text: &str) -> Result<RootMultiset, ParseError> {
    let lexer = lex(text)?;
    let mut p = Parser { toks: lexer.toks, pos: 0, end: lexer.end };
    let t = p.parameter()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(t)
}

// Precedence levels for the printer.
fn level(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) => 2,
        Expr::Pow(..) => 3,
        _ => 4,
    }
}

fn write_at(e: &Expr, min_level: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let l = level(e);
    if l < min_level {
        write!(f, "(")?;
        write_at(e, 0, f)?;
        return write!(f, ")");
    }
    match e {
        Expr::Int(n) => write!(f, "{n}"),
        Expr::LineX(s, k) => write!(f, "x{}({k})", sign_char(*s)),
        Expr::LineY(s, k) => write!(f, "y{}({k})", sign_char(*s)),
        Expr::Gamma(xi) => write!(f, "g({xi})"),
        Expr::Path(s, hs) => {
            write!(f, "xp{}[", sign_char(*s))?;
            for (i, h) in hs.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{h}")?;
            }
            write!(f, "]")
        }
        Expr::Class(t, lo, hi) => write!(f, "M[{t};({lo},{hi})]"),
        Expr::Add(a, b) => {
            write_at(a, 1, f)?;
            write!(f, " + ")?;
            write_at(b, 2, f)
        }
        Expr::Sub(a, b) => {
            write_at(a, 1, f)?;
            write!(f, " - ")?;
            write_at(b, 2, f)
        }
        Expr::Mul(a, b) => {
            write_at(a, 2, f)?;
            write!(f, "*")?;
            write_at(b, 3, f)
        }
        Expr::Pow(a, n) => {
            write_at(a, 4, f)?;
            write!(f, "^{n}")
        }
    }
}

fn sign_char(s: Sign) -> char {
    match s {
        Sign::Plus => '+',
        Sign::Minus => '-',
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(self, 0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn parses_products() {
        let e = parse_expr("x-(1/2)*x+(3/2)").unwrap();
        assert_eq!(
            e,
            Expr::Mul(
                Box::new(Expr::LineX(Sign::Minus, h(1))),
                Box::new(Expr::LineX(Sign::Plus, h(3)))
            )
        );
    }

    #[test]
    fn truncated_input_reports_offset() {
        let err = parse_expr("x+(").unwrap_err();
        assert_eq!(err.offset, 3);
    }

    #[test]
    fn rejects_integer_generator_index() {
        let err = parse_expr("x+(2)").unwrap_err();
        assert_eq!(err.offset, 3);
        assert!(err.message.contains("half-integer"));
    }

    #[test]
    fn parses_class_literals_both_interval_styles() {
        let a = parse_expr("M[{1/2:1,5/2:1};(1/2,5/2)]").unwrap();
        let b = parse_expr("M[{1/2:1,5/2:1};1/2,5/2]").unwrap();
        assert_eq!(a, b);
        let c = parse_expr("M[{};(-inf,inf)]").unwrap();
        assert_eq!(c, Expr::Class(RootMultiset::one(), ExtHalfInt::NegInf, ExtHalfInt::PosInf));
    }

    #[test]
    fn parses_cylinder_atoms() {
        let e = parse_expr("g(-2/3)*xp+[1/2,3/2,3/2]^2").unwrap();
        match e {
            Expr::Mul(a, b) => {
                assert_eq!(*a, Expr::Gamma(Rational::new(-2, 3)));
                assert_eq!(
                    *b,
                    Expr::Pow(Box::new(Expr::Path(Sign::Plus, vec![h(1), h(3), h(3)])), 2)
                );
            }
            other => panic!("unexpected parse {other:?}"),
        }
    }

    #[test]
    fn whitespace_is_ignored() {
        assert_eq!(parse_expr(" x+( 1/2 ) "), parse_expr("x+(1/2)"));
    }

    #[test]
    fn printer_round_trips_hand_corpus() {
        for text in [
            "x-(1/2)*x+(3/2)",
            "y+(1/2)*y-(1/2)",
            "2*x+(1/2) + 3",
            "x+(1/2)^2*x-(5/2) - (x+(1/2) + 1)^3",
            "g(2)*xp+[1/2,3/2]*xp-[1/2,1/2]",
            "M[{1/2:1};(1/2,inf)] + M[{1/2:1};(-inf,1/2)]",
            "1 - 2 - 3",
            "2^3 - (1 + 1)*4",
        ] {
            let once = parse_expr(text).unwrap();
            let printed = once.to_string();
            let twice = parse_expr(&printed).unwrap();
            assert_eq!(once, twice, "round trip through '{printed}'");
        }
    }

    fn arb_halfint() -> impl Strategy<Value = HalfInt> {
        (-9i64..=9).prop_map(|n| HalfInt::from_twice(2 * n + 1))
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0i64..50).prop_map(Expr::Int),
            (any::<bool>(), arb_halfint()).prop_map(|(p, k)| Expr::LineX(
                if p { Sign::Plus } else { Sign::Minus },
                k
            )),
            (any::<bool>(), arb_halfint()).prop_map(|(p, k)| Expr::LineY(
                if p { Sign::Plus } else { Sign::Minus },
                k
            )),
            (1i128..9, 1i128..9).prop_map(|(n, d)| Expr::Gamma(Rational::new(n, d))),
        ];
        leaf.prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                (inner, 0u32..4).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
            ]
        })
    }

    proptest! {
        #[test]
        fn printer_round_trips(e in arb_expr()) {
            let printed = e.to_string();
            let parsed = parse_expr(&printed).unwrap();
            prop_assert_eq!(parsed, e);
        }
    }
}
