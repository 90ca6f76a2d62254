//! Surface syntax for class expressions.
//!
//! ```text
//! expr   := term (("+" | "-") term)* ;
//! term   := factor ("*" factor)* ;
//! factor := atom ("^" nat)? | "-" factor ;
//! atom   := "L" | nat | "P" "(" int ")" | "A" "(" nat ")"
//!         | "G" "(" nat "," nat ")" | "[X]" | "[Y]" | "(" expr ")" ;
//! ```
//!
//! Class atoms may also be written in brackets, as in `[P(6)]` or
//! `[G(2,7)]`; the brackets are dropped from the tree.
//!
//! `+`, `-` and `*` associate to the left; `^` binds tightest and only takes
//! literal exponents, so `L^-1` is rejected.

use std::fmt;

use num_bigint::{BigInt, BigUint};

use crate::classes::{affine_class, grassmannian_class, projective_class};
use crate::error::{Error, Result};
use crate::lring::{MotElem, Poly, Symbol};

/// Bound on the degree of any intermediate polynomial during evaluation.
pub const MAX_DEGREE: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ClassExpr {
    Int(BigUint),
    L,
    /// `[P^n]`, `n >= -1`.
    P(i64),
    /// `[A^n]`.
    A(u64),
    /// `[G(k,n)]`.
    G(u64, u64),
    Sym(Symbol),
    Neg(Box<ClassExpr>),
    Add(Box<ClassExpr>, Box<ClassExpr>),
    Sub(Box<ClassExpr>, Box<ClassExpr>),
    Mul(Box<ClassExpr>, Box<ClassExpr>),
    Pow(Box<ClassExpr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Nat(String),
    L,
    P,
    A,
    G,
    Sym(Symbol),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Plus,
    Minus,
    Star,
    Caret,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Nat(s) => format!("integer {s}"),
            Tok::L => "'L'".into(),
            Tok::P => "'P'".into(),
            Tok::A => "'A'".into(),
            Tok::G => "'G'".into(),
            Tok::Sym(s) => format!("'{}'", s.label()),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::Comma => "','".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
        }
    }
}

fn parse_err(position: usize, expected: impl Into<String>) -> Error {
    Error::Parse {
        position,
        expected: expected.into(),
    }
}

/// Splits `text` into tokens tagged with 1-based character positions.
fn lex(text: &str) -> Result<(Vec<(Tok, usize)>, usize)> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_ws(&mut i);
        let Some(&c) = chars.get(i) else { break };
        let pos = i + 1;
        let tok = match c {
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Nat(chars[start..i].iter().collect()), pos));
                continue;
            }
            '[' => {
                let mut j = i + 1;
                skip_ws(&mut j);
                let sym = match chars.get(j) {
                    Some('X') => Symbol::XW,
                    Some('Y') => Symbol::YW,
                    _ => {
                        out.push((Tok::LBracket, pos));
                        i += 1;
                        continue;
                    }
                };
                j += 1;
                skip_ws(&mut j);
                if chars.get(j) != Some(&']') {
                    return Err(parse_err(j + 1, "']'"));
                }
                i = j;
                Tok::Sym(sym)
            }
            ']' => Tok::RBracket,
            'L' => Tok::L,
            'P' => Tok::P,
            'A' => Tok::A,
            'G' => Tok::G,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            _ => return Err(parse_err(pos, format!("a token, found '{c}'"))),
        };
        out.push((tok, pos));
        i += 1;
    }
    Ok((out, chars.len() + 1))
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |&(_, p)| p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(parse_err(pos, want.describe())),
        }
    }

    fn nat<T: std::str::FromStr>(&mut self, what: &str) -> Result<T> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Nat(s)) => s
                .parse()
                .map_err(|_| parse_err(pos, format!("{what} small enough to fit"))),
            _ => Err(parse_err(pos, what.to_string())),
        }
    }

    fn expr(&mut self) -> Result<ClassExpr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = ClassExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = ClassExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ClassExpr> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            lhs = ClassExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<ClassExpr> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(ClassExpr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let e = self.nat("a non-negative integer exponent")?;
            return Ok(ClassExpr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ClassExpr> {
        let pos = self.pos();
        let expected = "'L', an integer, P(..), A(..), G(..), [X], [Y] or '('";
        match self.bump() {
            Some(Tok::L) => Ok(ClassExpr::L),
            Some(Tok::Nat(s)) => Ok(ClassExpr::Int(s.parse().expect("digits"))),
            Some(Tok::Sym(s)) => Ok(ClassExpr::Sym(s)),
            Some(Tok::P) => {
                self.expect(Tok::LParen)?;
                let negative = self.peek() == Some(&Tok::Minus);
                if negative {
                    self.bump();
                }
                let n: i64 = self.nat("an integer")?;
                self.expect(Tok::RParen)?;
                Ok(ClassExpr::P(if negative { -n } else { n }))
            }
            Some(Tok::A) => {
                self.expect(Tok::LParen)?;
                let n = self.nat("a non-negative integer")?;
                self.expect(Tok::RParen)?;
                Ok(ClassExpr::A(n))
            }
            Some(Tok::G) => {
                self.expect(Tok::LParen)?;
                let k = self.nat("a non-negative integer")?;
                self.expect(Tok::Comma)?;
                let n = self.nat("a non-negative integer")?;
                self.expect(Tok::RParen)?;
                Ok(ClassExpr::G(k, n))
            }
            Some(Tok::LBracket) => {
                let inner = self.atom()?;
                if !matches!(inner, ClassExpr::P(_) | ClassExpr::A(_) | ClassExpr::G(..)) {
                    return Err(parse_err(pos + 1, "P(..), A(..) or G(..) inside '[..]'"));
                }
                self.expect(Tok::RBracket)?;
                Ok(inner)
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => Err(parse_err(pos, expected)),
        }
    }
}

/// Parses a class expression. Whitespace is ignored between tokens.
pub fn parse_expr(text: &str) -> Result<ClassExpr> {
    let (toks, end) = lex(text)?;
    let mut parser = Parser { toks, at: 0, end };
    let e = parser.expr()?;
    if parser.peek().is_some() {
        return Err(parse_err(parser.pos(), "an operator or end of input"));
    }
    Ok(e)
}

// Binding levels: 0 = expr, 1 = term, 2 = factor, 3 = atom.
fn level(e: &ClassExpr) -> u8 {
    match e {
        ClassExpr::Add(..) | ClassExpr::Sub(..) => 0,
        ClassExpr::Mul(..) => 1,
        ClassExpr::Neg(_) | ClassExpr::Pow(..) => 2,
        _ => 3,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &ClassExpr, ctx: u8) -> fmt::Result {
    if level(e) < ctx {
        f.write_str("(")?;
        write_at(f, e, 0)?;
        return f.write_str(")");
    }
    match e {
        ClassExpr::Int(n) => write!(f, "{n}"),
        ClassExpr::L => f.write_str("L"),
        ClassExpr::P(n) => write!(f, "P({n})"),
        ClassExpr::A(n) => write!(f, "A({n})"),
        ClassExpr::G(k, n) => write!(f, "G({k},{n})"),
        ClassExpr::Sym(s) => f.write_str(s.label()),
        ClassExpr::Neg(a) => {
            f.write_str("-")?;
            write_at(f, a, 2)
        }
        ClassExpr::Add(a, b) | ClassExpr::Sub(a, b) => {
            write_at(f, a, 0)?;
            f.write_str(if matches!(e, ClassExpr::Add(..)) { " + " } else { " - " })?;
            write_at(f, b, 1)
        }
        ClassExpr::Mul(a, b) => {
            write_at(f, a, 1)?;
            f.write_str("*")?;
            write_at(f, b, 2)
        }
        ClassExpr::Pow(a, k) => {
            write_at(f, a, 3)?;
            write!(f, "^{k}")
        }
    }
}

impl fmt::Display for ClassExpr {
    /// Minimal parenthesization; reparses to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(f, self, 0)
    }
}

fn degree_guard(deg: usize) -> Result<()> {
    if deg > MAX_DEGREE {
        return Err(Error::Domain(format!(
            "degree {deg} exceeds the limit of {MAX_DEGREE}"
        )));
    }
    Ok(())
}

fn arg(n: u64) -> Result<usize> {
    let n = usize::try_from(n).map_err(|_| Error::Domain(format!("{n} is too large")))?;
    degree_guard(n)?;
    Ok(n)
}

fn max_degree(e: &MotElem) -> usize {
    std::iter::once(e.scalar_part())
        .chain(e.sym_coeffs().values())
        .filter_map(Poly::degree)
        .max()
        .unwrap_or(0)
}

/// Evaluates an expression in the class module.
pub fn eval_expr(e: &ClassExpr) -> Result<MotElem> {
    Ok(match e {
        ClassExpr::Int(n) => Poly::constant(BigInt::from(n.clone())).into(),
        ClassExpr::L => Poly::l().into(),
        ClassExpr::P(n) => {
            degree_guard(usize::try_from((*n).max(0)).unwrap_or(usize::MAX))?;
            projective_class(*n)?.into()
        }
        ClassExpr::A(n) => affine_class(arg(*n)?).into(),
        ClassExpr::G(k, n) => {
            let (k, n) = (arg(*k)?, arg(*n)?);
            if k <= n {
                degree_guard(k * (n - k))?;
            }
            grassmannian_class(k, n).into()
        }
        ClassExpr::Sym(s) => MotElem::symbol(*s),
        ClassExpr::Neg(a) => -eval_expr(a)?,
        ClassExpr::Add(a, b) => eval_expr(a)? + eval_expr(b)?,
        ClassExpr::Sub(a, b) => eval_expr(a)? - eval_expr(b)?,
        ClassExpr::Mul(a, b) => {
            let (x, y) = (eval_expr(a)?, eval_expr(b)?);
            degree_guard(max_degree(&x) + max_degree(&y))?;
            x.try_mul(&y)?
        }
        ClassExpr::Pow(a, k) => {
            let base = eval_expr(a)?;
            match (*k, base.is_scalar()) {
                (0, _) => Poly::one().into(),
                (1, _) => base,
                (_, false) => return Err(Error::SymbolProduct),
                (k, true) => {
                    degree_guard(max_degree(&base).saturating_mul(k as usize))?;
                    base.scalar_part().pow(k).into()
                }
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::proj;
    use proptest::prelude::*;

    fn eval_str(s: &str) -> Result<MotElem> {
        eval_expr(&parse_expr(s)?)
    }

    #[test]
    fn parses_simple_difference() {
        let e = parse_expr("L^2 - 1").unwrap();
        assert_eq!(
            e,
            ClassExpr::Sub(
                Box::new(ClassExpr::Pow(Box::new(ClassExpr::L), 2)),
                Box::new(ClassExpr::Int(1u32.into()))
            )
        );
        assert_eq!(parse_expr("  L ^ 2-1 ").unwrap(), e);
    }

    #[test]
    fn grassmannian_product_form() {
        let e = parse_expr("[P(6)]*(L^4+L^2+1)").unwrap();
        assert_eq!(e, parse_expr("P(6)*(L^4+L^2+1)").unwrap());
        assert_eq!(eval_expr(&e).unwrap(), MotElem::scalar(grassmannian_class(2, 7)));
        assert_eq!(parse_expr("[ G(2,7) ]").unwrap(), ClassExpr::G(2, 7));
        assert!(matches!(parse_expr("[L]"), Err(Error::Parse { position: 2, .. })));
        assert!(matches!(parse_expr("[P(1)"), Err(Error::Parse { position: 6, .. })));
        assert!(eval_str("G(2,7) - P(6)*(L^4+L^2+1)").unwrap().is_zero());
    }

    #[test]
    fn symbols() {
        let e = parse_expr("([X] - [Y]) * L^6").unwrap();
        assert_eq!(eval_expr(&e).unwrap(), MotElem::relation());
        assert_eq!(parse_expr("[ X ]").unwrap(), ClassExpr::Sym(Symbol::XW));
        assert!(eval_str("[X]*0").unwrap().is_zero());
        assert_eq!(eval_str("[X]*[Y]"), Err(Error::SymbolProduct));
        assert_eq!(eval_str("[X]^2"), Err(Error::SymbolProduct));
        assert_eq!(eval_str("[X]^1").unwrap(), MotElem::symbol(Symbol::XW));
    }

    #[test]
    fn weaker_annihilator_expression_reduces_to_zero() {
        let v = eval_str("([X]-[Y])*(L^2-1)*(L-1)*L^7").unwrap();
        assert!(!v.is_zero());
        assert!(v.normal_form().is_zero());
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(
            parse_expr("L^-1"),
            Err(Error::Parse {
                position: 3,
                expected: "a non-negative integer exponent".into()
            })
        );
        assert!(matches!(parse_expr("L +"), Err(Error::Parse { position: 4, .. })));
        assert!(matches!(parse_expr("G(2 7)"), Err(Error::Parse { position: 5, .. })));
        assert!(matches!(parse_expr("L^2^3"), Err(Error::Parse { position: 4, .. })));
        assert!(matches!(parse_expr("[Z]"), Err(Error::Parse { position: 2, .. })));
        assert!(matches!(parse_expr("[X"), Err(Error::Parse { position: 3, .. })));
        assert!(matches!(parse_expr("x"), Err(Error::Parse { position: 1, .. })));
        assert!(matches!(parse_expr(""), Err(Error::Parse { position: 1, .. })));
        assert!(matches!(parse_expr("(L"), Err(Error::Parse { position: 3, .. })));
    }

    #[test]
    fn class_atoms() {
        assert!(eval_str("P(-1)").unwrap().is_zero());
        assert!(matches!(eval_str("P(-2)"), Err(Error::Domain(_))));
        assert_eq!(eval_str("P(5) - P(4)").unwrap(), eval_str("L^5").unwrap());
        assert_eq!(eval_str("A(3)").unwrap(), eval_str("L*L*L").unwrap());
        assert_eq!(eval_str("G(2,5)").unwrap(), MotElem::scalar(proj(4) * Poly::from_i64s(&[1, 0, 1])));
        assert!(eval_str("L^100000").is_err());
        assert!(eval_str("A(99999999999999999999)").is_err());
    }

    #[test]
    fn printing() {
        for (src, printed) in [
            ("L^2 - 1", "L^2 - 1"),
            ("(L-1)*(L+1)", "(L - 1)*(L + 1)"),
            ("-(L^2)", "-L^2"),
            ("(-L)^2", "(-L)^2"),
            ("1 - (2 - 3)", "1 - (2 - 3)"),
            ("--L", "--L"),
            ("P(-1) + G(2,7)*[X]", "P(-1) + G(2,7)*[X]"),
            ("(L^2)^3", "(L^2)^3"),
        ] {
            let e = parse_expr(src).unwrap();
            assert_eq!(e.to_string(), printed, "{src}");
            assert_eq!(parse_expr(printed).unwrap(), e);
        }
    }

    fn arb_expr() -> impl Strategy<Value = ClassExpr> {
        let leaf = prop_oneof![
            Just(ClassExpr::L),
            (0u32..20).prop_map(|n| ClassExpr::Int(n.into())),
            (-1i64..6).prop_map(ClassExpr::P),
            (0u64..5).prop_map(ClassExpr::A),
            (0u64..5, 0u64..6).prop_map(|(k, n)| ClassExpr::G(k, n)),
            Just(ClassExpr::Sym(Symbol::XW)),
            Just(ClassExpr::Sym(Symbol::YW)),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|a| ClassExpr::Neg(Box::new(a))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| ClassExpr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| ClassExpr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| ClassExpr::Mul(Box::new(a), Box::new(b))),
                (inner, 0u32..4).prop_map(|(a, k)| ClassExpr::Pow(Box::new(a), k)),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let printed = e.to_string();
            prop_assert_eq!(parse_expr(&printed).unwrap(), e);
        }

        #[test]
        fn eval_is_homomorphic(a in arb_expr(), b in arb_expr()) {
            if let (Ok(x), Ok(y)) = (eval_expr(&a), eval_expr(&b)) {
                let sum = eval_expr(&ClassExpr::Add(Box::new(a.clone()), Box::new(b.clone()))).unwrap();
                prop_assert_eq!(sum, &x + &y);
                let diff = eval_expr(&ClassExpr::Sub(Box::new(a.clone()), Box::new(b.clone()))).unwrap();
                prop_assert_eq!(diff, &x - &y);
                let prod = eval_expr(&ClassExpr::Mul(Box::new(a), Box::new(b)));
                prop_assert_eq!(prod, x.try_mul(&y));
            }
        }
    }
}
