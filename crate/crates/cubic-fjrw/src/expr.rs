//! A small language for class arithmetic: lexer, parser, type check, printer, evaluator.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::error::Error;
use crate::m13::{M13Class, M13Generator};
use crate::rational::Rational;
use crate::tables::Tables;
use crate::threespin::{self, WClass, WGenerator};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{pos}: {msg}")]
pub struct ParseError {
    pub pos: Pos,
    pub msg: String,
}

fn perr<T>(pos: Pos, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ident {
    DIrr,
    D02m,
    D03m,
    Kps,
    Dirr0,
    Dirr1,
    Dirr2,
    D02,
    D03,
    D03_0,
    S,
}

const IDENTS: [(Ident, &str); 11] = [
    (Ident::DIrr, "d_irr"),
    (Ident::D02m, "d02"),
    (Ident::D03m, "d03"),
    (Ident::Kps, "kps"),
    (Ident::Dirr0, "Dirr0"),
    (Ident::Dirr1, "Dirr1"),
    (Ident::Dirr2, "Dirr2"),
    (Ident::D02, "D02"),
    (Ident::D03, "D03"),
    (Ident::D03_0, "D03_0"),
    (Ident::S, "S"),
];

impl Ident {
    pub fn name(self) -> &'static str {
        IDENTS.iter().find(|(i, _)| *i == self).map(|(_, n)| *n).unwrap()
    }

    fn space(self) -> Space {
        match self {
            Ident::DIrr | Ident::D02m | Ident::D03m | Ident::Kps => Space::M13,
            _ => Space::W,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    St,
    Push,
    Deg,
    Virt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::St => "st",
            Func::Push => "push",
            Func::Deg => "deg",
            Func::Virt => "virt",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        [Func::St, Func::Push, Func::Deg, Func::Virt].into_iter().find(|f| f.name() == s)
    }

    fn arity(self) -> usize {
        if self == Func::Virt {
            0
        } else {
            1
        }
    }
}

#[derive(Clone, Debug)]
pub enum ExprKind {
    Lit(Rational),
    Ident(Ident),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Vec<Expr>),
}

/// An expression node; equality ignores source positions.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        use ExprKind::*;
        match (&self.kind, &other.kind) {
            (Lit(a), Lit(b)) => a == b,
            (Ident(a), Ident(b)) => a == b,
            (Neg(a), Neg(b)) => a == b,
            (Add(a, b), Add(c, d)) | (Sub(a, b), Sub(c, d)) | (Mul(a, b), Mul(c, d)) => a == c && b == d,
            (Pow(a, n), Pow(b, m)) => a == b && n == m,
            (Call(f, a), Call(g, b)) => f == g && a == b,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Int(s.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Name(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                _ => return perr(pos, format!("unexpected character `{c}`")),
            }
        };
        col += i - start;
        out.push((tok, pos));
    }
    out.push((Tok::End, Pos { line, col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            perr(self.pos(), format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.pos();
            let kind = match self.peek() {
                Tok::Plus => ExprKind::Add as fn(_, _) -> _,
                Tok::Minus => ExprKind::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr { kind: kind(Box::new(lhs), Box::new(rhs)), pos };
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            let pos = self.pos();
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr { kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)), pos };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            let pos = self.pos();
            self.bump();
            let inner = self.unary()?;
            return Ok(Expr { kind: ExprKind::Neg(Box::new(inner)), pos });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let pos = self.pos();
        self.bump();
        let epos = self.pos();
        match self.bump().0 {
            Tok::Int(n) => match u32::try_from(&n) {
                Ok(k) if k <= 3 => Ok(Expr { kind: ExprKind::Pow(Box::new(base), k), pos }),
                _ => perr(epos, format!("exponent {n} exceeds 3")),
            },
            _ => perr(epos, "exponent must be an integer literal"),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => {
                if *self.peek() != Tok::Slash {
                    return Ok(Expr { kind: ExprKind::Lit(BigRational::from_integer(n)), pos });
                }
                self.bump();
                let dpos = self.pos();
                match self.bump().0 {
                    Tok::Int(d) if d.is_zero() => perr(dpos, "zero denominator"),
                    Tok::Int(d) => Ok(Expr { kind: ExprKind::Lit(BigRational::new(n, d)), pos }),
                    _ => perr(dpos, "`/` is only allowed between integer literals"),
                }
            }
            Tok::Name(name) => {
                if *self.peek() == Tok::LParen {
                    let f = Func::from_name(&name)
                        .ok_or_else(|| ParseError { pos, msg: format!("unknown function `{name}`") })?;
                    self.bump();
                    let mut args = Vec::new();
                    if *self.peek() != Tok::RParen {
                        args.push(self.expr()?);
                        while *self.peek() == Tok::Comma {
                            self.bump();
                            args.push(self.expr()?);
                        }
                    }
                    self.expect(Tok::RParen, "`)`")?;
                    if args.len() != f.arity() {
                        return perr(pos, format!("`{}` takes {} argument(s), got {}", f.name(), f.arity(), args.len()));
                    }
                    return Ok(Expr { kind: ExprKind::Call(f, args), pos });
                }
                match IDENTS.iter().find(|(_, n)| *n == name) {
                    Some((id, _)) => Ok(Expr { kind: ExprKind::Ident(*id), pos }),
                    None if Func::from_name(&name).is_some() => perr(pos, format!("`{name}` must be called")),
                    None => perr(pos, format!("unknown identifier `{name}`")),
                }
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Slash => perr(pos, "`/` is only allowed between integer literals"),
            Tok::End => perr(pos, "unexpected end of input"),
            other => perr(pos, format!("unexpected token {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Scalar,
    M13,
    W,
}

impl Space {
    fn label(self) -> &'static str {
        match self {
            Space::Scalar => "a number",
            Space::M13 => "a class on M(1,3)",
            Space::W => "a class on the spin moduli",
        }
    }
}

fn join(a: Space, b: Space, pos: Pos) -> Result<Space, ParseError> {
    match (a, b) {
        (Space::Scalar, x) | (x, Space::Scalar) => Ok(x),
        (x, y) if x == y => Ok(x),
        (x, y) => perr(pos, format!("cannot combine {} with {}", x.label(), y.label())),
    }
}

/// Static space of an expression.
pub fn type_of(e: &Expr) -> Result<Space, ParseError> {
    match &e.kind {
        ExprKind::Lit(_) => Ok(Space::Scalar),
        ExprKind::Ident(i) => Ok(i.space()),
        ExprKind::Neg(a) | ExprKind::Pow(a, _) => type_of(a),
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) => join(type_of(a)?, type_of(b)?, e.pos),
        ExprKind::Call(f, args) => {
            let want = |got: Space, need: Space, out: Space| {
                if got == need {
                    Ok(out)
                } else {
                    perr(args[0].pos, format!("`{}` expects {}, got {}", f.name(), need.label(), got.label()))
                }
            };
            match f {
                Func::Virt => Ok(Space::W),
                Func::St => want(type_of(&args[0])?, Space::M13, Space::W),
                Func::Push => want(type_of(&args[0])?, Space::W, Space::M13),
                Func::Deg => want(type_of(&args[0])?, Space::M13, Space::Scalar),
            }
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return perr(p.pos(), "unexpected trailing input");
    }
    type_of(&e)?;
    Ok(e)
}

fn prec(e: &Expr) -> u8 {
    match &e.kind {
        ExprKind::Add(..) | ExprKind::Sub(..) => 1,
        ExprKind::Mul(..) => 2,
        ExprKind::Neg(_) => 3,
        ExprKind::Pow(..) => 4,
        ExprKind::Lit(r) if !r.is_integer() => 4,
        _ => 5,
    }
}

fn wrap(e: &Expr, parens: bool) -> String {
    if parens {
        format!("({e})")
    } else {
        e.to_string()
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Lit(r) => write!(f, "{r}"),
            ExprKind::Ident(i) => write!(f, "{}", i.name()),
            ExprKind::Neg(a) => write!(f, "-{}", wrap(a, prec(a) < 3)),
            ExprKind::Add(a, b) => write!(f, "{} + {}", wrap(a, prec(a) < 1), wrap(b, prec(b) <= 1)),
            ExprKind::Sub(a, b) => write!(f, "{} - {}", wrap(a, prec(a) < 1), wrap(b, prec(b) <= 1)),
            ExprKind::Mul(a, b) => write!(f, "{} * {}", wrap(a, prec(a) < 2), wrap(b, prec(b) <= 2)),
            ExprKind::Pow(a, n) => write!(f, "{}^{n}", wrap(a, prec(a) < 5)),
            ExprKind::Call(func, args) => {
                let args: Vec<String> = args.iter().map(|a| a.to_string()).collect();
                write!(f, "{}({})", func.name(), args.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(Rational),
    M13(M13Class),
    W(WClass),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(r) => write!(f, "{r}"),
            Value::M13(c) => write!(f, "{c}"),
            Value::W(c) => write!(f, "{c}"),
        }
    }
}

enum Pair {
    Scalar(Rational, Rational),
    M13(M13Class, M13Class),
    W(WClass, WClass),
}

fn pair(a: Value, b: Value) -> Pair {
    use Value::*;
    match (a, b) {
        (Scalar(x), Scalar(y)) => Pair::Scalar(x, y),
        (Scalar(x), M13(y)) => Pair::M13(M13Class::scalar(x), y),
        (M13(x), Scalar(y)) => Pair::M13(x, M13Class::scalar(y)),
        (M13(x), M13(y)) => Pair::M13(x, y),
        (Scalar(x), W(y)) => Pair::W(WClass::scalar(x), y),
        (W(x), Scalar(y)) => Pair::W(x, WClass::scalar(y)),
        (W(x), W(y)) => Pair::W(x, y),
        _ => unreachable!("rejected by the type check"),
    }
}

fn ident_value(i: Ident) -> Value {
    use threespin::WGenerator as G;
    let m = |g| Value::M13(M13Class::generator(g));
    let w = |g| Value::W(WClass::generator(g));
    match i {
        Ident::DIrr => m(M13Generator::DIrr),
        Ident::D02m => m(M13Generator::D02),
        Ident::D03m => m(M13Generator::D03),
        Ident::Kps => m(M13Generator::Kps),
        Ident::Dirr0 => w(G::Dirr0),
        Ident::Dirr1 => w(G::Dirr1),
        Ident::Dirr2 => w(G::Dirr2),
        Ident::D02 => w(G::D02),
        Ident::D03 => w(G::D03),
        Ident::D03_0 => w(WGenerator::D03_0),
        Ident::S => Value::W(WClass::s()),
    }
}

pub fn eval(e: &Expr, t: &Tables) -> Result<Value, Error> {
    Ok(match &e.kind {
        ExprKind::Lit(r) => Value::Scalar(r.clone()),
        ExprKind::Ident(i) => ident_value(*i),
        ExprKind::Neg(a) => match eval(a, t)? {
            Value::Scalar(r) => Value::Scalar(-r),
            Value::M13(c) => Value::M13(c.neg()),
            Value::W(c) => Value::W(c.neg()),
        },
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) => {
            let op = |x: &Rational, y: &Rational| match &e.kind {
                ExprKind::Add(..) => x + y,
                ExprKind::Sub(..) => x - y,
                _ => x * y,
            };
            match pair(eval(a, t)?, eval(b, t)?) {
                Pair::Scalar(x, y) => Value::Scalar(op(&x, &y)),
                Pair::M13(x, y) => Value::M13(match &e.kind {
                    ExprKind::Add(..) => x.add(&y),
                    ExprKind::Sub(..) => x.sub(&y),
                    _ => x.mul(&y),
                }),
                Pair::W(x, y) => Value::W(match &e.kind {
                    ExprKind::Add(..) => x.add(&y),
                    ExprKind::Sub(..) => x.sub(&y),
                    _ => x.mul(&y),
                }),
            }
        }
        ExprKind::Pow(a, n) => match eval(a, t)? {
            Value::Scalar(r) => Value::Scalar((0..*n).fold(Rational::one(), |acc, _| acc * &r)),
            Value::M13(c) => Value::M13(c.pow(*n)),
            Value::W(c) => Value::W(c.pow(*n)),
        },
        ExprKind::Call(f, args) => match (f, args.first().map(|a| eval(a, t)).transpose()?) {
            (Func::Virt, _) => Value::W(threespin::virtual_class()),
            (Func::St, Some(Value::M13(c))) => Value::W(threespin::st_pullback_class(&c)?),
            (Func::Push, Some(Value::W(c))) => {
                let reduced = threespin::reduce_self_intersections(&c, &t.strata)?;
                Value::M13(threespin::st_pushforward(&reduced, &t.strata)?)
            }
            (Func::Deg, Some(Value::M13(c))) => Value::Scalar(t.pairing.m13_degree(&c)?),
            _ => unreachable!("rejected by the type check"),
        },
    })
}

/// Parses and evaluates in one step.
pub fn eval_str(src: &str, t: &Tables) -> Result<Value, EvalError> {
    let e = parse(src)?;
    Ok(eval(&e, t)?)
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Compute(#[from] Error),
}

/// The virtual class cubed, pushed and paired.
pub fn theta_expression() -> &'static str {
    "deg(push(virt()^3))"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn ev(s: &str) -> Value {
        eval_str(s, &Tables::standard()).unwrap()
    }

    #[test]
    fn table_entry() {
        assert_eq!(ev("deg(d_irr * d02 * d03)"), Value::Scalar(rat(3, 2)));
        assert_eq!(ev("deg(d_irr*d_irr*d02)"), Value::Scalar(int(0)));
    }

    #[test]
    fn precedence() {
        let e = parse("-d02^2").unwrap();
        assert!(matches!(e.kind, ExprKind::Neg(_)));
        let e = parse("1/2*d02 + d03").unwrap();
        assert!(matches!(e.kind, ExprKind::Add(..)));
        let e = parse("d02 - d03 - d02").unwrap();
        match e.kind {
            ExprKind::Sub(a, _) => assert!(matches!(a.kind, ExprKind::Sub(..))),
            _ => panic!(),
        }
    }

    #[test]
    fn fraction_literal_is_reduced() {
        assert_eq!(parse("2/4").unwrap(), parse("1/2").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("d02 +\n  foo").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 3 });
        let e = parse("d02 / 2").unwrap_err();
        assert_eq!(e.pos.col, 5);
        assert!(parse("d02^4").is_err());
        assert!(parse("push(d02)").is_err());
        assert!(parse("d02 + D02").is_err());
        assert!(parse("deg(d02, d03)").is_err());
        assert!(parse("virt").is_err());
        assert!(parse("3/0").is_err());
        assert!(parse("d02 $").is_err());
        assert!(parse("(d02").is_err());
    }

    #[test]
    fn printer_parenthesizes() {
        for s in ["(d02 + d03)^2", "d02 - (d03 - d02)", "-(d02 * d03)", "(-d02)^2", "(1/2)^2", "d02 * -d03"] {
            let e = parse(s).unwrap();
            assert_eq!(e.to_string(), s);
            assert_eq!(parse(&e.to_string()).unwrap(), e);
        }
    }
}
