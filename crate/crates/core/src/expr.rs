//! Text syntax for elements of `H_n`.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := '-'? factor ('*' factor)*
//! factor   := atom ('^' uint)?
//! atom     := 'g' | 'x' | 'y' | 'i' | 'w' | 'z' | rational | '(' expr ')'
//! rational := int ('/' posint)?
//! ```
//!
//! `w` is `ω`, `z` is `ζ_m` and `i` is `ζ^{m/4}`. Multiplication must be
//! written out; `gx` is rejected.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::algebra::Element;
use crate::scalars::{Context, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    G,
    X,
    Y,
    I,
    W,
    Z,
    Rational(BigRational),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error("expected a scalar, got {0}")]
    NotScalar(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Letter(char),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Letter(c) => write!(f, "'{c}'"),
            Tok::Int(k) => write!(f, "'{k}'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(input: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = input.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                digits.push(d);
                chars.next();
                column += 1;
            }
            out.push(Spanned {
                tok: Tok::Int(digits.parse().expect("ascii digits")),
                line: l0,
                column: c0,
            });
            continue;
        } else {
            match c {
                'g' | 'x' | 'y' | 'i' | 'w' | 'z' => Tok::Letter(c),
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '/' => Tok::Slash,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(ParseError {
                        line,
                        column,
                        message: format!("unexpected character {c:?}"),
                    })
                }
            }
        };
        chars.next();
        column += 1;
        out.push(Spanned {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(at: &Spanned, message: String) -> ParseError {
        ParseError {
            line: at.line,
            column: at.column,
            message,
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let negate = self.peek().tok == Tok::Minus;
        if negate {
            self.bump();
        }
        let mut lhs = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(if negate { Expr::Neg(Box::new(lhs)) } else { lhs })
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        match &t.tok {
            Tok::Int(k) => {
                let k = u32::try_from(k).map_err(|_| Self::error(&t, "exponent too large".into()))?;
                Ok(Expr::Pow(Box::new(base), k))
            }
            other => Err(Self::error(&t, format!("expected an exponent, found {other}"))),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.bump();
        match t.tok.clone() {
            Tok::Letter('g') => Ok(Expr::G),
            Tok::Letter('x') => Ok(Expr::X),
            Tok::Letter('y') => Ok(Expr::Y),
            Tok::Letter('i') => Ok(Expr::I),
            Tok::Letter('w') => Ok(Expr::W),
            Tok::Letter('z') => Ok(Expr::Z),
            Tok::Int(p) => {
                if self.peek().tok != Tok::Slash {
                    return Ok(Expr::Rational(BigRational::from_integer(p)));
                }
                self.bump();
                let d = self.bump();
                match d.tok.clone() {
                    Tok::Int(q) if !q.is_zero() => Ok(Expr::Rational(BigRational::new(p, q))),
                    Tok::Int(_) => Err(Self::error(&d, "zero denominator".into())),
                    other => Err(Self::error(&d, format!("expected a denominator, found {other}"))),
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(Self::error(&close, format!("expected ')', found {}", close.tok)));
                }
                Ok(inner)
            }
            other => Err(Self::error(&t, format!("expected an atom, found {other}"))),
        }
    }
}

pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: tokenize(input)?,
        pos: 0,
    };
    let e = p.expr()?;
    let rest = p.peek();
    if rest.tok != Tok::End {
        return Err(Parser::error(rest, format!("unexpected {}", rest.tok)));
    }
    Ok(e)
}

pub fn evaluate(e: &Expr, ctx: &Context) -> Element {
    let scalar = |s: Scalar| Element::scalar(s);
    match e {
        Expr::G => Element::g(ctx),
        Expr::X => Element::x(ctx),
        Expr::Y => Element::y(ctx),
        Expr::I => scalar(Scalar::imag_unit(ctx)),
        Expr::W => scalar(Scalar::omega(ctx)),
        Expr::Z => scalar(Scalar::zeta(ctx)),
        Expr::Rational(q) => scalar(Scalar::from_rational(ctx, q.clone())),
        Expr::Neg(a) => evaluate(a, ctx).neg(),
        Expr::Add(a, b) => evaluate(a, ctx).add(&evaluate(b, ctx)),
        Expr::Sub(a, b) => evaluate(a, ctx).sub(&evaluate(b, ctx)),
        Expr::Mul(a, b) => evaluate(a, ctx).mul(&evaluate(b, ctx)),
        Expr::Pow(a, k) => evaluate(a, ctx).pow(*k as usize),
    }
}

pub fn parse_element(input: &str, ctx: &Context) -> Result<Element, ParseError> {
    Ok(evaluate(&parse(input)?, ctx))
}

/// Parses an expression that must evaluate to a multiple of `1`.
pub fn parse_scalar(input: &str, ctx: &Context) -> Result<Scalar, ExprError> {
    let e = parse_element(input, ctx)?;
    if e.is_zero() {
        return Ok(Scalar::zero(ctx));
    }
    match e.as_single_term() {
        Some((m, c)) if *m == crate::algebra::Monomial::ONE => Ok(c.clone()),
        _ => Err(ExprError::NotScalar(e.to_string())),
    }
}

/// Canonical text of an element; parses back to the same element.
pub fn format(e: &Element) -> String {
    e.to_string()
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::G => f.write_str("g"),
            Expr::X => f.write_str("x"),
            Expr::Y => f.write_str("y"),
            Expr::I => f.write_str("i"),
            Expr::W => f.write_str("w"),
            Expr::Z => f.write_str("z"),
            Expr::Rational(q) if q.is_negative() => write!(f, "(-{})", crate::scalars::format_rational(&-q)),
            Expr::Rational(q) => f.write_str(&crate::scalars::format_rational(q)),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Pow(a, k) => write!(f, "({a})^{k}"),
        }
    }
}
