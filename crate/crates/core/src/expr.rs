//! Constructor expression mini-language.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr := RB(int, int) | C(int) | S(int) | M(int)
//!       | J(expr) | I(expr) | Z(expr)
//!       | W(expr, expr) | P(expr, expr)
//! ```
//!
//! `RB` is a rectangular band, `C` a cyclic group, `S`/`M` the Moore-space
//! semigroup and monoid, `J` the suspension monoid, `I`/`Z` adjoin an
//! identity or zero, `W` the wedge monoid and `P` the direct product.
//! Parse errors report a byte position.

use thiserror::Error;

use crate::constructions;
use crate::semigroup::{FiniteSemigroup, SemigroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at position {position}: {message}")]
pub struct ExprError {
    pub position: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    RectangularBand(usize, usize),
    Cyclic(usize),
    MooreSemigroup(usize),
    MooreMonoid(usize),
    Suspension(Box<Expr>),
    AdjoinIdentity(Box<Expr>),
    AdjoinZero(Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
    Product(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn eval(&self) -> Result<FiniteSemigroup, SemigroupError> {
        let positive = |v: usize, what: &str| {
            if v >= 1 {
                Ok(v)
            } else {
                Err(SemigroupError::InvalidParameter(format!(
                    "{what} must be at least 1"
                )))
            }
        };
        match self {
            Expr::RectangularBand(a, b) => Ok(constructions::rectangular_band(
                positive(*a, "RB row count")?,
                positive(*b, "RB column count")?,
            )),
            Expr::Cyclic(n) => Ok(constructions::cyclic_group(positive(*n, "C order")?)),
            Expr::MooreSemigroup(n) | Expr::MooreMonoid(n) => {
                if *n < 2 {
                    return Err(SemigroupError::InvalidParameter(
                        "Moore modulus must be at least 2".into(),
                    ));
                }
                let (s, m, _) = constructions::moore_semigroup(*n);
                Ok(match self {
                    Expr::MooreSemigroup(_) => s,
                    _ => m,
                })
            }
            Expr::Suspension(e) => constructions::suspension_monoid(&e.eval()?),
            Expr::AdjoinIdentity(e) => Ok(e.eval()?.adjoin_identity()),
            Expr::AdjoinZero(e) => Ok(e.eval()?.adjoin_zero()),
            Expr::Wedge(a, b) => Ok(constructions::wedge_monoid(&a.eval()?, &b.eval()?)?.semigroup),
            Expr::Product(a, b) => Ok(a.eval()?.direct_product(&b.eval()?)),
        }
    }
}

/// Parses a constructor expression.
pub fn parse(input: &str) -> Result<Expr, ExprError> {
    let mut p = Parser {
        bytes: input.as_bytes(),
        pos: 0,
    };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(expr)
}

/// Parses and evaluates in one step.
///
/// ```
/// let j = bsemi_core::expr::build("J(C(2))").unwrap();
/// assert_eq!(j.order(), 6);
/// assert_eq!(j.minimal_ideal().elements.len(), 4);
/// ```
pub fn build(input: &str) -> Result<FiniteSemigroup, BuildError> {
    Ok(parse(input)?.eval()?)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error(transparent)]
    Parse(#[from] ExprError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> ExprError {
        ExprError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<(), ExprError> {
        match self.peek() {
            Some(c) if c == ch => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{}', found '{}'", ch as char, c as char))),
            None => Err(self.error(format!("expected '{}', found end of input", ch as char))),
        }
    }

    fn integer(&mut self) -> Result<usize, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("digits")
            .parse()
            .map_err(|_| self.error("integer out of range"))
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos]).expect("letters");
        match name {
            "RB" => {
                self.expect(b'(')?;
                let a = self.integer()?;
                self.expect(b',')?;
                let b = self.integer()?;
                self.expect(b')')?;
                Ok(Expr::RectangularBand(a, b))
            }
            "C" => Ok(Expr::Cyclic(self.int_arg()?)),
            "S" => Ok(Expr::MooreSemigroup(self.int_arg()?)),
            "M" => Ok(Expr::MooreMonoid(self.int_arg()?)),
            "J" => Ok(Expr::Suspension(Box::new(self.expr_arg()?))),
            "I" => Ok(Expr::AdjoinIdentity(Box::new(self.expr_arg()?))),
            "Z" => Ok(Expr::AdjoinZero(Box::new(self.expr_arg()?))),
            "W" => {
                let (a, b) = self.expr_pair()?;
                Ok(Expr::Wedge(Box::new(a), Box::new(b)))
            }
            "P" => {
                let (a, b) = self.expr_pair()?;
                Ok(Expr::Product(Box::new(a), Box::new(b)))
            }
            "" => Err(ExprError {
                position: start,
                message: "expected a constructor (RB, C, S, M, J, I, Z, W, P)".into(),
            }),
            other => Err(ExprError {
                position: start,
                message: format!("unknown constructor '{other}'"),
            }),
        }
    }

    fn int_arg(&mut self) -> Result<usize, ExprError> {
        self.expect(b'(')?;
        let n = self.integer()?;
        self.expect(b')')?;
        Ok(n)
    }

    fn expr_arg(&mut self) -> Result<Expr, ExprError> {
        self.expect(b'(')?;
        let e = self.expr()?;
        self.expect(b')')?;
        Ok(e)
    }

    fn expr_pair(&mut self) -> Result<(Expr, Expr), ExprError> {
        self.expect(b'(')?;
        let a = self.expr()?;
        self.expect(b',')?;
        let b = self.expr()?;
        self.expect(b')')?;
        Ok((a, b))
    }
}
