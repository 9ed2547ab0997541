//! Text syntax for polynomials.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' integer)?
//! primary := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers are the variables `x y z x0 x1 y0 y1` and the constants `i`
//! (√−1, field −1) and `w` (√−3, field −3). Division is only by nonzero
//! constants, so `3/8` is a rational literal.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::poly::MultiPoly;
use super::quad::{FieldDescriptor, QuadFieldElement};
use crate::error::{Error, Result};

type P = MultiPoly<QuadFieldElement>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Token {
                tok: Tok::Int(s.parse().unwrap()),
                line: l0,
                column: c0,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Token {
                tok: Tok::Ident(s),
                line: l0,
                column: c0,
            });
            continue;
        }
        if "+-*/^()".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                line: l0,
                column: c0,
            });
            i += 1;
            column += 1;
            continue;
        }
        return Err(Error::Parse {
            line,
            column,
            message: format!("unexpected character '{}'", c),
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    arity: usize,
    field: FieldDescriptor,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn err<T>(&self, t: &Token, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: t.line,
            column: t.column,
            message: message.into(),
        })
    }

    fn constant(&self, c: QuadFieldElement) -> P {
        P::constant(self.arity, c.in_field(self.field).expect("rational retag"))
    }

    fn expr(&mut self) -> Result<P> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Sym('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Tok::Sym('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<P> {
        let mut acc = self.unary()?;
        loop {
            let t = self.peek().clone();
            match t.tok {
                Tok::Sym('*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Tok::Sym('/') => {
                    self.pos += 1;
                    let at = self.peek().clone();
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return self.err(&at, "division only by a nonzero constant");
                    }
                    let inv = d.constant_term().try_inv()?;
                    acc = acc.scale(&inv);
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::Sym('(') => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<P> {
        match self.peek().tok {
            Tok::Sym('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Tok::Sym('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<P> {
        let base = self.primary()?;
        if self.peek().tok == Tok::Sym('^') {
            self.pos += 1;
            let t = self.peek().clone();
            match &t.tok {
                Tok::Int(n) => {
                    self.pos += 1;
                    let e: u32 = match n.try_into() {
                        Ok(e) if e <= 10_000 => e,
                        _ => return self.err(&t, "exponent too large"),
                    };
                    Ok(base.pow(e))
                }
                _ => self.err(&t, "expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<P> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(
                    self.constant(QuadFieldElement::rational(BigRational::from_integer(
                        n.clone(),
                    ))),
                )
            }
            Tok::Ident(name) => {
                self.pos += 1;
                self.identifier(&t, name)
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                let close = self.peek().clone();
                if close.tok != Tok::Sym(')') {
                    return self.err(&close, "expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Tok::End => self.err(&t, "unexpected end of input"),
            Tok::Sym(c) => self.err(&t, format!("unexpected '{}'", c)),
        }
    }

    fn identifier(&self, t: &Token, name: &str) -> Result<P> {
        match name {
            "i" | "w" => {
                let need = if name == "i" { -1 } else { -3 };
                if self.field.d != need {
                    return self.err(t, format!("constant '{}' requires --field={}", name, need));
                }
                Ok(self.constant(self.field.generator()))
            }
            _ => {
                let names = super::poly::variable_names(self.arity);
                match names.iter().position(|n| *n == name) {
                    Some(v) => Ok(P::var(self.arity, v)
                        .map_coeffs(|c| c.in_field(self.field).expect("rational retag"))),
                    None => self.err(
                        t,
                        format!("unknown identifier '{}' for {} variables", name, self.arity),
                    ),
                }
            }
        }
    }
}

/// Parses `text` as a polynomial in the variables of the given arity
/// (`x y`, `x y z` or `x0 x1 y0 y1`) over `field`.
pub fn parse_poly(text: &str, arity: usize, field: FieldDescriptor) -> Result<P> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        arity,
        field,
    };
    let out = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return p.err(&t, "unexpected trailing input");
    }
    Ok(out)
}

/// Parses with the arity inferred from the variable names used.
pub fn parse_poly_auto(text: &str, field: FieldDescriptor) -> Result<P> {
    let toks = tokenize(text)?;
    let mut arity = 2;
    for t in &toks {
        if let Tok::Ident(s) = &t.tok {
            match s.as_str() {
                "x0" | "x1" | "y0" | "y1" => arity = 4,
                "z" if arity < 3 => arity = 3,
                _ => {}
            }
        }
    }
    parse_poly(text, arity, field)
}

/// Parses a rational or field constant such as `-3/8` or `1/2 + w`.
pub fn parse_scalar(text: &str, field: FieldDescriptor) -> Result<QuadFieldElement> {
    let p = parse_poly(text, 2, field)?;
    if !p.is_constant() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: format!("expected a constant, found '{}'", text),
        });
    }
    let c = p.constant_term();
    if c.is_zero() {
        Ok(QuadFieldElement::int(0).in_field(field)?)
    } else {
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_canonical_text() {
        let f = parse_poly("y^2 - x^5", 2, FieldDescriptor::RATIONAL).unwrap();
        assert_eq!(f.to_string(), "y^2 - x^5");
        let g = parse_poly(&f.to_string(), 2, FieldDescriptor::RATIONAL).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn rationals_and_implicit_products() {
        let f = parse_poly("3/8 x^2 y - (x - y)^2", 2, FieldDescriptor::RATIONAL).unwrap();
        let g = parse_poly(
            "-x^2 + 2*x*y - y^2 + 3*x^2*y/8",
            2,
            FieldDescriptor::RATIONAL,
        )
        .unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn field_constants_require_matching_field() {
        assert!(parse_poly("x + i", 2, FieldDescriptor::GAUSSIAN).is_ok());
        let e = parse_poly("x + w", 2, FieldDescriptor::GAUSSIAN).unwrap_err();
        assert!(matches!(
            e,
            Error::Parse {
                line: 1,
                column: 5,
                ..
            }
        ));
        let f = parse_poly("(1 + w)^2", 2, FieldDescriptor::EISENSTEIN).unwrap();
        assert_eq!(f.to_string(), "-2 + 2*w");
    }

    #[test]
    fn reports_line_and_column() {
        let e = parse_poly("y^2 -", 2, FieldDescriptor::RATIONAL).unwrap_err();
        assert!(matches!(
            e,
            Error::Parse {
                line: 1,
                column: 6,
                ..
            }
        ));
        let e = parse_poly("x +\n  y $", 2, FieldDescriptor::RATIONAL).unwrap_err();
        assert!(matches!(
            e,
            Error::Parse {
                line: 2,
                column: 5,
                ..
            }
        ));
        assert!(parse_poly("z", 2, FieldDescriptor::RATIONAL).is_err());
    }

    #[test]
    fn infers_arity() {
        let f = parse_poly_auto("x0*y1^2 - x1*y0^2", FieldDescriptor::RATIONAL).unwrap();
        assert_eq!(f.arity(), 4);
        assert_eq!(
            parse_poly_auto("x*y*z", FieldDescriptor::RATIONAL)
                .unwrap()
                .arity(),
            3
        );
    }
}
