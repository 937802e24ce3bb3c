use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{Coeff, Polynomial, Ring};

/// Parses a polynomial written in the text grammar.
///
/// Identifiers name ring variables, literals are integers (a rational
/// constant is written `p/q`), operators are `+ - * / ^` with the usual
/// precedence, and multiplication is always explicit.
pub fn parse_polynomial(ring: &Arc<Ring>, text: &str) -> Result<Polynomial> {
    parse_polynomial_at(ring, text, 1, 1)
}

/// Like [`parse_polynomial`], reporting positions relative to a starting
/// line and column (used when the polynomial is embedded in a larger text).
pub fn parse_polynomial_at(
    ring: &Arc<Ring>,
    text: &str,
    line: usize,
    column: usize,
) -> Result<Polynomial> {
    let tokens = tokenize(text, line, column)?;
    let mut p = Parser {
        ring,
        tokens,
        pos: 0,
        end: end_position(text, line, column),
    };
    let value = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(p.error_at(t.line, t.column, format!("unexpected {}", t.kind.describe())));
    }
    Ok(value)
}

#[derive(Clone, Debug, PartialEq)]
enum Kind {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Kind {
    fn describe(&self) -> String {
        match self {
            Kind::Ident(s) => format!("identifier `{s}`"),
            Kind::Int(n) => format!("number `{n}`"),
            Kind::Plus => "`+`".into(),
            Kind::Minus => "`-`".into(),
            Kind::Star => "`*`".into(),
            Kind::Slash => "`/`".into(),
            Kind::Caret => "`^`".into(),
            Kind::LParen => "`(`".into(),
            Kind::RParen => "`)`".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: Kind,
    line: usize,
    column: usize,
}

fn end_position(text: &str, mut line: usize, mut column: usize) -> (usize, usize) {
    for c in text.chars() {
        if c == '\n' {
            line += 1;
            column = 1;
        } else {
            column += 1;
        }
    }
    (line, column)
}

fn tokenize(text: &str, mut line: usize, mut column: usize) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let kind = if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Token {
                kind: Kind::Ident(s),
                line: tl,
                column: tc,
            });
            continue;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Token {
                kind: Kind::Int(s.parse().expect("digits")),
                line: tl,
                column: tc,
            });
            continue;
        } else {
            match c {
                '+' => Kind::Plus,
                '-' => Kind::Minus,
                '*' => Kind::Star,
                '/' => Kind::Slash,
                '^' => Kind::Caret,
                '(' => Kind::LParen,
                ')' => Kind::RParen,
                _ => {
                    return Err(Error::Parse {
                        line: tl,
                        column: tc,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            }
        };
        out.push(Token {
            kind,
            line: tl,
            column: tc,
        });
        column += 1;
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    tokens: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn error_at(&self, line: usize, column: usize, message: String) -> Error {
        Error::Parse {
            line,
            column,
            message,
        }
    }

    fn error_here(&self, message: &str) -> Error {
        match self.peek() {
            Some(t) => self.error_at(t.line, t.column, format!("{message}, found {}", t.kind.describe())),
            None => match self.pos.checked_sub(1).and_then(|i| self.tokens.get(i)) {
                Some(prev) => self.error_at(
                    self.end.0,
                    self.end.1,
                    format!("{message} after {}, found end of input", prev.kind.describe()),
                ),
                None => self.error_at(self.end.0, self.end.1, format!("{message}, found end of input")),
            },
        }
    }

    fn eat(&mut self, kind: &Kind) -> bool {
        if self.peek().map(|t| &t.kind) == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Kind::Plus) {
                let rhs = self.term()?;
                acc = acc.add_unchecked(&rhs);
            } else if self.eat(&Kind::Minus) {
                let rhs = self.term()?;
                acc = acc.add_unchecked(&rhs.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    // term := unary (('*' | '/') unary)*
    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Kind::Star) {
                let rhs = self.unary()?;
                acc = acc.mul_unchecked(&rhs);
            } else if self.peek().map(|t| &t.kind) == Some(&Kind::Slash) {
                let (line, column) = {
                    let t = self.peek().unwrap();
                    (t.line, t.column)
                };
                self.pos += 1;
                let rhs = self.unary()?;
                if !rhs.is_constant() {
                    return Err(self.error_at(line, column, "division by a non-constant".into()));
                }
                if rhs.is_zero() {
                    return Err(self.error_at(line, column, "division by zero".into()));
                }
                let inv: Coeff = rhs.terms()[0].coeff.recip();
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<Polynomial> {
        if self.eat(&Kind::Minus) {
            return Ok(self.unary()?.neg());
        }
        if self.eat(&Kind::Plus) {
            return self.unary();
        }
        self.power()
    }

    // power := atom ('^' integer)?
    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat(&Kind::Caret) {
            let exp = match self.peek() {
                Some(Token {
                    kind: Kind::Int(n),
                    line,
                    column,
                }) => {
                    let e = n.to_u32().filter(|e| *e <= u16::MAX as u32);
                    let (line, column) = (*line, *column);
                    self.pos += 1;
                    e.ok_or_else(|| self.error_at(line, column, "exponent too large".into()))?
                }
                _ => return Err(self.error_here("expected a non-negative integer exponent")),
            };
            if let Some(t) = self.peek() {
                if t.kind == Kind::Caret {
                    return Err(self.error_at(t.line, t.column, "chained exponents need parentheses".into()));
                }
            }
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return Err(self.error_here("expected a variable, number or `(`")),
        };
        let value = match &tok.kind {
            Kind::Ident(name) => match self.ring.index_of(name) {
                Some(i) => Polynomial::var(self.ring, i),
                None => {
                    return Err(self.error_at(tok.line, tok.column, format!("unknown variable `{name}`")))
                }
            },
            Kind::Int(n) => Polynomial::constant(self.ring, Coeff::from_integer(n.clone())),
            Kind::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(&Kind::RParen) {
                    return Err(self.error_here("expected `)`"));
                }
                return self.reject_juxtaposition(inner);
            }
            _ => return Err(self.error_here("expected a variable, number or `(`")),
        };
        self.pos += 1;
        self.reject_juxtaposition(value)
    }

    fn reject_juxtaposition(&self, value: Polynomial) -> Result<Polynomial> {
        if let Some(t) = self.peek() {
            if matches!(t.kind, Kind::Ident(_) | Kind::Int(_) | Kind::LParen) {
                return Err(self.error_at(
                    t.line,
                    t.column,
                    format!("missing operator before {} (write `*` for products)", t.kind.describe()),
                ));
            }
        }
        Ok(value)
    }
}

/// Parses a rational literal `p` or `p/q` (optionally signed).
pub fn parse_rational(text: &str) -> Option<Coeff> {
    let t = text.trim();
    let (neg, t) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let value = match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Coeff::new(p, q)
        }
        None => Coeff::from_integer(t.parse().ok()?),
    };
    Some(if neg { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<Ring> {
        Ring::new(&["x", "y", "x1", "x5"]).unwrap()
    }

    #[test]
    fn precedence() {
        let r = ring();
        assert_eq!(parse_polynomial(&r, "1 + 2*x^2").unwrap().to_string(), "2*x^2 + 1");
        assert_eq!(parse_polynomial(&r, "-x^2").unwrap().to_string(), "-x^2");
        assert_eq!(parse_polynomial(&r, "(x - y)*(x + y)").unwrap().to_string(), "x^2 - y^2");
        assert_eq!(parse_polynomial(&r, "3/6*x").unwrap().to_string(), "1/2*x");
        assert_eq!(parse_polynomial(&r, "x - y - x").unwrap().to_string(), "-y");
    }

    #[test]
    fn implicit_multiplication_is_rejected() {
        let r = ring();
        let err = parse_polynomial(&r, "2x").unwrap_err();
        assert!(matches!(err, Error::Parse { column: 2, .. }), "{err}");
        let err = parse_polynomial(&r, "x1x5").unwrap_err();
        assert!(err.to_string().contains("unknown variable `x1x5`"));
        assert!(parse_polynomial(&r, "x (y)").is_err());
    }

    #[test]
    fn dangling_operator_points_past_the_end() {
        let r = ring();
        let err = parse_polynomial(&r, "x+").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 1,
                column: 3,
                message: "expected a variable, number or `(` after `+`, found end of input".into()
            }
        );
    }

    #[test]
    fn division_must_be_by_a_nonzero_constant() {
        let r = ring();
        assert!(parse_polynomial(&r, "x/y").is_err());
        assert!(parse_polynomial(&r, "x/0").is_err());
        assert_eq!(parse_polynomial(&r, "x/(2*3)").unwrap().to_string(), "1/6*x");
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("-3/6"), Some(Coeff::new((-1).into(), 2.into())));
        assert_eq!(parse_rational("7"), Some(Coeff::from_integer(7.into())));
        assert_eq!(parse_rational("1/0"), None);
    }
}
