//! Recursive-descent parser for the polynomial text grammar:
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary ('*' unary)*
//! unary    := ('+' | '-') unary | power
//! power    := base ('^' uint)?
//! base     := rational | var | '(' expr ')'
//! var      := 'x' uint            (1-based)
//! rational := int ('/' uint)?
//! ```
//!
//! Products and powers are expanded eagerly. Implicit multiplication is rejected.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational as Rational;
use num_traits::{ToPrimitive, Zero};

use super::Polynomial;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Int(v) => format!("'{v}'"),
            Token::Var(i) => format!("'x{i}'"),
            Token::Plus => "'+'".into(),
            Token::Minus => "'-'".into(),
            Token::Star => "'*'".into(),
            Token::Slash => "'/'".into(),
            Token::Caret => "'^'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
        }
    }
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = text[start..i].parse().map_err(|_| syntax(start, "invalid integer"))?;
                out.push((start, Token::Int(v)));
                continue;
            }
            b'x' => {
                i += 1;
                let digits = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits == i {
                    return Err(syntax(start, "expected variable index after 'x'"));
                }
                let idx: usize = text[digits..i]
                    .parse()
                    .map_err(|_| syntax(start, "variable index too large"))?;
                if idx == 0 {
                    return Err(syntax(start, "variables are 1-based (x1, x2, ...)"));
                }
                out.push((start, Token::Var(idx)));
                continue;
            }
            b'+' => out.push((start, Token::Plus)),
            b'-' => out.push((start, Token::Minus)),
            b'*' => out.push((start, Token::Star)),
            b'/' => out.push((start, Token::Slash)),
            b'^' => out.push((start, Token::Caret)),
            b'(' => out.push((start, Token::LParen)),
            b')' => out.push((start, Token::RParen)),
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character '{ch}'")));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [(usize, Token)],
    pos: usize,
    end: usize,
    n: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t);
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while let Some(Token::Star) = self.peek() {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                Ok(-self.unary()?)
            }
            Some(Token::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if let Some(Token::Caret) = self.peek() {
            self.bump();
            let at = self.offset();
            match self.bump().cloned() {
                Some(Token::Int(e)) => {
                    let e = e.to_u32().ok_or_else(|| syntax(at, "exponent too large"))?;
                    return Ok(base.pow(e));
                }
                Some(Token::Minus) => return Err(Error::NegativeExponent { position: at }),
                Some(t) => {
                    return Err(syntax(
                        at,
                        format!("expected non-negative integer exponent, found {}", t.describe()),
                    ))
                }
                None => return Err(syntax(at, "expected exponent after '^'")),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial> {
        let at = self.offset();
        match self.bump().cloned() {
            Some(Token::Int(num)) => {
                if let Some(Token::Slash) = self.peek() {
                    self.bump();
                    let den_at = self.offset();
                    match self.bump().cloned() {
                        Some(Token::Int(den)) if !den.is_zero() => {
                            Ok(Polynomial::constant(self.n, Rational::new(num, den)))
                        }
                        Some(Token::Int(_)) => Err(syntax(den_at, "division by zero")),
                        _ => Err(syntax(den_at, "expected integer denominator after '/'")),
                    }
                } else {
                    Ok(Polynomial::constant(self.n, Rational::from_integer(num)))
                }
            }
            Some(Token::Var(idx)) => {
                if idx > self.n {
                    return Err(Error::VariableOutOfRange {
                        position: at,
                        index: idx,
                        n: self.n,
                    });
                }
                Ok(Polynomial::variable(self.n, idx - 1))
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(syntax(close, "expected ')'")),
                }
            }
            Some(t) => Err(syntax(at, format!("unexpected {}", t.describe()))),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

/// Parses `text` as a polynomial in the variables `x1, ..., xn`.
pub fn parse(text: &str, n: usize) -> Result<Polynomial> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(syntax(0, "empty expression"));
    }
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        end: text.len(),
        n,
    };
    let poly = parser.expr()?;
    if let Some((at, tok)) = tokens.get(parser.pos) {
        let message = match tok {
            Token::Var(_) | Token::Int(_) | Token::LParen => format!(
                "unexpected {} (implicit multiplication is not supported; use '*')",
                tok.describe()
            ),
            _ => format!("unexpected {}", tok.describe()),
        };
        return Err(syntax(*at, message));
    }
    Ok(poly)
}

/// Parses `text`, taking the variable count from the highest index used
/// (at least 1). Returns the polynomial and the inferred count.
pub fn parse_inferring_count(text: &str) -> Result<(Polynomial, usize)> {
    let n = tokenize(text)?
        .iter()
        .filter_map(|(_, t)| match t {
            Token::Var(i) => Some(*i),
            _ => None,
        })
        .max()
        .unwrap_or(1);
    Ok((parse(text, n)?, n))
}

impl core::str::FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_inferring_count(s).map(|(p, _)| p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::polynomial::ExponentVector;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn parses_circle() {
        let f = parse("x1^2 + x2^2 - 1", 2).unwrap();
        let expected = Polynomial::from_terms(
            2,
            [(ev(&[2, 0]), rat(1)), (ev(&[0, 2]), rat(1)), (ev(&[0, 0]), rat(-1))],
        )
        .unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn expands_square() {
        let f = parse("(x1 - x2)^2", 2).unwrap();
        let expected = Polynomial::from_terms(
            2,
            [(ev(&[2, 0]), rat(1)), (ev(&[1, 1]), rat(-2)), (ev(&[0, 2]), rat(1))],
        )
        .unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn zero_and_cancellation() {
        assert!(parse("0", 2).unwrap().is_zero());
        assert!(parse("x1 - x1", 3).unwrap().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("x1^-2", 1), Err(Error::NegativeExponent { position: 3 }));
        assert!(matches!(
            parse("x1 + x3", 2),
            Err(Error::VariableOutOfRange {
                position: 5,
                index: 3,
                n: 2
            })
        ));
        assert!(matches!(parse("2x1", 1), Err(Error::Syntax { position: 1, .. })));
        assert!(matches!(parse("x1 +", 1), Err(Error::Syntax { position: 4, .. })));
        assert!(matches!(parse("(x1", 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x1 ? 2", 1), Err(Error::Syntax { position: 3, .. })));
        assert!(matches!(parse("1/0", 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x0", 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse("", 1), Err(Error::Syntax { .. })));
    }

    #[test]
    fn rationals_and_unary_minus() {
        let f = parse("-2/3*x1 + -(x2)^2", 2).unwrap();
        assert_eq!(f.to_text(), "-x2^2 - 2/3*x1");
        assert_eq!(parse("-x1^2", 1).unwrap().to_text(), "-x1^2");
    }

    #[test]
    fn infers_variable_count() {
        let (f, n) = parse_inferring_count("x3 - 1").unwrap();
        assert_eq!(n, 3);
        assert_eq!(f.nvars(), 3);
        assert_eq!(parse_inferring_count("7").unwrap().1, 1);
    }
}
