//! Text syntax for scalars and polynomials.
//!
//! Scalars are polynomials in `z` (the chosen root of unity) with rational
//! coefficients: `3/2`, `-z`, `1-2z+z^2`. Polynomials additionally use the
//! variables `x1, x2, …`. Juxtaposition multiplies, so `2z` and `(1+z)x1`
//! are accepted; division is only allowed by nonzero constants.

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactnum::{CycloNum, FieldRef, Rational};
use crate::polymod::MultiPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{msg} at column {col}")]
pub struct ParseError {
    pub msg: String,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Zeta,
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((Tok::Num(digits.parse().expect("digits")), col));
                continue;
            }
            'z' => out.push((Tok::Zeta, col)),
            'x' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == start {
                    return Err(ParseError {
                        msg: "variable needs an index, e.g. x1".into(),
                        col,
                    });
                }
                let idx: usize = chars[start..j].iter().collect::<String>().parse().map_err(|_| {
                    ParseError {
                        msg: "bad variable index".into(),
                        col,
                    }
                })?;
                if idx == 0 {
                    return Err(ParseError {
                        msg: "variables are numbered from x1".into(),
                        col,
                    });
                }
                out.push((Tok::Var(idx - 1), col));
                i = j;
                continue;
            }
            '+' => out.push((Tok::Plus, col)),
            '-' => out.push((Tok::Minus, col)),
            '*' => out.push((Tok::Star, col)),
            '/' => out.push((Tok::Slash, col)),
            '^' => out.push((Tok::Caret, col)),
            '(' => out.push((Tok::LParen, col)),
            ')' => out.push((Tok::RParen, col)),
            other => {
                return Err(ParseError {
                    msg: format!("unexpected character '{other}'"),
                    col,
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    field: &'a FieldRef,
    nvars: usize,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            msg: msg.into(),
            col: self.col(),
        })
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -&self.term()?
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let col = self.col();
                    let d = self.power()?;
                    let c = match d.as_constant() {
                        Some(Some(c)) => c.clone(),
                        Some(None) => return Err(ParseError { msg: "division by zero".into(), col }),
                        None => {
                            return Err(ParseError {
                                msg: "division by a non-constant".into(),
                                col,
                            })
                        }
                    };
                    acc = acc.scale(&c.inv().expect("nonzero"));
                }
                Some(Tok::Num(_) | Tok::Zeta | Tok::Var(_) | Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().or_else(|_| self.err("exponent too large"))?;
                    if base.is_zero() {
                        return Ok(if e == 0 {
                            MultiPoly::one(self.field, self.nvars)
                        } else {
                            base
                        });
                    }
                    Ok(base.pow(e))
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        match tok {
            Tok::Num(n) => {
                self.pos += 1;
                Ok(MultiPoly::constant(
                    CycloNum::from_rational(self.field, Rational::from_integer(n)),
                    self.nvars,
                ))
            }
            Tok::Zeta => {
                self.pos += 1;
                Ok(MultiPoly::constant(CycloNum::zeta_pow(self.field, 1), self.nvars))
            }
            Tok::Var(i) => {
                if i >= self.nvars {
                    return self.err(format!("variable x{} out of range (ℓ = {})", i + 1, self.nvars));
                }
                self.pos += 1;
                Ok(MultiPoly::var(self.field, self.nvars, i))
            }
            Tok::LParen => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::Minus => {
                self.pos += 1;
                Ok(-&self.power()?)
            }
            _ => self.err("expected a number, z, a variable or '('"),
        }
    }
}

/// Parses a polynomial in `x1..x{nvars}` over the given field.
pub fn parse_poly(s: &str, field: &FieldRef, nvars: usize) -> Result<MultiPoly, ParseError> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(ParseError {
            msg: "empty expression".into(),
            col: 1,
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        field,
        nvars,
        end_col: s.chars().count() + 1,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parses a scalar of the field (no variables allowed).
pub fn parse_scalar(s: &str, field: &FieldRef) -> Result<CycloNum, ParseError> {
    let p = parse_poly(s, field, 0)?;
    Ok(match p.as_constant() {
        Some(Some(c)) => c.clone(),
        _ => CycloNum::zero(field),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::CycloField;

    #[test]
    fn scalars() {
        let q = CycloField::rationals();
        assert_eq!(parse_scalar("3/2", &q).unwrap().to_string(), "3/2");
        assert_eq!(parse_scalar("-7", &q).unwrap().to_string(), "-7");
        assert_eq!(parse_scalar("1/2+1/3", &q).unwrap().to_string(), "5/6");

        let f3 = CycloField::new(3).unwrap();
        assert!(parse_scalar("1+z+z^2", &f3).unwrap().is_zero());
        assert_eq!(parse_scalar("1-2z+z^2", &f3).unwrap().to_string(), "-3*z");
        assert_eq!(parse_scalar("3/2z", &f3).unwrap().to_string(), "3/2*z");
        let f5 = CycloField::new(5).unwrap();
        let s = "1-2*z+z^2+3/2*z^3";
        assert_eq!(parse_scalar(s, &f5).unwrap().to_string(), s);
    }

    #[test]
    fn scalar_errors() {
        let q = CycloField::rationals();
        assert!(parse_scalar("x1", &q).is_err());
        assert!(parse_scalar("1/0", &q).is_err());
        assert!(parse_scalar("", &q).is_err());
        assert!(parse_scalar("2 $", &q).is_err());
        assert!(parse_scalar("(1+2", &q).is_err());
    }

    #[test]
    fn polynomials() {
        let f3 = CycloField::new(3).unwrap();
        let p = parse_poly("(1+z)*x1 - x2^2*x3", &f3, 3).unwrap();
        assert_eq!(p.to_string(), "-x2^2*x3+(1+z)*x1");
        let back = parse_poly(&p.to_string(), &f3, 3).unwrap();
        assert_eq!(back, p);
        assert!(parse_poly("x4", &f3, 3).is_err());
        assert!(parse_poly("x1/x2", &f3, 3).is_err());
        let q = CycloField::rationals();
        assert_eq!(parse_poly("2x1x2 - x1/2", &q, 2).unwrap().to_string(), "2*x1*x2-1/2*x1");
    }
}
