//! Polynomial expression grammar and printer.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' natural)?
//! atom   := ident | natural ('/' natural)? | '(' expr ')' | '-' factor
//! ```
//! Implicit multiplication is rejected.

use super::{MonomialOrder, Poly, Rat, Vars};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at {pos}")]
    UnknownIdent { pos: usize, name: String },
    #[error("exponent at {pos} is not a natural number")]
    BadExponent { pos: usize },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: Vars,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos, msg: msg.to_string() })
    }

    fn natural(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' => {
                    return self.err("implicit multiplication is not allowed");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            if matches!(self.peek(), Some(b'-')) {
                return Err(ParseError::BadExponent { pos: at });
            }
            let n = self.natural().ok_or(ParseError::BadExponent { pos: at })?;
            if self.peek() == Some(b'/') || self.peek() == Some(b'.') {
                return Err(ParseError::BadExponent { pos: at });
            }
            let n: u32 = n.try_into().map_err(|_| ParseError::BadExponent { pos: at })?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.natural().unwrap();
                let mut value = Rat::from_integer(n);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = match self.natural() {
                        Some(d) => d,
                        None => return self.err("expected denominator"),
                    };
                    if d.is_zero() {
                        return self.err("zero denominator");
                    }
                    value /= Rat::from_integer(d);
                }
                Ok(Poly::constant(self.vars.clone(), value))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(Poly::var(self.vars.clone(), i)),
                    None => Err(ParseError::UnknownIdent { pos: start, name: name.to_string() }),
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_poly(text: &str, vars: &Vars) -> Result<Poly, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars: vars.clone() };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String], e: &[u32]) -> fmt::Result {
    let mut first = true;
    for (i, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(&vars[i])?;
        if k > 1 {
            write!(f, "^{}", k)?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let order = MonomialOrder::grlex(self.nvars());
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by(|a, b| order.cmp(b.0, a.0));
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = e.iter().all(|&k| k == 0);
            if is_const {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write_monomial(f, self.vars(), e)?;
            } else {
                write!(f, "{}*", a)?;
                write_monomial(f, self.vars(), e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio, vars};
    use proptest::prelude::*;

    #[test]
    fn parses_sum_of_powers() {
        let v = vars(&["x", "y", "z", "t"]);
        let p = parse_poly("x^2+y^2+z^3+t^3", &v).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.coeff(&[0, 0, 3, 0]), rat(1));
    }

    #[test]
    fn parses_ca7_germ() {
        let v = vars(&["x", "y", "z", "t"]);
        let p = parse_poly("(x-z^2)^2-(y-t^2)^2+x^3-x^2*z^2+x^4+y^4", &v).unwrap();
        // x^2 - 2xz^2 + z^4 - y^2 + 2yt^2 - t^4 + x^3 - x^2z^2 + x^4 + y^4
        assert_eq!(p.len(), 10);
        assert_eq!(p.coeff(&[1, 0, 2, 0]), rat(-2));
        assert_eq!(p.coeff(&[2, 0, 2, 0]), rat(-1));
    }

    #[test]
    fn rational_coefficients() {
        let v = vars(&["x", "y", "t"]);
        let p = parse_poly("1/2*x*y - 3*t", &v).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(&[1, 1, 0]), ratio(1, 2));
        assert_eq!(p.to_string(), "1/2*x*y - 3*t");
    }

    #[test]
    fn errors() {
        let v = vars(&["x", "y"]);
        assert!(matches!(parse_poly("x + w", &v), Err(ParseError::UnknownIdent { pos: 4, .. })));
        assert!(matches!(parse_poly("x^-1", &v), Err(ParseError::BadExponent { .. })));
        assert!(matches!(parse_poly("x^1/2", &v), Err(ParseError::BadExponent { .. })));
        assert!(matches!(parse_poly("2x", &v), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("x*(y", &v), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("", &v), Err(ParseError::Syntax { .. })));
    }

    proptest! {
        #[test]
        fn printer_round_trips(ts in proptest::collection::vec(((0u32..4, 0u32..4), -9i64..10, 1i64..5), 0..6)) {
            let v = vars(&["x", "y"]);
            let p = Poly::from_terms(v.clone(), ts.into_iter().map(|((a, b), n, d)| (vec![a, b], ratio(n, d))));
            let q = parse_poly(&p.to_string(), &v).unwrap();
            prop_assert_eq!(p, q);
        }
    }
}
