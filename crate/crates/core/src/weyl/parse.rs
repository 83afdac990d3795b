//! Recursive-descent parser for the canonical text form of [`WeylElement`].
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' int]
//! atom   := int ['/' int] | 'u' | ('x'|'d') '[' int ',' int ']' | '(' expr ')'
//! ```
//!
//! Products are taken in the Weyl algebra, so `d[1,2] x[1,2]` parses to
//! `x[1,2]d[1,2] + 1`. Reversed index pairs carry a sign; diagonal ones are 0.

use num_bigint::BigInt;

use super::monomial::GenKind;
use super::{signed_generator, WeylElement};
use crate::error::{Error, Result};
use crate::scalars::Rational;

pub fn parse_element(text: &str, n: usize) -> Result<WeylElement> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, n };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    n: usize,
}

impl Parser {
    fn error(&self, msg: impl Into<String>) -> Error {
        let mut line = 1;
        let mut col = 1;
        for c in &self.chars[..self.pos.min(self.chars.len())] {
            if *c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        Error::Parse { line, col, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.error(format!("expected `{want}`, found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<WeylElement> {
        let mut acc = WeylElement::zero(self.n);
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -1
            }
            Some('+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            sign = match self.peek() {
                Some('+') => 1,
                Some('-') => -1,
                _ => return Ok(acc),
            };
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<WeylElement> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                }
                Some(c) if c.is_ascii_digit() || matches!(c, 'u' | 'x' | 'd' | '(') => {}
                _ => return Ok(acc),
            }
            let f = self.factor()?;
            acc = &acc * &f;
        }
    }

    fn factor(&mut self) -> Result<WeylElement> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| {
                self.pos = start;
                self.error("exponent too large")
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<WeylElement> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        self.pos = at;
                        return Err(self.error("zero denominator"));
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                let r = Rational::from_bigints(num, den)?;
                Ok(WeylElement::rational(self.n, r))
            }
            Some('u') => {
                self.pos += 1;
                Ok(WeylElement::u(self.n))
            }
            Some(c @ ('x' | 'd')) => {
                let at = self.pos;
                self.pos += 1;
                let kind = if c == 'x' { GenKind::Mult } else { GenKind::Deriv };
                self.expect('[')?;
                self.skip_ws();
                let i = self.index()?;
                self.expect(',')?;
                self.skip_ws();
                let j = self.index()?;
                self.expect(']')?;
                signed_generator(self.n, i, j, kind).map_err(|e| {
                    self.pos = at;
                    self.error(e.to_string())
                })
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn index(&mut self) -> Result<usize> {
        let start = self.pos;
        let v = self.integer()?;
        v.try_into().map_err(|_| {
            self.pos = start;
            self.error("index too large")
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::UPoly;

    #[test]
    fn parses_canonical_text() {
        let n = 2;
        let x = WeylElement::x(n, 1, 2).unwrap();
        let d = WeylElement::d(n, 1, 2).unwrap();
        let half = Rational::new(1, 2).unwrap();
        let expected = &(&x * &d) + &WeylElement::scalar(n, &UPoly::u().pow(2) + &UPoly::constant(half));
        assert_eq!(parse_element("x[1,2]d[1,2] + u^2 + 1/2", n).unwrap(), expected);
        assert_eq!(parse_element(&expected.to_string(), n).unwrap(), expected);
    }

    #[test]
    fn products_are_weyl_products() {
        let n = 2;
        let e = parse_element("d[1,2] * x[1,2]", n).unwrap();
        assert_eq!(e.to_string(), "x[1,2]d[1,2] + 1");
        assert_eq!(parse_element("x[2,1]", n).unwrap(), -&WeylElement::x(n, 1, 2).unwrap());
        assert!(parse_element("d[2,2]", n).unwrap().is_zero());
        assert_eq!(parse_element("-(u + 1)^2", n).unwrap().to_string(), "-u^2 - 2u - 1");
    }

    #[test]
    fn round_trips_fractions() {
        let n = 3;
        let text = "x[1,2]^2d[1,3] - 3/2 x[1,2]";
        assert_eq!(parse_element(text, n).unwrap().to_string(), text);
        let text = "u^3 + 3/2 u";
        assert_eq!(parse_element(text, n).unwrap().to_string(), text);
    }

    #[test]
    fn reports_positions() {
        let err = parse_element("x[1,2] +\n  y", 2).unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, col: 3, msg: "unexpected `y`".into() });
        assert!(matches!(parse_element("x[1,3]", 2), Err(Error::Parse { line: 1, col: 1, .. })));
        assert!(matches!(parse_element("1/0", 2), Err(Error::Parse { col: 3, .. })));
        assert!(matches!(parse_element("(u", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse_element("", 2), Err(Error::Parse { .. })));
    }
}
