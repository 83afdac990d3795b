use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{Map, Value};

use super::Rational;
use crate::error::{Error, Result};

/// Polynomial in the central indeterminate `u` with rational coefficients.
///
/// Zero coefficients are never stored, so the zero polynomial is the empty
/// map and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct UPoly {
    coeffs: BTreeMap<u32, Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UPolyOp {
    Add,
    Sub,
    Mul,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly::default()
    }

    pub fn one() -> Self {
        UPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UPoly::monomial(c, 0)
    }

    /// `c * u^exp`.
    pub fn monomial(c: Rational, exp: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        UPoly { coeffs }
    }

    /// The indeterminate `u` itself.
    pub fn u() -> Self {
        UPoly::monomial(Rational::one(), 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(terms: I) -> Self {
        let mut p = UPoly::zero();
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(Rational::is_one)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: u32) -> Rational {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Constant value, if the polynomial has degree at most zero.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.coeff(0)),
            _ => None,
        }
    }

    pub fn add_term(&mut self, exp: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, rhs: &UPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c);
        }
    }

    pub fn scale(&self, c: &Rational) -> UPoly {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> UPoly {
        let mut acc = UPoly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluation at a rational point (Horner).
    pub fn eval(&self, at: &Rational) -> Rational {
        let Some(deg) = self.degree() else {
            return Rational::zero();
        };
        let mut acc = Rational::zero();
        for e in (0..=deg).rev() {
            acc = &(&acc * at) + &self.coeff(e);
        }
        acc
    }

    /// `{"exp": "num/den"}` with exact fraction strings.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (e, c) in self.coeffs.iter().rev() {
            map.insert(e.to_string(), Value::String(c.to_fraction_string()));
        }
        Value::Object(map)
    }

    pub fn from_json(v: &Value) -> Result<UPoly> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Json("UPoly must be a JSON object".into()))?;
        let mut p = UPoly::zero();
        for (k, c) in obj {
            let e: u32 = k
                .parse()
                .map_err(|_| Error::Json(format!("bad exponent key `{k}`")))?;
            let c = c
                .as_str()
                .ok_or_else(|| Error::Json("coefficients must be strings".into()))?
                .parse::<Rational>()?;
            p.add_term(e, &c);
        }
        Ok(p)
    }
}

/// Exact `p op q`.
pub fn upoly_arith(p: &UPoly, q: &UPoly, op: UPolyOp) -> UPoly {
    match op {
        UPolyOp::Add => p + q,
        UPolyOp::Sub => p - q,
        UPolyOp::Mul => p * q,
    }
}

/// Writes one `c * var^exp` term in the canonical text style shared by every
/// printed object: integers are juxtaposed (`8x^3`), fractions are separated
/// by a space (`3/2 u`), unit coefficients are dropped.
pub(crate) fn fmt_scaled_power(c: &Rational, var: &str, exp: u32) -> String {
    let power = match exp {
        0 => String::new(),
        1 => var.to_string(),
        e => format!("{var}^{e}"),
    };
    if power.is_empty() {
        return c.to_string();
    }
    if c.is_one() {
        power
    } else if (-c).is_one() {
        format!("-{power}")
    } else if c.is_integer() {
        format!("{c}{power}")
    } else {
        format!("{c} {power}")
    }
}

/// Joins signed term strings into `a + b - c` form.
pub(crate) fn join_signed<I: IntoIterator<Item = String>>(terms: I) -> String {
    let mut out = String::new();
    for (idx, t) in terms.into_iter().enumerate() {
        match (idx, t.strip_prefix('-')) {
            (0, _) => out.push_str(&t),
            (_, Some(rest)) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            (_, None) => {
                out.push_str(" + ");
                out.push_str(&t);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for UPoly {
    /// Descending powers: `u^2 + 1/2`, `u^3 + 3/2 u`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .rev()
            .map(|(e, c)| fmt_scaled_power(c, "u", *e));
        f.write_str(&join_signed(terms))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

impl<'a> Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<'a> Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        let mut out = UPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl From<Rational> for UPoly {
    fn from(c: Rational) -> Self {
        UPoly::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn examples() {
        let u = UPoly::u();
        assert_eq!(&u * &u, UPoly::monomial(Rational::one(), 2));
        let p = UPoly::from_terms([(2, q(1, 1)), (0, q(1, 2))]);
        let r = &p + &UPoly::monomial(q(-1, 1), 2);
        assert_eq!(r, UPoly::constant(q(1, 2)));
        assert_eq!(r.len(), 1);
        let a = &u + &UPoly::one();
        let b = &u - &UPoly::one();
        assert_eq!(&a * &b, UPoly::from_terms([(2, q(1, 1)), (0, q(-1, 1))]));
    }

    #[test]
    fn text_form() {
        let p = UPoly::from_terms([(2, q(1, 1)), (0, q(1, 2))]);
        assert_eq!(p.to_string(), "u^2 + 1/2");
        let p = UPoly::from_terms([(3, q(1, 1)), (1, q(3, 2))]);
        assert_eq!(p.to_string(), "u^3 + 3/2 u");
        let p = UPoly::from_terms([(1, q(-2, 1)), (0, q(-1, 3))]);
        assert_eq!(p.to_string(), "-2u - 1/3");
        assert_eq!(UPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_roundtrip() {
        let p = UPoly::from_terms([(2, q(1, 1)), (0, q(1, 2))]);
        let v = p.to_json();
        assert_eq!(v.to_string(), r#"{"2":"1/1","0":"1/2"}"#);
        assert_eq!(UPoly::from_json(&v).unwrap(), p);
    }

    #[test]
    fn degree_and_eval() {
        let p = UPoly::from_terms([(3, q(1, 1)), (1, q(3, 2))]);
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.eval(&q(2, 1)), q(11, 1));
        assert_eq!(UPoly::zero().degree(), None);
    }
}
