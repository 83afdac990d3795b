use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::element::term_text;
use super::monomial::{VarIndex, WeylMonomial};
use super::{num_vars, WeylElement};
use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::scalars::{join_signed, Rational, UPoly};

/// Polynomial function on `Alt_n` in the coordinates `x[i,j]`, `i < j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AltPoly {
    n: usize,
    terms: BTreeMap<Vec<u32>, UPoly>,
}

impl AltPoly {
    pub fn zero(n: usize) -> Self {
        AltPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        AltPoly::monomial(n, vec![0; num_vars(n)], UPoly::one())
    }

    pub fn monomial(n: usize, exps: Vec<u32>, c: UPoly) -> Self {
        assert_eq!(exps.len(), num_vars(n), "exponent vector length");
        let mut p = AltPoly::zero(n);
        p.add_term(exps, &c);
        p
    }

    /// Coordinate function `x[i,j]` with the alternating sign convention.
    pub fn coordinate(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::IndexOutOfRange { i, j, n });
        }
        if i == j {
            return Ok(AltPoly::zero(n));
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        let mut exps = vec![0; num_vars(n)];
        exps[VarIndex::new(n, a, b)?.position(n)] = 1;
        Ok(AltPoly::monomial(n, exps, UPoly::constant(Rational::integer(sign))))
    }

    /// Every monomial `x^a` with total degree at most `max_degree`.
    pub fn monomials_up_to(n: usize, max_degree: u32) -> Vec<AltPoly> {
        let k = num_vars(n);
        let mut out = Vec::new();
        let mut exps = vec![0u32; k];
        fn rec(pos: usize, left: u32, exps: &mut Vec<u32>, n: usize, out: &mut Vec<AltPoly>) {
            if pos == exps.len() {
                out.push(AltPoly::monomial(n, exps.clone(), UPoly::one()));
                return;
            }
            for e in 0..=left {
                exps[pos] = e;
                rec(pos + 1, left - e, exps, n, out);
            }
            exps[pos] = 0;
        }
        rec(0, max_degree, &mut exps, n, &mut out);
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &UPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: &UPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> AltPoly {
        let mut out = AltPoly::zero(self.n);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), &v.scale(c));
        }
        out
    }

    pub fn pow(&self, exp: u32) -> AltPoly {
        let mut acc = AltPoly::one(self.n);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for AltPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = VarIndex::all(self.n);
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let m = WeylMonomial::from_exponents(e.clone(), vec![0; e.len()]);
            let ops = m.factors_text(&vars, "d");
            for (k, r) in c.terms().rev() {
                parts.push(term_text(r, k, &ops));
            }
        }
        f.write_str(&join_signed(parts))
    }
}

impl fmt::Debug for AltPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AltPoly(n={}: {})", self.n, self)
    }
}

impl<'a> Add<&'a AltPoly> for &'a AltPoly {
    type Output = AltPoly;
    fn add(self, rhs: &AltPoly) -> AltPoly {
        assert_eq!(self.n, rhs.n, "AltPoly sizes differ");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a AltPoly> for &'a AltPoly {
    type Output = AltPoly;
    fn sub(self, rhs: &AltPoly) -> AltPoly {
        self + &rhs.scale(&Rational::integer(-1))
    }
}

impl<'a> Mul<&'a AltPoly> for &'a AltPoly {
    type Output = AltPoly;
    fn mul(self, rhs: &AltPoly) -> AltPoly {
        assert_eq!(self.n, rhs.n, "AltPoly sizes differ");
        let mut out = AltPoly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }
}

/// Commutative polynomial in `x[i,j]` and the symbol variables `xi[i,j]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymbolPoly {
    n: usize,
    terms: BTreeMap<WeylMonomial, UPoly>,
}

impl SymbolPoly {
    pub fn zero(n: usize) -> Self {
        SymbolPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        SymbolPoly::scalar(n, UPoly::one())
    }

    pub fn scalar(n: usize, c: UPoly) -> Self {
        let mut p = SymbolPoly::zero(n);
        p.add_term(WeylMonomial::one(n), &c);
        p
    }

    /// Reinterprets `x^a d^b` as the commutative monomial `x^a xi^b`.
    pub fn from_monomial(n: usize, m: WeylMonomial, c: UPoly) -> Self {
        let mut p = SymbolPoly::zero(n);
        p.add_term(m, &c);
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylMonomial, &UPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: WeylMonomial, c: &UPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale_upoly(&self, c: &UPoly) -> SymbolPoly {
        let mut out = SymbolPoly::zero(self.n);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &(v * c));
        }
        out
    }
}

/// Replaces every `d[i,j]` by `xi[i,j]` in the normal-ordered form.
pub fn total_symbol(p: &WeylElement) -> SymbolPoly {
    let mut out = SymbolPoly::zero(p.n());
    for (m, c) in p.terms() {
        out.add_term(m.clone(), c);
    }
    out
}

/// The part of the total symbol of maximal `d`-degree.
pub fn principal_symbol(p: &WeylElement) -> SymbolPoly {
    let mut out = SymbolPoly::zero(p.n());
    let Some(order) = p.order() else {
        return out;
    };
    for (m, c) in p.terms() {
        if m.d_degree() == order {
            out.add_term(m.clone(), c);
        }
    }
    out
}

impl fmt::Display for SymbolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = VarIndex::all(self.n);
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let ops = m.factors_text(&vars, "xi");
            for (e, r) in c.terms().rev() {
                parts.push(term_text(r, e, &ops));
            }
        }
        f.write_str(&join_signed(parts))
    }
}

impl fmt::Debug for SymbolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymbolPoly(n={}: {})", self.n, self)
    }
}

impl<'a> Add<&'a SymbolPoly> for &'a SymbolPoly {
    type Output = SymbolPoly;
    fn add(self, rhs: &SymbolPoly) -> SymbolPoly {
        assert_eq!(self.n, rhs.n, "SymbolPoly sizes differ");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a SymbolPoly> for &'a SymbolPoly {
    type Output = SymbolPoly;
    fn sub(self, rhs: &SymbolPoly) -> SymbolPoly {
        self + &-rhs
    }
}

impl<'a> Mul<&'a SymbolPoly> for &'a SymbolPoly {
    type Output = SymbolPoly;
    fn mul(self, rhs: &SymbolPoly) -> SymbolPoly {
        assert_eq!(self.n, rhs.n, "SymbolPoly sizes differ");
        let mut out = SymbolPoly::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.commutative_mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &SymbolPoly {
    type Output = SymbolPoly;
    fn neg(self) -> SymbolPoly {
        SymbolPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Ring for SymbolPoly {
    type Ctx = usize;

    fn ctx(&self) -> usize {
        self.n
    }
    fn zero(n: &usize) -> Self {
        SymbolPoly::zero(*n)
    }
    fn one(n: &usize) -> Self {
        SymbolPoly::one(*n)
    }
    fn is_zero(&self) -> bool {
        SymbolPoly::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale_upoly(&UPoly::constant(c.clone()))
    }
    fn commutes_with(&self, _: &Self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_symbol_keeps_top_order() {
        let n = 2;
        let x = WeylElement::x(n, 1, 2).unwrap();
        let d = WeylElement::d(n, 1, 2).unwrap();
        let p = &(&x * &d) + &WeylElement::one(n);
        let sigma = principal_symbol(&p);
        assert_eq!(sigma.len(), 1);
        assert_eq!(sigma.to_string(), "x[1,2]xi[1,2]");
        assert_eq!(total_symbol(&WeylElement::one(n)), SymbolPoly::one(n));
        assert_eq!(total_symbol(&p).to_string(), "x[1,2]xi[1,2] + 1");
    }

    #[test]
    fn monomial_enumeration_counts() {
        // C(3 + 3, 3) monomials of degree <= 3 in 3 variables
        assert_eq!(AltPoly::monomials_up_to(3, 3).len(), 20);
        assert_eq!(AltPoly::monomials_up_to(4, 3).len(), 84);
    }

    #[test]
    fn coordinate_signs() {
        let a = AltPoly::coordinate(3, 2, 1).unwrap();
        let b = AltPoly::coordinate(3, 1, 2).unwrap();
        assert_eq!(&a + &b, AltPoly::zero(3));
        assert!(AltPoly::coordinate(3, 2, 2).unwrap().is_zero());
    }
}
