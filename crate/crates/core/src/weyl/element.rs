use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use super::monomial::{GenKind, Generator, SignedGenerator, VarIndex, WeylMonomial};
use super::num_vars;
use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::scalars::{fmt_scaled_power, join_signed, Rational, UPoly};

/// Element of `PD(Alt_n)` with coefficients in `Q[u]`, stored as a map from
/// normal-ordered monomials to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    n: usize,
    terms: BTreeMap<WeylMonomial, UPoly>,
}

impl WeylElement {
    pub fn zero(n: usize) -> Self {
        WeylElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        WeylElement::scalar(n, UPoly::one())
    }

    pub fn scalar(n: usize, c: UPoly) -> Self {
        WeylElement::from_monomial(n, WeylMonomial::one(n), c)
    }

    pub fn rational(n: usize, c: Rational) -> Self {
        WeylElement::scalar(n, UPoly::constant(c))
    }

    /// `u` as an element of the center.
    pub fn u(n: usize) -> Self {
        WeylElement::scalar(n, UPoly::u())
    }

    pub fn from_monomial(n: usize, m: WeylMonomial, c: UPoly) -> Self {
        debug_assert_eq!(m.x.len(), num_vars(n));
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        WeylElement { n, terms }
    }

    pub fn generator(n: usize, g: Generator) -> Self {
        WeylElement::from_monomial(n, WeylMonomial::generator(n, g), UPoly::one())
    }

    /// `x[i,j]` for `i < j`.
    pub fn x(n: usize, i: usize, j: usize) -> Result<Self> {
        signed_generator(n, i, j, GenKind::Mult)
    }

    /// `d[i,j]` for `i < j`.
    pub fn d(n: usize, i: usize, j: usize) -> Result<Self> {
        signed_generator(n, i, j, GenKind::Deriv)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&WeylMonomial, &UPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &WeylMonomial) -> UPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Coefficient of the monomial 1.
    pub fn constant_term(&self) -> UPoly {
        self.coeff(&WeylMonomial::one(self.n))
    }

    /// Largest total `d`-degree over all monomials (`None` for zero).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(WeylMonomial::d_degree).max()
    }

    /// Coefficient of `u^k` as a `u`-free element.
    pub fn u_coefficient(&self, k: u32) -> WeylElement {
        let mut out = WeylElement::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &UPoly::constant(c.coeff(k)));
        }
        out
    }

    /// Substitutes a rational value for `u`.
    pub fn specialize(&self, at: &Rational) -> WeylElement {
        let mut out = WeylElement::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &UPoly::constant(c.eval(at)));
        }
        out
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

    pub fn scale_upoly(&self, c: &UPoly) -> WeylElement {
        let mut out = WeylElement::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &(v * c));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> WeylElement {
        if c.is_zero() {
            return WeylElement::zero(self.n);
        }
        WeylElement {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v.scale(c))).collect(),
        }
    }

    /// In-place `self += rhs`; panics if the sizes differ.
    pub fn add_assign_ref(&mut self, rhs: &WeylElement) {
        assert_eq!(self.n, rhs.n, "WeylElement sizes differ");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn try_add(&self, rhs: &WeylElement) -> Result<WeylElement> {
        check_same_n(self.n, rhs.n)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> WeylElement {
        let mut acc = WeylElement::one(self.n);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Bitmasks of the coordinates carrying an `x` and a `d` factor, when
    /// `n(n-1)/2 <= 64`.
    fn support_masks(&self) -> Option<(u64, u64)> {
        if num_vars(self.n) > 64 {
            return None;
        }
        let (mut xs, mut ds) = (0u64, 0u64);
        for m in self.terms.keys() {
            for (p, (a, b)) in m.x.iter().zip(&m.d).enumerate() {
                if *a > 0 {
                    xs |= 1 << p;
                }
                if *b > 0 {
                    ds |= 1 << p;
                }
            }
        }
        Some((xs, ds))
    }

    pub fn to_json(&self) -> Value {
        let vars = VarIndex::all(self.n);
        let exps = |e: &[u32]| {
            let mut map = Map::new();
            for (v, k) in vars.iter().zip(e) {
                if *k > 0 {
                    map.insert(format!("{},{}", v.i(), v.j()), json!(k));
                }
            }
            Value::Object(map)
        };
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| json!({"x": exps(&m.x), "d": exps(&m.d), "coeff": c.to_json()}))
            .collect();
        json!({"n": self.n, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<WeylElement> {
        let bad = |m: &str| Error::Json(m.to_string());
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("missing `n`"))? as usize;
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing `terms`"))?;
        let mut out = WeylElement::zero(n);
        for t in terms {
            let mut m = WeylMonomial::one(n);
            for (key, slot) in [("x", 0), ("d", 1)] {
                let obj = t.get(key).and_then(Value::as_object).ok_or_else(|| bad("term exponents must be objects"))?;
                for (k, e) in obj {
                    let (i, j) = k.split_once(',').ok_or_else(|| bad("keys must be `i,j`"))?;
                    let i: usize = i.trim().parse().map_err(|_| bad("bad index"))?;
                    let j: usize = j.trim().parse().map_err(|_| bad("bad index"))?;
                    let p = VarIndex::new(n, i, j)?.position(n);
                    let e = e.as_u64().ok_or_else(|| bad("exponents must be integers"))? as u32;
                    if slot == 0 {
                        m.x[p] = e;
                    } else {
                        m.d[p] = e;
                    }
                }
            }
            let c = UPoly::from_json(t.get("coeff").ok_or_else(|| bad("missing `coeff`"))?)?;
            out.add_term(m, &c);
        }
        Ok(out)
    }

    /// Canonical text with `d` printed as `letter` (`d` for operators, `xi`
    /// for symbols).
    pub(crate) fn text_with(&self, d_letter: &str) -> String {
        let vars = VarIndex::all(self.n);
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let ops = m.factors_text(&vars, d_letter);
            for (e, r) in c.terms().rev() {
                parts.push(term_text(r, e, &ops));
            }
        }
        join_signed(parts)
    }
}

/// One printed term `c * u^e * ops`.
pub(crate) fn term_text(c: &Rational, e: u32, ops: &str) -> String {
    if ops.is_empty() {
        return fmt_scaled_power(c, "u", e);
    }
    if e == 0 {
        if c.is_one() {
            ops.to_string()
        } else if (-c).is_one() {
            format!("-{ops}")
        } else if c.is_integer() {
            format!("{c}{ops}")
        } else {
            format!("{c} {ops}")
        }
    } else {
        format!("{} {ops}", fmt_scaled_power(c, "u", e))
    }
}

fn check_same_n(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::SizeMismatch { left, right });
    }
    Ok(())
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `x^a d^b * x^c d^e` re-expressed in normal order. For each coordinate,
/// `d^b x^c = sum_k k! C(b,k) C(c,k) x^(c-k) d^(b-k)`; distinct coordinates
/// commute.
fn monomial_product(lhs: &WeylMonomial, rhs: &WeylMonomial) -> Vec<(Rational, WeylMonomial)> {
    let base = WeylMonomial {
        x: lhs.x.iter().zip(&rhs.x).map(|(a, b)| a + b).collect(),
        d: lhs.d.iter().zip(&rhs.d).map(|(a, b)| a + b).collect(),
    };
    // (position, [(k, weight)]) for every coordinate that needs reordering
    let mut choices: Vec<(usize, Vec<(u32, BigInt)>)> = Vec::new();
    for (p, (b, c)) in lhs.d.iter().zip(&rhs.x).enumerate() {
        if *b > 0 && *c > 0 {
            let mut opts = Vec::new();
            let mut fact = BigInt::from(1);
            for k in 0..=(*b).min(*c) {
                if k > 0 {
                    fact *= k;
                }
                opts.push((k, &fact * binomial(*b, k) * binomial(*c, k)));
            }
            choices.push((p, opts));
        }
    }
    if choices.is_empty() {
        return vec![(Rational::one(), base)];
    }
    let mut out = vec![(BigInt::from(1), base)];
    for (p, opts) in &choices {
        let mut next = Vec::with_capacity(out.len() * opts.len());
        for (w, m) in &out {
            for (k, weight) in opts {
                let mut m2 = m.clone();
                m2.x[*p] -= k;
                m2.d[*p] -= k;
                next.push((w * weight, m2));
            }
        }
        out = next;
    }
    out.into_iter().map(|(w, m)| (Rational::from_bigint(w), m)).collect()
}

/// Product in the Weyl algebra, normal ordered.
pub fn weyl_mul(a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
    check_same_n(a.n, b.n)?;
    let mut out = WeylElement::zero(a.n);
    for (m1, c1) in &a.terms {
        for (m2, c2) in &b.terms {
            let c = c1 * c2;
            for (w, m) in monomial_product(m1, m2) {
                out.add_term(m, &c.scale(&w));
            }
        }
    }
    Ok(out)
}

/// `a*b - b*a`.
pub fn commutator(a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
    let ab = weyl_mul(a, b)?;
    let ba = weyl_mul(b, a)?;
    Ok(&ab - &ba)
}

/// `x[i,j]` or `d[i,j]` for any `1 <= i,j <= n`, with `(j,i) = -(i,j)` and
/// zero on the diagonal.
pub fn signed_generator(n: usize, i: usize, j: usize, kind: GenKind) -> Result<WeylElement> {
    Ok(match (SignedGenerator { kind, i, j }).resolve(n)? {
        None => WeylElement::zero(n),
        Some((sign, g)) => {
            let e = WeylElement::generator(n, g);
            if sign < 0 {
                -&e
            } else {
                e
            }
        }
    })
}

/// The normal-ordering map on a word of generators: every `x` factor is
/// moved left of every `d` factor with no commutator corrections, and the
/// signs of the factors are multiplied.
pub fn normal_order_word(n: usize, word: &[SignedGenerator]) -> Result<WeylElement> {
    let mut m = WeylMonomial::one(n);
    let mut sign = 1i64;
    for g in word {
        match g.resolve(n)? {
            None => return Ok(WeylElement::zero(n)),
            Some((s, gen)) => {
                sign *= s as i64;
                let p = gen.var.position(n);
                match gen.kind {
                    GenKind::Mult => m.x[p] += 1,
                    GenKind::Deriv => m.d[p] += 1,
                }
            }
        }
    }
    Ok(WeylElement::from_monomial(n, m, UPoly::constant(Rational::integer(sign))))
}

impl fmt::Display for WeylElement {
    /// `x[1,2]d[1,2] + u^2 + 1/2`: monomials in descending graded order,
    /// `u`-powers descending within a monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text_with("d"))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement(n={}: {})", self.n, self)
    }
}

// Operator impls panic on mismatched `n`; use `weyl_mul` / `try_add` for the
// fallible forms.

impl<'a> Add<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &WeylElement) -> WeylElement {
        self.try_add(rhs).expect("WeylElement addition")
    }
}

impl<'a> Sub<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &WeylElement) -> WeylElement {
        self.try_add(&-rhs).expect("WeylElement subtraction")
    }
}

impl<'a> Mul<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        weyl_mul(self, rhs).expect("WeylElement product")
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        WeylElement {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Ring for WeylElement {
    type Ctx = usize;

    fn ctx(&self) -> usize {
        self.n
    }
    fn zero(n: &usize) -> Self {
        WeylElement::zero(*n)
    }
    fn one(n: &usize) -> Self {
        WeylElement::one(*n)
    }
    fn is_zero(&self) -> bool {
        WeylElement::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn commutes_with(&self, rhs: &Self) -> bool {
        if let (Some((ax, ad)), Some((bx, bd))) = (self.support_masks(), rhs.support_masks()) {
            if ax & bd == 0 && ad & bx == 0 {
                return true;
            }
        }
        self * rhs == rhs * self
    }
}
