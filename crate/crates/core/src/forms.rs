//! Exterior algebra on `V = span{e_i : i in [n] or -i in [n]}` with
//! coefficients in the Weyl algebra.
//!
//! Basis vectors are ordered `1 < 2 < ... < n < -n < ... < -1`; an
//! [`ExtIndex`] stores a subset as a bitmask over these `2n` positions, so
//! the volume form is the full mask and its coefficient needs no sign fix.
//! Coefficients commute past basis vectors and multiply left to right.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::opmatrix::{build_d, build_m, j_matrix, OpMatrix};
use crate::pfaffian::{inversion_sign, pf_commutative};
use crate::scalars::{Rational, UPoly};
use crate::weyl::{normal_order_word, GenKind, SignedGenerator, WeylElement};

/// Position of the label `i` (or `-i`) among the `2n` basis vectors.
pub fn label_position(n: usize, label: i64) -> Result<usize> {
    let k = label.unsigned_abs() as usize;
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { i: k, j: k, n });
    }
    Ok(if label > 0 { k - 1 } else { 2 * n - k })
}

/// Inverse of [`label_position`].
pub fn position_label(n: usize, p: usize) -> i64 {
    if p < n {
        p as i64 + 1
    } else {
        -((2 * n - p) as i64)
    }
}

/// Subset of the basis, as a bitmask over basis positions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ExtIndex(u32);

impl ExtIndex {
    pub const EMPTY: ExtIndex = ExtIndex(0);

    pub fn from_positions(ps: &[usize]) -> Self {
        ExtIndex(ps.iter().fold(0, |m, p| m | (1 << p)))
    }

    /// Labels may come in any order; repeats are an error.
    pub fn from_labels(n: usize, labels: &[i64]) -> Result<Self> {
        let mut mask = 0u32;
        for &l in labels {
            let bit = 1 << label_position(n, l)?;
            if mask & bit != 0 {
                return Err(Error::DimensionMismatch(format!("repeated basis label {l}")));
            }
            mask |= bit;
        }
        Ok(ExtIndex(mask))
    }

    pub fn volume(n: usize) -> Self {
        ExtIndex(((1u64 << (2 * n)) - 1) as u32)
    }

    pub fn mask(&self) -> u32 {
        self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.count_ones()
    }

    pub fn positions(&self) -> Vec<usize> {
        (0..32).filter(|p| self.0 & (1 << p) != 0).collect()
    }

    pub fn labels(&self, n: usize) -> Vec<i64> {
        self.positions().into_iter().map(|p| position_label(n, p)).collect()
    }

    /// `e_S e_T = sign e_(S u T)`, or `None` when `S` and `T` overlap.
    pub fn wedge(&self, rhs: &ExtIndex) -> Option<(i8, ExtIndex)> {
        if self.0 & rhs.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        let mut t = rhs.0;
        while t != 0 {
            let p = t.trailing_zeros();
            inversions += (self.0 >> p).count_ones();
            t &= t - 1;
        }
        Some((if inversions.is_multiple_of(2) { 1 } else { -1 }, ExtIndex(self.0 | rhs.0)))
    }
}

impl Ord for ExtIndex {
    /// Degree first, then positions lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.positions().cmp(&other.positions()))
    }
}

impl PartialOrd for ExtIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of `wedge(V) (x) PD(Alt_n)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtElement {
    n: usize,
    terms: BTreeMap<ExtIndex, WeylElement>,
}

impl ExtElement {
    pub fn zero(n: usize) -> Self {
        ExtElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        ExtElement::basis(n, ExtIndex::EMPTY, WeylElement::one(n))
    }

    pub fn basis(n: usize, e: ExtIndex, c: WeylElement) -> Self {
        let mut out = ExtElement::zero(n);
        out.add_term(e, &c);
        out
    }

    /// `e_l1 e_l2 ... (x) c` for labels in any order.
    pub fn from_labels(n: usize, labels: &[i64], c: WeylElement) -> Result<Self> {
        let mut acc = ExtElement::one(n);
        for &l in labels {
            let e = ExtIndex::from_positions(&[label_position(n, l)?]);
            acc = acc.wedge(&ExtElement::basis(n, e, WeylElement::one(n)));
        }
        Ok(acc.wedge(&ExtElement::basis(n, ExtIndex::EMPTY, c)))
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

    pub fn terms(&self) -> impl Iterator<Item = (&ExtIndex, &WeylElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExtIndex) -> WeylElement {
        self.terms.get(e).cloned().unwrap_or_else(|| WeylElement::zero(self.n))
    }

    pub fn add_term(&mut self, e: ExtIndex, c: &WeylElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
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

    pub fn add(&self, rhs: &ExtElement) -> ExtElement {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, rhs: &ExtElement) -> ExtElement {
        self.add(&rhs.scale(&Rational::integer(-1)))
    }

    pub fn scale(&self, c: &Rational) -> ExtElement {
        self.scale_upoly(&UPoly::constant(c.clone()))
    }

    pub fn scale_upoly(&self, c: &UPoly) -> ExtElement {
        let mut out = ExtElement::zero(self.n);
        for (e, w) in &self.terms {
            out.add_term(*e, &w.scale_upoly(c));
        }
        out
    }

    /// `(w (x) X)(t (x) Y) = wt (x) XY`.
    pub fn wedge(&self, rhs: &ExtElement) -> ExtElement {
        assert_eq!(self.n, rhs.n, "forms over different n");
        let n = self.n;
        let lhs: Vec<(&ExtIndex, &WeylElement)> = self.terms.iter().collect();
        let terms = lhs
            .par_iter()
            .fold(
                || ExtElement::zero(n),
                |mut acc, (s, x)| {
                    for (t, y) in &rhs.terms {
                        if let Some((sign, e)) = s.wedge(t) {
                            let p = *x * y;
                            acc.add_term(e, &if sign > 0 { p } else { -&p });
                        }
                    }
                    acc
                },
            )
            .reduce(|| ExtElement::zero(n), |a, b| a.add(&b));
        terms
    }

    /// `self^k`, multiplied left to right.
    pub fn wedge_power(&self, k: u32) -> ExtElement {
        let mut acc = ExtElement::one(self.n);
        for _ in 0..k {
            acc = acc.wedge(self);
        }
        acc
    }

    /// `a b - b a`.
    pub fn commutator(&self, rhs: &ExtElement) -> ExtElement {
        self.wedge(rhs).sub(&rhs.wedge(self))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "terms": self.terms.iter().map(|(e, c)| json!({"e": e.labels(self.n), "coeff": c.to_json()})).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for ExtElement {
    /// One `e[labels] ⊗ (coeff)` line per basis subset.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let lines: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let labels: Vec<String> = e.labels(self.n).iter().map(i64::to_string).collect();
                format!("e[{}] ⊗ ({c})", labels.join(","))
            })
            .collect();
        f.write_str(&lines.join("\n"))
    }
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtElement(n={})\n{self}", self.n)
    }
}

/// `sum_{r,c} e_r e_c Y[r][c]` with matrix rows and columns read as basis
/// positions.
fn two_form_by_positions(y: &OpMatrix) -> ExtElement {
    let n = *y.ctx();
    let m = y.dim();
    let mut out = ExtElement::zero(n);
    for r in 0..m {
        for c in 0..m {
            if let Some((sign, e)) = ExtIndex::from_positions(&[r]).wedge(&ExtIndex::from_positions(&[c])) {
                let v = y.get(r, c);
                out.add_term(e, &if sign > 0 { v.clone() } else { -v });
            }
        }
    }
    out
}

/// `Xi_X = sum_{i,j} e_i e_(-j) (x) X[i][j]` over `i, j` in `[+-n]`.
pub fn two_form_of_matrix(x: &OpMatrix) -> Result<ExtElement> {
    let n = *x.ctx();
    if x.dim() != 2 * n {
        return Err(Error::DimensionMismatch(format!("expected a {0}x{0} matrix, got {1}x{1}", 2 * n, x.dim())));
    }
    if !x.is_anti_alternating() {
        return Err(Error::NotAntiAlternating);
    }
    Ok(two_form_by_positions(&x.scalar_mul_right(&j_matrix(2 * n))?))
}

/// `tau = sum_i e_i e_(-i)`.
pub fn tau(n: usize) -> ExtElement {
    let mut out = ExtElement::zero(n);
    for i in 1..=n as i64 {
        out = out.add(&ExtElement::from_labels(n, &[i, -i], WeylElement::one(n)).expect("labels in range"));
    }
    out
}

/// `Theta_- = sum_{i,j} e_i e_j (x) x[i,j]`.
pub fn theta_minus(n: usize) -> ExtElement {
    theta_words(n, GenKind::Mult).evaluate()
}

/// `Theta_+ = sum_{i,j} e_(-j) e_(-i) (x) d[i,j]`.
pub fn theta_plus(n: usize) -> ExtElement {
    theta_words(n, GenKind::Deriv).evaluate()
}

/// `Omega = Theta_- + 2u tau + Theta_+`.
pub fn omega(n: usize) -> ExtElement {
    let two_u = UPoly::monomial(Rational::integer(2), 1);
    theta_minus(n).add(&tau(n).scale_upoly(&two_u)).add(&theta_plus(n))
}

/// Coefficient of `e_1 ... e_n e_(-n) ... e_(-1)`.
pub fn volume_coefficient(w: &ExtElement) -> WeylElement {
    w.coeff(&ExtIndex::volume(w.n))
}

/// `vol(Xi_X^n) / (2^n n!)`.
pub fn pf_via_forms(x: &OpMatrix) -> Result<WeylElement> {
    let xi = two_form_of_matrix(x)?;
    Ok(pf_from_two_form(&xi, x.dim() / 2))
}

/// Forms backend on an alternating matrix `Y` (that is, `Pf(Y) = Pf(Y J)` in
/// the anti-alternating convention).
pub(crate) fn pf_of_alternating_via_forms(y: &OpMatrix) -> WeylElement {
    pf_from_two_form(&two_form_by_positions(y), y.dim() / 2)
}

fn pf_from_two_form(xi: &ExtElement, k: usize) -> WeylElement {
    let k = k as u32;
    if k == 0 {
        return WeylElement::one(xi.n);
    }
    let top = xi.wedge_power(k);
    let norm = (&Rational::integer(2).pow(k) * &Rational::factorial(k as u64)).recip().expect("nonzero");
    top.coeff(&ExtIndex::volume(k as usize)).scale(&norm)
}

/// Form whose coefficients are kept as unevaluated generator words, so the
/// normal-ordering map can be applied after products are formed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WordForm {
    n: usize,
    terms: BTreeMap<(ExtIndex, Vec<SignedGenerator>), Rational>,
}

impl WordForm {
    pub fn zero(n: usize) -> Self {
        WordForm { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        let mut w = WordForm::zero(n);
        w.add_term(ExtIndex::EMPTY, Vec::new(), Rational::one());
        w
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: ExtIndex, word: Vec<SignedGenerator>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (e, word);
        let v = self.terms.remove(&key).unwrap_or_else(Rational::zero);
        let v = &v + &c;
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn add(&self, rhs: &WordForm) -> WordForm {
        let mut out = self.clone();
        for ((e, w), c) in &rhs.terms {
            out.add_term(*e, w.clone(), c.clone());
        }
        out
    }

    /// Words concatenate; basis parts wedge.
    pub fn wedge(&self, rhs: &WordForm) -> WordForm {
        let mut out = WordForm::zero(self.n);
        for ((s, w1), c1) in &self.terms {
            for ((t, w2), c2) in &rhs.terms {
                if let Some((sign, e)) = s.wedge(t) {
                    let mut w = w1.clone();
                    w.extend_from_slice(w2);
                    let c = c1 * c2;
                    out.add_term(e, w, if sign > 0 { c } else { -c });
                }
            }
        }
        out
    }

    pub fn wedge_power(&self, k: u32) -> WordForm {
        let mut acc = WordForm::one(self.n);
        for _ in 0..k {
            acc = acc.wedge(self);
        }
        acc
    }

    /// Multiplies each word out in the Weyl algebra.
    pub fn evaluate(&self) -> ExtElement {
        self.collapse(|n, w| {
            let mut p = WeylElement::one(n);
            for g in w {
                p = &p * &crate::weyl::signed_generator(n, g.i, g.j, g.kind).expect("valid word");
            }
            p
        })
    }

    /// Applies the normal-ordering map `:.:` to each word.
    pub fn normal_order(&self) -> ExtElement {
        self.collapse(|n, w| normal_order_word(n, w).expect("valid word"))
    }

    fn collapse(&self, f: impl Fn(usize, &[SignedGenerator]) -> WeylElement) -> ExtElement {
        let mut out = ExtElement::zero(self.n);
        for ((e, w), c) in &self.terms {
            out.add_term(*e, &f(self.n, w).scale(c));
        }
        out
    }
}

/// `Theta_-` (for `Mult`) or `Theta_+` (for `Deriv`) with word coefficients.
pub fn theta_words(n: usize, kind: GenKind) -> WordForm {
    let mut out = WordForm::zero(n);
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let (labels, g) = match kind {
                GenKind::Mult => ([i as i64, j as i64], SignedGenerator::mult(i, j)),
                GenKind::Deriv => ([-(j as i64), -(i as i64)], SignedGenerator::deriv(i, j)),
            };
            let p0 = label_position(n, labels[0]).expect("in range");
            let p1 = label_position(n, labels[1]).expect("in range");
            let (sign, e) = ExtIndex::from_positions(&[p0]).wedge(&ExtIndex::from_positions(&[p1])).expect("distinct");
            out.add_term(e, vec![g], Rational::integer(sign as i64));
        }
    }
    out
}

/// `:W:` for a word form `W`.
pub fn normal_order_form(w: &WordForm) -> ExtElement {
    w.normal_order()
}

/// `[tau, Theta_-] = [tau, Theta_+] = 0` and `[Theta_+, Theta_-] = 2 tau^2`.
pub fn cr_check(n: usize) -> bool {
    let (t, tm, tp) = (tau(n), theta_minus(n), theta_plus(n));
    t.commutator(&tm).is_zero()
        && t.commutator(&tp).is_zero()
        && tp.commutator(&tm) == t.wedge(&t).scale(&Rational::integer(2))
}

/// Every `k`-subset of `[n]`, each sorted, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in start..=n {
            acc.push(i);
            rec(i + 1, n, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Commutative Pfaffian of the principal submatrix of `m` on `idx` (1-based).
pub fn sub_pfaffian(m: &OpMatrix, idx: &[usize]) -> WeylElement {
    let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
    pf_commutative(&m.submatrix(&zero_based)).expect("alternating submatrix")
}

/// `Theta_-^r = 2^r r! sum_{|I|=2r} e_I Pf(x_I)` and the mirrored
/// `Theta_+^r = 2^r r! sum_{|I|=2r} e_(-I) Pf(d_I)`.
pub fn theta_power_identity_check(n: usize, r: usize) -> bool {
    if 2 * r > n {
        return false;
    }
    let scale = &Rational::integer(2).pow(r as u32) * &Rational::factorial(r as u64);
    let (m, d) = (build_m(n), build_d(n));
    let mut minus = ExtElement::zero(n);
    let mut plus = ExtElement::zero(n);
    for i in subsets(n, 2 * r) {
        let pos: Vec<usize> = i.iter().map(|&k| k - 1).collect();
        let neg: Vec<usize> = i.iter().map(|&k| 2 * n - k).collect();
        minus.add_term(ExtIndex::from_positions(&pos), &sub_pfaffian(&m, &i).scale(&scale));
        plus.add_term(ExtIndex::from_positions(&neg), &sub_pfaffian(&d, &i).scale(&scale));
    }
    theta_minus(n).wedge_power(r as u32) == minus && theta_plus(n).wedge_power(r as u32) == plus
}

/// `c_k(m) = m! / (2^k k! (m-2k)!)`, and 0 outside `0 <= k <= m/2`.
pub fn c_coeff(k: i64, m: i64) -> Rational {
    if k < 0 || m < 0 || 2 * k > m {
        return Rational::zero();
    }
    let den = &(&Rational::integer(2).pow(k as u32) * &Rational::factorial(k as u64))
        * &Rational::factorial((m - 2 * k) as u64);
    Rational::factorial(m as u64).checked_div(&den).expect("nonzero")
}

/// `c_k(m+1) = c_k(m) + (m + 2 - 2k) c_(k-1)(m)` for every `k`.
pub fn c_recursion_check(m: i64) -> bool {
    (-1..=m + 2).all(|k| {
        let rhs = &c_coeff(k, m) + &(&Rational::integer(m + 2 - 2 * k) * &c_coeff(k - 1, m));
        c_coeff(k, m + 1) == rhs
    })
}

/// `(Theta_- + Theta_+)^m = sum_k c_k(m) (2 tau^2)^k :(Theta_- + Theta_+)^(m-2k):`.
pub fn expansion_check(n: usize, m: u32) -> bool {
    let theta = theta_words(n, GenKind::Mult).add(&theta_words(n, GenKind::Deriv));
    let lhs = theta.evaluate().wedge_power(m);
    let t2 = tau(n).wedge(&tau(n)).scale(&Rational::integer(2));
    let mut rhs = ExtElement::zero(n);
    for k in 0..=m / 2 {
        let ordered = normal_order_form(&theta.wedge_power(m - 2 * k));
        let term = t2.wedge_power(k).wedge(&ordered).scale(&c_coeff(k as i64, m as i64));
        rhs = rhs.add(&term);
    }
    lhs == rhs
}

/// `(z)_k = z (z-1) ... (z-k+1)`.
pub fn descending_factorial(z: i64, k: u32) -> Rational {
    (0..k as i64).fold(Rational::one(), |acc, t| &acc * &Rational::integer(z - t))
}

/// `Theta_+^a Theta_-^b = sum_k (a)_k (b)_k / k! (2 tau^2)^k Theta_-^(b-k) Theta_+^(a-k)`.
pub fn theta_commutation_check(n: usize, a: u32, b: u32) -> bool {
    let (tm, tp) = (theta_minus(n), theta_plus(n));
    let lhs = tp.wedge_power(a).wedge(&tm.wedge_power(b));
    let t2 = tau(n).wedge(&tau(n)).scale(&Rational::integer(2));
    let mut rhs = ExtElement::zero(n);
    for k in 0..=a.min(b) {
        let c = (&descending_factorial(a as i64, k) * &descending_factorial(b as i64, k))
            .checked_div(&Rational::factorial(k as u64))
            .expect("nonzero");
        let term = t2.wedge_power(k).wedge(&tm.wedge_power(b - k)).wedge(&tp.wedge_power(a - k));
        rhs = rhs.add(&term.scale(&c));
    }
    lhs == rhs
}

/// Parity of `([n] - I, I)`, both parts increasing, as a permutation of `[n]`.
pub fn shuffle_sign(n: usize, subset: &[usize]) -> i8 {
    let seq: Vec<usize> = (1..=n).filter(|k| !subset.contains(k)).chain(subset.iter().copied()).collect();
    inversion_sign(&seq)
}

/// Parity of `(-[n] - (-I), -I)` as a permutation of `-[n]`, every part
/// listed in basis order `-n < ... < -1`.
pub fn mirrored_shuffle_sign(n: usize, subset: &[usize]) -> i8 {
    let rank = |k: usize| n - k;
    let mut rest: Vec<usize> = (1..=n).filter(|k| !subset.contains(k)).map(rank).collect();
    let mut part: Vec<usize> = subset.iter().map(|&k| rank(k)).collect();
    rest.sort_unstable();
    part.sort_unstable();
    rest.extend(part);
    inversion_sign(&rest)
}
