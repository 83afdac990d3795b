//! Invariant operators `Gamma_k`, the polynomials `a_m(u)` and `H_m`, and
//! exact checks of the generating-function identity
//! `Pf(Phi(u)) = sum_k a_(n-2k)(u) Gamma_k` together with its symbol-level
//! and invariance companions.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::forms::{sub_pfaffian, subsets};
use crate::opmatrix::{build_d, build_m, build_phi, build_phi_tilde_symbol, j_matrix, ScalarMatrix, SymbolMatrix};
use crate::pfaffian::{pf_anti, pf_commutative, Backend, PfConfig};
use crate::scalars::{fmt_scaled_power, join_signed, GaussRational, Rational, UPoly};
use crate::weyl::{apply, commutator, dpi, group_action, total_symbol, AltPoly, SymbolPoly, WeylElement};

/// `Gamma_k = sum_{|I|=2k} Pf(x_I) Pf(d_I)` on `Alt_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaOperator {
    pub n: usize,
    pub k: usize,
    pub element: WeylElement,
}

pub fn gamma(n: usize, k: usize) -> Result<GammaOperator> {
    if 2 * k > n {
        return Err(Error::KOutOfRange { k, max: n / 2 });
    }
    let (m, d) = (build_m(n), build_d(n));
    let element = subsets(n, 2 * k)
        .par_iter()
        .map(|i| &sub_pfaffian(&m, i) * &sub_pfaffian(&d, i))
        .reduce(|| WeylElement::zero(n), |a, b| &a + &b);
    Ok(GammaOperator { n, k, element })
}

/// `sum_{|I|=2k} Pf(x_I) Pf(xi_I)` in the commutative symbol ring.
pub fn gamma_symbol(n: usize, k: usize) -> Result<SymbolPoly> {
    if 2 * k > n {
        return Err(Error::KOutOfRange { k, max: n / 2 });
    }
    let m: SymbolMatrix = build_m(n).map(n, total_symbol);
    let d: SymbolMatrix = build_d(n).map(n, total_symbol);
    let mut acc = SymbolPoly::zero(n);
    for i in subsets(n, 2 * k) {
        let idx: Vec<usize> = i.iter().map(|a| a - 1).collect();
        let p = &pf_commutative(&m.submatrix(&idx))? * &pf_commutative(&d.submatrix(&idx))?;
        acc = &acc + &p;
    }
    Ok(acc)
}

/// Polynomial in `x` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPoly {
    coeffs: BTreeMap<u32, BigInt>,
}

impl IntPoly {
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, BigInt)>) -> Self {
        let mut p = IntPoly::default();
        for (e, c) in terms {
            let v = p.coeffs.remove(&e).unwrap_or_default() + c;
            if v != BigInt::from(0) {
                p.coeffs.insert(e, v);
            }
        }
        p
    }

    pub fn coeff(&self, e: u32) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Value at a Gaussian rational.
    pub fn eval_gauss(&self, z: &GaussRational) -> GaussRational {
        let mut acc = GaussRational::zero();
        for (e, c) in &self.coeffs {
            acc = &acc + &z.pow(*e).scale(&Rational::from_bigint(c.clone()));
        }
        acc
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.coeffs.iter().rev().map(|(e, c)| fmt_scaled_power(&Rational::from_bigint(c.clone()), "x", *e));
        f.write_str(&join_signed(parts))
    }
}

/// `H_m(x) = m! sum_k (-1)^k 2^(m-2k) / (k! (m-2k)!) x^(m-2k)`.
pub fn hermite(m: u32) -> IntPoly {
    let fact = |v: u32| -> BigInt { (1..=v).map(BigInt::from).product() };
    IntPoly::from_terms((0..=m / 2).map(|k| {
        let r = m - 2 * k;
        let c = fact(m) * (BigInt::from(1) << r) / (fact(k) * fact(r));
        (r, if k % 2 == 0 { c } else { -c })
    }))
}

/// `H_(m+1) = 2x H_m - 2m H_(m-1)`.
pub fn hermite_recurrence_check(m: u32) -> bool {
    if m == 0 {
        return hermite(1) == IntPoly::from_terms([(1, BigInt::from(2))]);
    }
    let (hm, hp) = (hermite(m), hermite(m - 1));
    let rhs = IntPoly::from_terms(
        hm.terms()
            .map(|(e, c)| (e + 1, c * BigInt::from(2)))
            .chain(hp.terms().map(|(e, c)| (e, -(c * BigInt::from(2 * m))))),
    );
    hermite(m + 1) == rhs
}

/// `a_m(u) = sum_k m! / (2^(2k) (m-2k)! k!) u^(m-2k)`.
pub fn a_poly(m: u32) -> UPoly {
    UPoly::from_terms((0..=m / 2).map(|k| {
        let r = m - 2 * k;
        let den = &(&Rational::integer(2).pow(2 * k) * &Rational::factorial(r as u64)) * &Rational::factorial(k as u64);
        (r, Rational::factorial(m as u64).checked_div(&den).expect("nonzero"))
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteData {
    pub m: u32,
    pub hermite: IntPoly,
    pub a_poly: UPoly,
}

impl HermiteData {
    pub fn new(m: u32) -> Self {
        HermiteData { m, hermite: hermite(m), a_poly: a_poly(m) }
    }
}

impl fmt::Display for HermiteData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H_{} = {}; a_{} = {}", self.m, self.hermite, self.m, self.a_poly)
    }
}

/// `(-i/2)^m H_m(i u)` expanded over the Gaussian rationals, one entry per
/// power of `u`.
pub fn hermite_at_iu(m: u32) -> BTreeMap<u32, GaussRational> {
    let half = Rational::new(-1, 2).expect("nonzero");
    let pre = GaussRational::new(Rational::zero(), half).pow(m);
    hermite(m)
        .terms()
        .map(|(e, c)| {
            let z = GaussRational::i().pow(e).scale(&Rational::from_bigint(c.clone()));
            (e, &pre * &z)
        })
        .collect()
}

/// `a_m(u) = (-i/2)^m H_m(i u)`: imaginary parts vanish and real parts match.
pub fn hermite_relation_check(m: u32) -> bool {
    let a = a_poly(m);
    let lhs = hermite_at_iu(m);
    let exps: std::collections::BTreeSet<u32> = lhs.keys().copied().chain(a.terms().map(|(e, _)| e)).collect();
    exps.into_iter().all(|e| {
        let z = lhs.get(&e).cloned().unwrap_or_else(GaussRational::zero);
        z.im.is_zero() && z.re == a.coeff(e)
    })
}

/// `sum_k a_(n-2k)(u) Gamma_k`.
pub fn generating_sum(n: usize) -> Result<WeylElement> {
    let mut acc = WeylElement::zero(n);
    for k in 0..=n / 2 {
        let g = gamma(n, k)?;
        acc = &acc + &g.element.scale_upoly(&a_poly((n - 2 * k) as u32));
    }
    Ok(acc)
}

/// Outcome of comparing `Pf(Phi(u))` with the generating sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub n: usize,
    pub backend: Backend,
    pub pass: bool,
    pub pf: WeylElement,
    pub delta: WeylElement,
    pub millis: u128,
}

impl IdentityReport {
    pub fn delta_term_count(&self) -> usize {
        self.delta.len()
    }

    pub fn pf_term_count(&self) -> usize {
        self.pf.len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "backend": self.backend.name(),
            "pass": self.pass,
            "pf": self.pf.to_string(),
            "delta_term_count": self.delta_term_count(),
            "pf_term_count": self.pf_term_count(),
            "millis": self.millis as u64,
        })
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "backend: {}", self.backend)?;
        writeln!(f, "pass: {}", self.pass)?;
        writeln!(f, "delta_term_count: {}", self.delta_term_count())?;
        writeln!(f, "pf_term_count: {}", self.pf_term_count())?;
        write!(f, "millis: {}", self.millis)
    }
}

/// `Pf(Phi(u))` through the chosen backend.
pub fn pf_phi(n: usize, backend: Backend, cfg: &PfConfig) -> Result<WeylElement> {
    if backend == Backend::Commutative {
        return Err(Error::Usage("the entries of Phi(u) do not commute; use restricted, forms or full".into()));
    }
    pf_anti(&build_phi(n), backend, cfg)
}

/// Computes `Delta = Pf(Phi(u)) - sum_k a_(n-2k)(u) Gamma_k`.
pub fn main_identity_check(n: usize, backend: Backend, cfg: &PfConfig) -> Result<IdentityReport> {
    if n == 0 {
        return Err(Error::Usage("n must be at least 1".into()));
    }
    let start = Instant::now();
    let pf = pf_phi(n, backend, cfg)?;
    let delta = &pf - &generating_sum(n)?;
    Ok(IdentityReport { n, backend, pass: delta.is_zero(), pf, delta, millis: start.elapsed().as_millis() })
}

/// Commutative Pfaffian of `Phi~(u)` with `d` replaced by `xi`, read through
/// the anti-alternating convention.
pub fn symbol_pfaffian(n: usize) -> Result<SymbolPoly> {
    let j = j_matrix(2 * n);
    let phi = build_phi_tilde_symbol(n).scalar_mul_right(&j)?;
    pf_commutative(&phi.scalar_mul_right(&j)?)
}

/// `sigma(Pf Phi~(u)) = sum_k u^(n-2k) gamma_k`.
pub fn symbol_identity_check(n: usize) -> Result<bool> {
    let mut rhs = SymbolPoly::zero(n);
    for k in 0..=n / 2 {
        let u = UPoly::monomial(Rational::one(), (n - 2 * k) as u32);
        rhs = &rhs + &gamma_symbol(n, k)?.scale_upoly(&u);
    }
    Ok(symbol_pfaffian(n)? == rhs)
}

/// `[dpi(E_ij), Gamma_k] = 0` and `[dpi(E_ij), Pf(Phi(u))] = 0` for all
/// `i, j, k`.
pub fn invariance_check(n: usize, cfg: &PfConfig) -> Result<bool> {
    let mut ops: Vec<WeylElement> = (0..=n / 2).map(|k| gamma(n, k).map(|g| g.element)).collect::<Result<_>>()?;
    ops.push(pf_phi(n, Backend::Restricted, cfg)?);
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    let results: Vec<Result<bool>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let e = dpi(n, i, j)?;
            for op in &ops {
                if !commutator(&e, op)?.is_zero() {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect();
    results.into_iter().try_fold(true, |acc, r| Ok(acc && r?))
}

/// Rational sample points `0, 1, -1, 2, -2, ...`, at least `max(4, n+1)`.
pub fn u_samples(n: usize) -> Vec<Rational> {
    let count = (n + 1).max(4);
    (0..count as i64).map(|t| Rational::integer(if t % 2 == 1 { t / 2 + 1 } else { -(t / 2) })).collect()
}

/// `pi(g) P pi(g)^{-1} f = P f` for `P = Pf(Phi(u0))` at each sample `u0`.
pub fn group_invariance_spot_check(pf: &WeylElement, g: &ScalarMatrix, f: &AltPoly) -> Result<bool> {
    let g_inv = g.inverse()?;
    let pulled = group_action(&g_inv, f)?;
    for u0 in u_samples(pf.n()) {
        let p = pf.specialize(&u0);
        if group_action(g, &apply(&p, &pulled))? != apply(&p, f) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_examples() {
        assert!(gamma(3, 0).unwrap().element.is_one());
        assert_eq!(gamma(2, 1).unwrap().element.to_string(), "x[1,2]d[1,2]");
        let g = gamma(4, 1).unwrap().element;
        assert_eq!(g.len(), 6);
        assert!(matches!(gamma(3, 2), Err(Error::KOutOfRange { k: 2, max: 1 })));
    }

    #[test]
    fn hermite_and_a() {
        assert_eq!(hermite(0).to_string(), "1");
        assert_eq!(hermite(2).to_string(), "4x^2 - 2");
        assert_eq!(hermite(3).to_string(), "8x^3 - 12x");
        assert_eq!(a_poly(0).to_string(), "1");
        assert_eq!(a_poly(1).to_string(), "u");
        assert_eq!(a_poly(2).to_string(), "u^2 + 1/2");
        assert_eq!(a_poly(3).to_string(), "u^3 + 3/2 u");
        assert_eq!(HermiteData::new(3).to_string(), "H_3 = 8x^3 - 12x; a_3 = u^3 + 3/2 u");
        for m in 0..=6 {
            assert!(hermite_recurrence_check(m));
            assert!(hermite_relation_check(m));
        }
    }

    #[test]
    fn identity_small_n() {
        let cfg = PfConfig::default();
        let r = main_identity_check(2, Backend::Restricted, &cfg).unwrap();
        assert!(r.pass);
        assert_eq!(r.pf.to_string(), "x[1,2]d[1,2] + u^2 + 1/2");
        let r = main_identity_check(1, Backend::Forms, &cfg).unwrap();
        assert!(r.pass);
        assert_eq!(r.pf.to_string(), "u");
        assert!(main_identity_check(0, Backend::Forms, &cfg).is_err());
        assert!(main_identity_check(2, Backend::Commutative, &cfg).is_err());
    }

    #[test]
    fn report_json_order() {
        let r = main_identity_check(1, Backend::Restricted, &PfConfig::default()).unwrap();
        let keys: Vec<String> = r.to_json().as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["n", "backend", "pass", "pf", "delta_term_count", "pf_term_count", "millis"]);
    }

    #[test]
    fn symbol_n2() {
        assert_eq!(symbol_pfaffian(2).unwrap().to_string(), "x[1,2]xi[1,2] + u^2");
        assert!(symbol_identity_check(2).unwrap());
    }

    #[test]
    fn samples() {
        let s: Vec<String> = u_samples(2).iter().map(|r| r.to_string()).collect();
        assert_eq!(s, ["0", "1", "-1", "2"]);
        assert_eq!(u_samples(5).len(), 6);
    }
}
