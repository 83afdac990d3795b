use std::collections::HashMap;

use super::monomial::{GenKind, VarIndex};
use super::{num_vars, signed_generator, weyl_mul, AltPoly, WeylElement};
use crate::error::{Error, Result};
use crate::opmatrix::ScalarMatrix;
use crate::scalars::{Rational, UPoly};

/// Lets `p` act on `f`: derivations differentiate, multiplications multiply,
/// and within each normal-ordered term the derivations act first.
pub fn apply(p: &WeylElement, f: &AltPoly) -> AltPoly {
    assert_eq!(p.n(), f.n(), "operator and polynomial live over different n");
    let mut out = AltPoly::zero(f.n());
    for (m, c) in p.terms() {
        for (exps, fc) in f.terms() {
            let Some((weight, mut e)) = differentiate(exps, m.d_exponents()) else {
                continue;
            };
            for (k, a) in m.x_exponents().iter().enumerate() {
                e[k] += a;
            }
            let coeff = (c * fc).scale(&Rational::from_bigint(weight));
            out.add_term(e, &coeff);
        }
    }
    out
}

/// `d^b x^e = (falling factorials) x^(e-b)`, or `None` when some `b > e`.
fn differentiate(e: &[u32], b: &[u32]) -> Option<(num_bigint::BigInt, Vec<u32>)> {
    let mut weight = num_bigint::BigInt::from(1);
    let mut out = e.to_vec();
    for (k, (ek, bk)) in e.iter().zip(b).enumerate() {
        if bk > ek {
            return None;
        }
        for t in 0..*bk {
            weight *= ek - t;
        }
        out[k] = ek - bk;
    }
    Some((weight, out))
}

/// `f(g^{-1} x tg^{-1})`, re-expanded in the independent coordinates.
pub fn group_action(g: &ScalarMatrix, f: &AltPoly) -> Result<AltPoly> {
    Ok(GroupAction::new(g, f.n())?.act(f))
}

/// `pi(g)` on polynomials of a fixed `n`, memoizing the image of every
/// monomial it has seen.
#[derive(Clone, Debug)]
pub struct GroupAction {
    n: usize,
    images: Vec<AltPoly>,
    memo: HashMap<Vec<u32>, AltPoly>,
}

impl GroupAction {
    pub fn new(g: &ScalarMatrix, n: usize) -> Result<Self> {
        if g.dim() != n {
            return Err(Error::DimensionMismatch(format!("g is {}x{}, expected n = {n}", g.dim(), g.dim())));
        }
        let h = g.inverse()?;
        let vars = VarIndex::all(n);
        let images = vars
            .iter()
            .map(|v| {
                let mut p = AltPoly::zero(n);
                for (pos, w) in vars.iter().enumerate() {
                    let c = minor(&h, (v.i(), v.j()), (w.i(), w.j()));
                    if !c.is_zero() {
                        let mut e = vec![0; num_vars(n)];
                        e[pos] = 1;
                        p.add_term(e, &UPoly::constant(c));
                    }
                }
                p
            })
            .collect();
        Ok(GroupAction { n, images, memo: HashMap::new() })
    }

    fn monomial_image(&mut self, e: &[u32]) -> &AltPoly {
        if !self.memo.contains_key(e) {
            let image = match e.iter().position(|k| *k > 0) {
                None => AltPoly::one(self.n),
                Some(k) => {
                    let mut lower = e.to_vec();
                    lower[k] -= 1;
                    self.monomial_image(&lower);
                    &self.memo[&lower] * &self.images[k]
                }
            };
            self.memo.insert(e.to_vec(), image);
        }
        &self.memo[e]
    }

    pub fn act(&mut self, f: &AltPoly) -> AltPoly {
        assert_eq!(f.n(), self.n, "polynomial lives over a different n");
        let mut out = AltPoly::zero(self.n);
        for (exps, c) in f.terms() {
            let image = self.monomial_image(exps);
            let scalar = c.as_constant();
            for (e, v) in image.terms() {
                let coeff = match &scalar {
                    Some(r) => v.scale(r),
                    None => v * c,
                };
                out.add_term(e.clone(), &coeff);
            }
        }
        out
    }
}

/// `m[r1][c1] m[r2][c2] - m[r1][c2] m[r2][c1]` on 1-based indices.
fn minor(m: &ScalarMatrix, (r1, r2): (usize, usize), (c1, c2): (usize, usize)) -> Rational {
    let (r1, r2, c1, c2) = (r1 - 1, r2 - 1, c1 - 1, c2 - 1);
    &(m.get(r1, c1) * m.get(r2, c2)) - &(m.get(r1, c2) * m.get(r2, c1))
}

/// `pi(g) d[i,j] pi(g)^{-1} = sum_{a<b} det(g[a,b ; i,j]) d[a,b]`.
pub fn conjugate_derivation(g: &ScalarMatrix, i: usize, j: usize) -> Result<WeylElement> {
    let n = g.dim();
    VarIndex::new(n, i, j)?;
    g.inverse()?;
    let mut out = WeylElement::zero(n);
    for v in VarIndex::all(n) {
        let c = minor(g, (v.i(), v.j()), (i, j));
        if !c.is_zero() {
            out = &out + &WeylElement::d(n, v.i(), v.j())?.scale(&c);
        }
    }
    Ok(out)
}

/// `pi(g) x[i,j] pi(g)^{-1} = sum_{a<b} det(h[i,j ; a,b]) x[a,b]`, `h = g^{-1}`.
pub fn conjugate_multiplication(g: &ScalarMatrix, i: usize, j: usize) -> Result<WeylElement> {
    let n = g.dim();
    VarIndex::new(n, i, j)?;
    let h = g.inverse()?;
    let mut out = WeylElement::zero(n);
    for v in VarIndex::all(n) {
        let c = minor(&h, (i, j), (v.i(), v.j()));
        if !c.is_zero() {
            out = &out + &WeylElement::x(n, v.i(), v.j())?.scale(&c);
        }
    }
    Ok(out)
}

/// `dpi(E[i,j]) = -sum_k x[k,j] d[k,i]`.
pub fn dpi(n: usize, i: usize, j: usize) -> Result<WeylElement> {
    let mut out = WeylElement::zero(n);
    for k in 1..=n {
        let x = signed_generator(n, k, j, GenKind::Mult)?;
        let d = signed_generator(n, k, i, GenKind::Deriv)?;
        out = &out - &weyl_mul(&x, &d)?;
    }
    Ok(out)
}
