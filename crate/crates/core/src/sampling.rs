//! Seeded random inputs for property suites. Every generator draws only from
//! the supplied RNG, so a seed fixes the whole input stream.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::opmatrix::{OpMatrix, ScalarMatrix};
use crate::scalars::{Rational, UPoly};
use crate::weyl::{num_vars, AltPoly, WeylElement, WeylMonomial};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| <= 9`, `1 <= q <= 4`.
pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=4)).expect("nonzero denominator")
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let r = rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Polynomial in `u` of degree at most `max_degree`.
pub fn upoly<R: Rng>(rng: &mut R, max_degree: u32) -> UPoly {
    UPoly::from_terms((0..=max_degree).map(|e| (e, rational(rng))))
}

/// Invertible rational matrix with small entries.
pub fn invertible<R: Rng>(rng: &mut R, n: usize) -> ScalarMatrix {
    loop {
        let g = ScalarMatrix::from_fn((), n, |_, _| Rational::integer(rng.gen_range(-3..=3)));
        if !g.det().is_zero() {
            return g;
        }
    }
}

/// Invertible rational matrix rescaled in its first row to determinant 1.
pub fn unimodular<R: Rng>(rng: &mut R, n: usize) -> ScalarMatrix {
    let g = invertible(rng, n);
    let inv_det = g.det().recip().expect("invertible");
    let mut out = g.clone();
    for c in 0..n {
        out.set(0, c, g.get(0, c) * &inv_det);
    }
    out
}

fn exponents<R: Rng>(rng: &mut R, n: usize, max_degree: u32) -> Vec<u32> {
    let k = num_vars(n);
    let mut e = vec![0; k];
    if k == 0 {
        return e;
    }
    for _ in 0..rng.gen_range(0..=max_degree) {
        e[rng.gen_range(0..k)] += 1;
    }
    e
}

/// `c x^a d^b` with `|a|, |b| <= max_degree`.
pub fn weyl_monomial<R: Rng>(rng: &mut R, n: usize, max_degree: u32) -> WeylElement {
    let m = WeylMonomial::from_exponents(exponents(rng, n, max_degree), exponents(rng, n, max_degree));
    WeylElement::from_monomial(n, m, UPoly::constant(nonzero_rational(rng)))
}

/// Sum of up to `terms` random monomials of order at most `max_order`.
pub fn weyl_element<R: Rng>(rng: &mut R, n: usize, max_order: u32, terms: usize) -> WeylElement {
    let mut acc = WeylElement::zero(n);
    for _ in 0..rng.gen_range(1..=terms) {
        let x = exponents(rng, n, max_order);
        let d = exponents(rng, n, max_order);
        let m = WeylMonomial::from_exponents(x, d);
        acc = &acc + &WeylElement::from_monomial(n, m, upoly(rng, 1));
    }
    acc
}

/// Polynomial function of degree at most `max_degree`.
pub fn alt_poly<R: Rng>(rng: &mut R, n: usize, max_degree: u32, terms: usize) -> AltPoly {
    let mut acc = AltPoly::zero(n);
    for _ in 0..rng.gen_range(1..=terms) {
        acc = &acc + &AltPoly::monomial(n, exponents(rng, n, max_degree), UPoly::constant(rational(rng)));
    }
    acc
}

/// Alternating `dim x dim` matrix whose upper entries are random Weyl
/// monomials (about one in five is zero).
pub fn alternating_op_matrix<R: Rng>(rng: &mut R, n: usize, dim: usize, max_degree: u32) -> OpMatrix {
    let mut x = OpMatrix::zeros(n, dim);
    for r in 0..dim {
        for c in r + 1..dim {
            if rng.gen_range(0..5) == 0 {
                continue;
            }
            let e = weyl_monomial(rng, n, max_degree);
            x.set(c, r, -&e);
            x.set(r, c, e);
        }
    }
    x
}

/// Anti-alternating matrix `Y J` for a random alternating `Y`.
pub fn anti_alternating_op_matrix<R: Rng>(rng: &mut R, n: usize, dim: usize, max_degree: u32) -> OpMatrix {
    alternating_op_matrix(rng, n, dim, max_degree)
        .scalar_mul_right(&crate::opmatrix::j_matrix(dim))
        .expect("square")
}

/// Alternating rational matrix.
pub fn alternating_scalar_matrix<R: Rng>(rng: &mut R, dim: usize) -> ScalarMatrix {
    let mut x = ScalarMatrix::zeros((), dim);
    for r in 0..dim {
        for c in r + 1..dim {
            let v = rational(rng);
            x.set(c, r, -&v);
            x.set(r, c, v);
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_repeat() {
        let a = alternating_op_matrix(&mut rng(7), 2, 4, 2);
        let b = alternating_op_matrix(&mut rng(7), 2, 4, 2);
        assert_eq!(a, b);
        assert!(a.is_alternating());
        assert!(anti_alternating_op_matrix(&mut rng(1), 2, 4, 1).is_anti_alternating());
        assert_eq!(unimodular(&mut rng(3), 3).det(), Rational::one());
    }
}
