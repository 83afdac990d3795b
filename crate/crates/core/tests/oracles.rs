//! Worked examples checked against oracles that live in this file: direct
//! action on monomials, numeric substitution, brute-force Pfaffians and
//! closed-form coefficient formulas.

use num_bigint::BigInt;
use skew_capelli::capelli::{
    a_poly, gamma, gamma_symbol, group_invariance_spot_check, hermite, hermite_relation_check, main_identity_check,
    pf_phi, symbol_pfaffian,
};
use skew_capelli::forms::{
    c_coeff, expansion_check, normal_order_form, omega, pf_via_forms, shuffle_sign, tau, theta_commutation_check,
    theta_minus, theta_plus, theta_power_identity_check, theta_words, two_form_of_matrix, volume_coefficient,
    ExtElement, ExtIndex,
};
use skew_capelli::opmatrix::{
    ad_matrix, build_d, build_m, build_phi, build_phi_tilde, iota, j_matrix, scalar_conj, OpMatrix, ScalarMatrix,
};
use skew_capelli::pfaffian::{pf_anti, pf_commutative, pf_full, pf_restricted, Backend, PfConfig};
use skew_capelli::sampling;
use skew_capelli::scalars::{GaussRational, Rational, UPoly};
use skew_capelli::weyl::{
    apply, binomial_central_commutator_check, commutator, conjugate_derivation, conjugate_multiplication, dpi,
    group_action, principal_symbol, signed_generator, AltPoly, GenKind, VarIndex, WeylElement,
};

fn q(v: i64) -> Rational {
    Rational::integer(v)
}

fn frac(a: i64, b: i64) -> Rational {
    Rational::new(a, b).unwrap()
}

fn x(n: usize, i: usize, j: usize) -> WeylElement {
    WeylElement::x(n, i, j).unwrap()
}

fn d(n: usize, i: usize, j: usize) -> WeylElement {
    WeylElement::d(n, i, j).unwrap()
}

fn u(n: usize) -> WeylElement {
    WeylElement::u(n)
}

fn c(n: usize, v: Rational) -> WeylElement {
    WeylElement::rational(n, v)
}

/// One-variable operator words acting on `t^m`: `x` raises the exponent,
/// `d` differentiates. Returns `(coefficient, exponent)`.
fn act_word(word: &str, m: u32) -> (i64, u32) {
    let (mut coeff, mut e) = (1i64, m);
    for ch in word.chars().rev() {
        match ch {
            'x' => e += 1,
            'd' => {
                if e == 0 {
                    return (0, 0);
                }
                coeff *= e as i64;
                e -= 1;
            }
            _ => unreachable!(),
        }
    }
    (coeff, e)
}

/// Applies a normal-ordered element of the `n = 2` algebra to `t^m` through
/// [`act_word`], reading each term as `x^a d^b`.
fn act_element(p: &WeylElement, m: u32) -> Vec<(u32, Rational)> {
    let mut out: std::collections::BTreeMap<u32, Rational> = Default::default();
    for (mono, coeff) in p.terms() {
        let word = "x".repeat(mono.x_exponents()[0] as usize) + &"d".repeat(mono.d_exponents()[0] as usize);
        let (k, e) = act_word(&word, m);
        if k != 0 {
            *out.entry(e).or_insert_with(Rational::zero) += &(&coeff.coeff(0) * &q(k));
        }
    }
    out.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Evaluates a `u`-free polynomial at the alternating matrix `point`.
fn eval_at(f: &AltPoly, point: &ScalarMatrix) -> Rational {
    let n = f.n();
    let vars = VarIndex::all(n);
    let mut total = Rational::zero();
    for (exps, coeff) in f.terms() {
        let mut t = coeff.coeff(0);
        for (v, e) in vars.iter().zip(exps) {
            t = &t * &point.get(v.i() - 1, v.j() - 1).pow(*e);
        }
        total += &t;
    }
    total
}

fn random_alternating(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> ScalarMatrix {
    sampling::alternating_scalar_matrix(rng, n)
}

/// Commutative Pfaffian by recursive expansion along the first row.
fn brute_pf(m: &ScalarMatrix) -> Rational {
    let dim = m.dim();
    if dim == 0 {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for j in 1..dim {
        let rest: Vec<usize> = (1..dim).filter(|&k| k != j).collect();
        let sub = ScalarMatrix::from_fn((), rest.len(), |r, c| m.get(rest[r], rest[c]).clone());
        let sign = if j % 2 == 1 { q(1) } else { q(-1) };
        total += &(&(&sign * m.get(0, j)) * &brute_pf(&sub));
    }
    total
}

fn binomial(m: u64, k: u64) -> Rational {
    Rational::factorial(m).checked_div(&(&Rational::factorial(k) * &Rational::factorial(m - k))).unwrap()
}

// ---- weyl ---------------------------------------------------------------

#[test]
fn lower_generator_flips_sign() {
    assert_eq!(signed_generator(3, 2, 1, GenKind::Mult).unwrap(), -&x(3, 1, 2));
    assert!(signed_generator(3, 2, 2, GenKind::Deriv).unwrap().is_zero());
}

#[test]
fn reordering_d2_x2_matches_action_on_monomials() {
    let n = 2;
    let product = &d(n, 1, 2).pow(2) * &x(n, 1, 2).pow(2);
    let expected = &(&(&x(n, 1, 2).pow(2) * &d(n, 1, 2).pow(2)) + &(&x(n, 1, 2) * &d(n, 1, 2)).scale(&q(4))) + &c(n, q(2));
    assert_eq!(product, expected);
    for m in 0..=6 {
        let (k, e) = act_word("ddxx", m);
        let want: Vec<(u32, Rational)> = if k == 0 { vec![] } else { vec![(e, q(k))] };
        assert_eq!(act_element(&product, m), want, "t^{m}");
    }
}

#[test]
fn dpi_examples_expand_the_defining_sum() {
    let n = 2;
    assert_eq!(dpi(n, 1, 1).unwrap(), -&(&x(n, 1, 2) * &d(n, 1, 2)));
    assert!(dpi(n, 1, 2).unwrap().is_zero());
}

#[test]
fn dpi_e11_bracket_with_x12_on_monomials() {
    let n = 2;
    let e11 = dpi(n, 1, 1).unwrap();
    let x12 = x(n, 1, 2);
    let bracket = commutator(&e11, &x12).unwrap();
    let coord = AltPoly::coordinate(n, 1, 2).unwrap();
    for f in AltPoly::monomials_up_to(n, 3) {
        let lhs = &apply(&e11, &(&coord * &f)) - &(&coord * &apply(&e11, &f));
        assert_eq!(apply(&bracket, &f), lhs);
    }
    // the defining sum carries an overall minus sign
    assert_eq!(bracket, -&x12);
}

#[test]
fn gamma_one_kills_constants() {
    assert!(apply(&gamma(2, 1).unwrap().element, &AltPoly::one(2)).is_zero());
}

#[test]
fn group_action_by_numeric_substitution() {
    let n = 2;
    let g = ScalarMatrix::diag(&[q(2), q(1)]);
    let f = AltPoly::coordinate(n, 1, 2).unwrap();
    assert_eq!(group_action(&g, &f).unwrap(), f.scale(&frac(1, 2)));

    let mut rng = sampling::rng(5);
    for n in 2..=4 {
        let g = sampling::invertible(&mut rng, n);
        let h = g.inverse().unwrap();
        let f = sampling::alt_poly(&mut rng, n, 3, 4);
        let image = group_action(&g, &f).unwrap();
        for _ in 0..3 {
            let point = random_alternating(&mut rng, n);
            let moved = h.matmul(&point).unwrap().matmul(&h.transpose()).unwrap();
            assert_eq!(eval_at(&image, &point), eval_at(&f, &moved));
        }
    }
}

#[test]
fn diagonal_conjugation_scales_generators() {
    let n = 2;
    let g = ScalarMatrix::diag(&[q(2), q(3)]);
    let cd = conjugate_derivation(&g, 1, 2).unwrap();
    let cm = conjugate_multiplication(&g, 1, 2).unwrap();
    assert_eq!(cd, d(n, 1, 2).scale(&q(6)));
    assert_eq!(cm, x(n, 1, 2).scale(&frac(1, 6)));
    let h = g.inverse().unwrap();
    for f in AltPoly::monomials_up_to(n, 4) {
        let pulled = group_action(&h, &f).unwrap();
        assert_eq!(group_action(&g, &apply(&d(n, 1, 2), &pulled)).unwrap(), apply(&cd, &f));
        assert_eq!(group_action(&g, &apply(&x(n, 1, 2), &pulled)).unwrap(), apply(&cm, &f));
    }
}

#[test]
fn principal_symbol_of_gamma_is_gamma_symbol() {
    for n in 1..=4 {
        for k in 0..=n / 2 {
            assert_eq!(principal_symbol(&gamma(n, k).unwrap().element), gamma_symbol(n, k).unwrap(), "n={n} k={k}");
        }
    }
}

#[test]
fn remark_at_m2_against_direct_square() {
    let n = 2;
    let s = &x(n, 1, 2) + &d(n, 1, 2);
    let square = &s * &s;
    // (x + d)^2 = x^2 + 2xd + d^2 + 1
    for m in 0..=5 {
        let mut want: std::collections::BTreeMap<u32, Rational> = Default::default();
        for w in ["xx", "xd", "dx", "dd"] {
            let (k, e) = act_word(w, m);
            if k != 0 {
                *want.entry(e).or_insert_with(Rational::zero) += &q(k);
            }
        }
        let want: Vec<(u32, Rational)> = want.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        assert_eq!(act_element(&square, m), want);
    }
    let check = binomial_central_commutator_check(2);
    assert!(!check.printed);
    assert!(check.single_power);
}

// ---- opmatrix -----------------------------------------------------------

#[test]
fn small_matrices() {
    let n = 2;
    let m = build_m(n);
    assert!(m.get(0, 0).is_zero());
    assert_eq!(*m.get(0, 1), x(n, 1, 2));
    assert_eq!(*m.get(1, 0), -&x(n, 1, 2));
    for size in 1..=6usize {
        // reversal has size(size-1)/2 inversions
        let parity = if (size * (size - 1) / 2) % 2 == 0 { q(1) } else { q(-1) };
        assert_eq!(j_matrix(size).det(), parity);
    }
}

#[test]
fn phi_tilde_n2_entries() {
    let n = 2;
    let (z, xx, dd, uu) = (WeylElement::zero(n), x(n, 1, 2), d(n, 1, 2), u(n));
    let rows = vec![
        vec![z.clone(), xx.clone(), z.clone(), uu.clone()],
        vec![-&xx, z.clone(), uu.clone(), z.clone()],
        vec![z.clone(), -&uu, z.clone(), dd.clone()],
        vec![-&uu, z.clone(), -&dd, z.clone()],
    ];
    assert_eq!(build_phi_tilde(n), OpMatrix::from_rows(n, rows).unwrap());
}

#[test]
fn phi_tilde_blocks_and_product() {
    for n in 1..=4 {
        let tilde = build_phi_tilde(n);
        let uj = j_matrix(n).map(n, |v| u(n).scale(v));
        assert_eq!(tilde.block(0, n, n), uj);
        assert!(tilde.is_alternating());

        // explicit product with J: column c of Phi is column 2n-1-c of Phi~
        let dim = 2 * n;
        let product = OpMatrix::from_fn(n, dim, |r, c| tilde.get(r, dim - 1 - c).clone());
        let phi = build_phi(n);
        assert_eq!(phi, product);
        assert!(phi.is_anti_alternating());
        for r in 0..dim {
            for c in 0..dim {
                assert_eq!(*phi.get(r, c), -phi.get(dim - 1 - c, dim - 1 - r));
            }
        }
    }
    assert!(build_m(3).is_alternating());
    assert!(build_phi(3).is_anti_alternating());
}

#[test]
fn iota_lands_in_so() {
    let mut rng = sampling::rng(8);
    for n in 1..=4 {
        let g = sampling::invertible(&mut rng, n);
        let i = iota(&g).unwrap();
        let j = j_matrix(2 * n);
        assert_eq!(i.transpose().matmul(&j).unwrap().matmul(&i).unwrap(), j);
        assert_eq!(i.det(), q(1));
        assert_eq!(&g.det() * &g.transpose().inverse().unwrap().det(), q(1));
    }
}

#[test]
fn scalar_conjugation_keeps_anti_alternation() {
    let mut rng = sampling::rng(9);
    for dim in [2, 4, 6] {
        let g = sampling::invertible(&mut rng, dim);
        let xm = sampling::anti_alternating_op_matrix(&mut rng, 2, dim, 1);
        assert!(scalar_conj(&g, &xm).unwrap().is_anti_alternating());
    }
}

#[test]
fn ad_of_derivation_block_is_tg_d_g() {
    let mut rng = sampling::rng(10);
    for n in 2..=4 {
        let g = sampling::invertible(&mut rng, n);
        let j = j_matrix(n);
        let dj = build_d(n).scalar_mul_right(&j).unwrap();
        let expected = build_d(n).scalar_mul_left(&g.transpose()).unwrap().scalar_mul_right(&g).unwrap().scalar_mul_right(&j).unwrap();
        assert_eq!(ad_matrix(&g, &dj).unwrap(), expected);
    }
}

// ---- pfaffian -----------------------------------------------------------

#[test]
fn phi_n2_closed_form() {
    let n = 2;
    let cfg = PfConfig::default();
    // 1/2 (x d + d x + 2 u^2)
    let oracle = (&(&(&x(n, 1, 2) * &d(n, 1, 2)) + &(&d(n, 1, 2) * &x(n, 1, 2))) + &u(n).pow(2).scale(&q(2))).scale(&frac(1, 2));
    let alt = build_phi(n).scalar_mul_right(&j_matrix(4)).unwrap();
    assert_eq!(pf_full(&alt, &cfg).unwrap(), oracle);
    assert_eq!(pf_anti(&build_phi(n), Backend::Restricted, &cfg).unwrap(), oracle);
    let at_zero = build_phi(n).map(n, |e| e.specialize(&q(0)));
    assert_eq!(pf_anti(&at_zero, Backend::Restricted, &cfg).unwrap(), oracle.specialize(&q(0)));
    assert_eq!(oracle.specialize(&q(0)).to_string(), "x[1,2]d[1,2] + 1/2");
}

#[test]
fn scalar_j_block_pfaffian() {
    let cfg = PfConfig::default();
    for n in 1..=4 {
        let j = j_matrix(n);
        let zero = ScalarMatrix::zeros((), n);
        let m = ScalarMatrix::from_blocks(&zero, &j, &j.neg(), &zero).unwrap();
        let reference = brute_pf(&m);
        assert_eq!(pf_restricted(&m, &cfg).unwrap(), reference);
        assert_eq!(pf_commutative(&m).unwrap(), reference);
        assert_eq!(&reference * &reference, q(1));
    }
}

#[test]
fn commutative_pfaffian_4x4() {
    let n = 4;
    let m = build_m(n);
    let expected = &(&(&x(n, 1, 2) * &x(n, 3, 4)) - &(&x(n, 1, 3) * &x(n, 2, 4))) + &(&x(n, 1, 4) * &x(n, 2, 3));
    assert_eq!(pf_commutative(&m).unwrap(), expected);
}

#[test]
fn brute_force_agrees_with_library_on_rationals() {
    let mut rng = sampling::rng(12);
    let cfg = PfConfig::default();
    for dim in [2, 4, 6, 8] {
        let m = random_alternating(&mut rng, dim);
        let reference = brute_pf(&m);
        assert_eq!(pf_commutative(&m).unwrap(), reference);
        assert_eq!(pf_restricted(&m, &cfg).unwrap(), reference);
        assert_eq!(pf_full(&m, &cfg).unwrap(), reference);
    }
}

#[test]
fn unimodular_conjugation_fixes_pf_phi() {
    let mut rng = sampling::rng(13);
    let cfg = PfConfig::default();
    for n in 2..=3 {
        let g = sampling::unimodular(&mut rng, 2 * n);
        let phi = build_phi(n);
        assert_eq!(
            pf_anti(&scalar_conj(&g, &phi).unwrap(), Backend::Restricted, &cfg).unwrap(),
            pf_anti(&phi, Backend::Restricted, &cfg).unwrap()
        );
    }
}

// ---- forms --------------------------------------------------------------

#[test]
fn wedge_multiplies_coefficients_in_order() {
    let n = 2;
    let a = ExtElement::from_labels(n, &[1], d(n, 1, 2)).unwrap();
    let b = ExtElement::from_labels(n, &[2], x(n, 1, 2)).unwrap();
    let expected = ExtElement::from_labels(n, &[1, 2], &(&x(n, 1, 2) * &d(n, 1, 2)) + &c(n, q(1))).unwrap();
    assert_eq!(a.wedge(&b), expected);
}

#[test]
fn two_form_of_phi_is_omega() {
    for n in 1..=4 {
        let w = two_form_of_matrix(&build_phi(n)).unwrap();
        assert_eq!(w, omega(n));
        assert_eq!(w, theta_minus(n).add(&tau(n).scale_upoly(&UPoly::u().scale(&q(2)))).add(&theta_plus(n)));
    }
}

#[test]
fn two_form_of_scalar_n1() {
    let n = 1;
    let a = q(5);
    let m = OpMatrix::from_rows(n, vec![vec![c(n, a.clone()), WeylElement::zero(n)], vec![WeylElement::zero(n), c(n, -&a)]]).unwrap();
    // e_1 e_-1 a + e_-1 e_1 (-a) = 2a e_1 e_-1
    let expected = ExtElement::from_labels(n, &[1, -1], c(n, &a * &q(2))).unwrap();
    assert_eq!(two_form_of_matrix(&m).unwrap(), expected);
}

#[test]
fn basic_two_forms_at_n2() {
    let n = 2;
    assert_eq!(theta_minus(n), ExtElement::from_labels(n, &[1, 2], x(n, 1, 2).scale(&q(2))).unwrap());
    assert_eq!(theta_plus(n), ExtElement::from_labels(n, &[-2, -1], d(n, 1, 2).scale(&q(2))).unwrap());
    let t = ExtElement::from_labels(n, &[1, -1], c(n, q(1))).unwrap().add(&ExtElement::from_labels(n, &[2, -2], c(n, q(1))).unwrap());
    assert_eq!(tau(n), t);
    // tau^2 = 2 sum_{i<j} e_i e_j e_-j e_-i
    let sq = ExtElement::from_labels(n, &[1, 2, -2, -1], c(n, q(2))).unwrap();
    assert_eq!(tau(n).wedge(&tau(n)), sq);
    assert_eq!(theta_plus(n).commutator(&theta_minus(n)), sq.scale(&q(2)));
    assert!(theta_commutation_check(2, 1, 1));
}

#[test]
fn volume_coefficients() {
    let n = 2;
    let cfg = PfConfig::default();
    let xi = two_form_of_matrix(&build_phi(n)).unwrap();
    let pf = pf_anti(&build_phi(n), Backend::Restricted, &cfg).unwrap();
    assert_eq!(volume_coefficient(&xi.wedge_power(2)), pf.scale(&q(8)));
    for n in 1..=4 {
        assert_eq!(volume_coefficient(&tau(n).wedge_power(n as u32)), c(n, Rational::factorial(n as u64)));
    }
    assert_eq!(pf_via_forms(&build_phi(2)).unwrap().to_string(), "x[1,2]d[1,2] + u^2 + 1/2");
    assert_eq!(pf_via_forms(&build_phi(3)).unwrap(), pf_anti(&build_phi(3), Backend::Restricted, &cfg).unwrap());
}

#[test]
fn normal_ordered_powers_are_binomial() {
    for n in 1..=3 {
        let theta = theta_words(n, GenKind::Mult).add(&theta_words(n, GenKind::Deriv));
        for m in 0..=4u32 {
            let mut expected = ExtElement::zero(n);
            for k in 0..=m {
                let term = theta_minus(n).wedge_power(k).wedge(&theta_plus(n).wedge_power(m - k));
                expected = expected.add(&term.scale(&binomial(m as u64, k as u64)));
            }
            assert_eq!(normal_order_form(&theta.wedge_power(m)), expected, "n={n} m={m}");
        }
    }
}

#[test]
fn theta_power_examples() {
    assert!(theta_power_identity_check(2, 1));
    assert!(theta_power_identity_check(4, 2));
    assert!(expansion_check(3, 3));
    assert!(theta_commutation_check(3, 2, 2));
    assert!(theta_commutation_check(4, 0, 3));
}

#[test]
fn c_coefficients() {
    for m in 0..=10 {
        assert_eq!(c_coeff(0, m), q(1));
    }
    assert_eq!(c_coeff(1, 2), q(1));
    assert_eq!(c_coeff(2, 4), q(3));
}

#[test]
fn shuffle_sign_examples() {
    assert_eq!(shuffle_sign(2, &[1]), -1);
    for n in 0..=5 {
        let all: Vec<usize> = (1..=n).collect();
        assert_eq!(shuffle_sign(n, &all), 1);
    }
    // independent: e_([n]-I) e_I against e_[n]
    let n = 4;
    for mask in 0u32..16 {
        let i: Vec<usize> = (1..=n).filter(|k| mask & (1 << (k - 1)) != 0).collect();
        let rest: Vec<usize> = (1..=n).filter(|k| !i.contains(k)).collect();
        let pos = |v: &[usize]| ExtIndex::from_positions(&v.iter().map(|k| k - 1).collect::<Vec<_>>());
        let (sign, _) = pos(&rest).wedge(&pos(&i)).unwrap();
        assert_eq!(sign, shuffle_sign(n, &i), "I={i:?}");
    }
}

// ---- capelli ------------------------------------------------------------

#[test]
fn gamma_expansions() {
    assert_eq!(gamma(2, 1).unwrap().element, &x(2, 1, 2) * &d(2, 1, 2));
    let n = 4;
    let mut sum = WeylElement::zero(n);
    for v in VarIndex::all(n) {
        sum = &sum + &(&x(n, v.i(), v.j()) * &d(n, v.i(), v.j()));
    }
    assert_eq!(gamma(n, 1).unwrap().element, sum);
}

fn hermite_oracle(m: u32) -> Vec<(u32, BigInt)> {
    // H_m(x) = sum_k (-1)^k m! / (k! (m-2k)!) (2x)^(m-2k)
    let fact = |k: u32| (1..=k).fold(BigInt::from(1), |a, b| a * b);
    (0..=m / 2)
        .map(|k| {
            let e = m - 2 * k;
            let mut v = fact(m) / (fact(k) * fact(e)) * BigInt::from(2).pow(e);
            if k % 2 == 1 {
                v = -v;
            }
            (e, v)
        })
        .collect()
}

#[test]
fn hermite_polynomials() {
    assert_eq!(hermite(2).to_string(), "4x^2 - 2");
    assert_eq!(hermite(3).to_string(), "8x^3 - 12x");
    for m in 0..=12 {
        let h = hermite(m);
        for (e, v) in hermite_oracle(m) {
            assert_eq!(h.coeff(e), v, "H_{m} at x^{e}");
        }
        assert_eq!(h.degree(), Some(m));
    }
}

#[test]
fn a_polynomials() {
    assert_eq!(a_poly(0), UPoly::one());
    assert_eq!(a_poly(1), UPoly::u());
    assert_eq!(a_poly(2).to_string(), "u^2 + 1/2");
    assert_eq!(a_poly(3).to_string(), "u^3 + 3/2 u");
    for m in 0..=12u32 {
        // m! / (4^k k! (m-2k)!)
        let expected = UPoly::from_terms((0..=m / 2).map(|k| {
            let den = &(&q(4).pow(k) * &Rational::factorial(k as u64)) * &Rational::factorial((m - 2 * k) as u64);
            (m - 2 * k, Rational::factorial(m as u64).checked_div(&den).unwrap())
        }));
        assert_eq!(a_poly(m), expected);
    }
}

#[test]
fn hermite_relation_by_hand_at_m2() {
    // (-i/2)^2 (4 (iu)^2 - 2) = u^2 + 1/2
    let minus_half_i = GaussRational::new(q(0), frac(-1, 2));
    let factor = minus_half_i.pow(2);
    assert_eq!(factor, GaussRational::real(frac(-1, 4)));
    let h_at_iu_u2 = GaussRational::real(q(-4));
    let h_at_iu_u0 = GaussRational::real(q(-2));
    assert_eq!(&factor * &h_at_iu_u2, GaussRational::real(q(1)));
    assert_eq!(&factor * &h_at_iu_u0, GaussRational::real(frac(1, 2)));
    assert!((0..=10).all(hermite_relation_check));
}

#[test]
fn main_identity_small_cases() {
    let cfg = PfConfig::default();
    assert_eq!(pf_phi(1, Backend::Restricted, &cfg).unwrap(), u(1));
    let n = 2;
    let expected = &WeylElement::scalar(n, a_poly(2)) + &gamma(n, 1).unwrap().element;
    assert_eq!(pf_phi(n, Backend::Restricted, &cfg).unwrap(), expected);
    let n = 3;
    let expected = &WeylElement::scalar(n, a_poly(3)) + &gamma(n, 1).unwrap().element.scale_upoly(&a_poly(1));
    assert_eq!(pf_phi(n, Backend::Restricted, &cfg).unwrap(), expected);
    for n in 1..=3 {
        assert!(main_identity_check(n, Backend::Forms, &cfg).unwrap().pass);
    }
}

#[test]
fn symbol_level() {
    let n = 2;
    assert_eq!(symbol_pfaffian(n).unwrap().to_string(), "x[1,2]xi[1,2] + u^2");
    let cfg = PfConfig::default();
    let pf = pf_phi(n, Backend::Restricted, &cfg).unwrap();
    // the 1/2 disappears at top order
    assert_eq!(principal_symbol(&pf).to_string(), "x[1,2]xi[1,2]");
}

#[test]
fn explicit_invariance_commutators() {
    let n = 2;
    let g1 = gamma(n, 1).unwrap().element;
    for i in 1..=n {
        for j in 1..=n {
            assert!(commutator(&dpi(n, i, j).unwrap(), &g1).unwrap().is_zero());
        }
    }
    let n = 4;
    let g2 = gamma(n, 2).unwrap().element;
    for i in 1..=n {
        for j in 1..=n {
            assert!(commutator(&dpi(n, i, j).unwrap(), &g2).unwrap().is_zero(), "E_{i}{j}");
        }
    }
}

#[test]
fn group_invariance_spot_checks() {
    let cfg = PfConfig::default();
    let pf2 = pf_phi(2, Backend::Restricted, &cfg).unwrap();
    let g = ScalarMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]).unwrap();
    let f = AltPoly::coordinate(2, 1, 2).unwrap().pow(2);
    assert!(group_invariance_spot_check(&pf2, &g, &f).unwrap());

    let mut rng = sampling::rng(14);
    let pf3 = pf_phi(3, Backend::Restricted, &cfg).unwrap();
    let g = sampling::invertible(&mut rng, 3);
    for f in AltPoly::monomials_up_to(3, 2) {
        assert!(group_invariance_spot_check(&pf3, &g, &f).unwrap());
    }
}
