//! Seeded invariant suite run by `capelli suite`. Each property draws from
//! its own stream derived from the seed, and reports pass counts only, so
//! the output is a pure function of the seed.

use std::fmt;

use rand::Rng;
use serde_json::{json, Value};

use crate::capelli::{hermite_relation_check, invariance_check, main_identity_check, symbol_identity_check};
use crate::forms::{cr_check, ExtElement, ExtIndex};
use crate::opmatrix::{build_phi, iota, phi_block_form};
use crate::pfaffian::{pf_commutative, pf_equivariance_check, pf_full, pf_restricted, pfaffian, Backend, PfConfig};
use crate::sampling;
use crate::weyl::{
    apply, commutator, conjugate_derivation, conjugate_multiplication, dpi, weyl_mul, AltPoly, GroupAction,
    VarIndex, WeylElement,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
}

impl PropertyOutcome {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub seed: u64,
    pub properties: Vec<PropertyOutcome>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(PropertyOutcome::ok)
    }

    pub fn failing(&self) -> Vec<&'static str> {
        self.properties.iter().filter(|p| !p.ok()).map(|p| p.name).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "pass": self.all_passed(),
            "properties": self.properties.iter().map(|p| json!({"name": p.name, "passed": p.passed, "total": p.total})).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite seed {}", self.seed)?;
        for p in &self.properties {
            writeln!(f, "{:<32} {:>4}/{:<4} {}", p.name, p.passed, p.total, if p.ok() { "ok" } else { "FAILED" })?;
        }
        if self.all_passed() {
            write!(f, "result: pass")
        } else {
            write!(f, "result: FAILED ({})", self.failing().join(", "))
        }
    }
}

type Check = fn(&mut rand_chacha::ChaCha8Rng, &PfConfig) -> (usize, usize);

fn count(results: impl IntoIterator<Item = bool>) -> (usize, usize) {
    results.into_iter().fold((0, 0), |(p, t), ok| (p + ok as usize, t + 1))
}

const PROPERTIES: &[(&str, Check)] = &[
    ("scalars.field_axioms", field_axioms),
    ("weyl.associativity", weyl_associativity),
    ("weyl.leibniz", leibniz),
    ("weyl.conjugation", conjugation_of_generators),
    ("weyl.dpi_bracket", dpi_bracket),
    ("opmatrix.iota_homomorphism", iota_homomorphism),
    ("opmatrix.phi_block_form", |_, _| count((1..=5).map(|n| build_phi(n) == phi_block_form(n)))),
    ("pfaffian.backend_agreement", backend_agreement),
    ("pfaffian.pf_squared_is_det", pf_squared),
    ("pfaffian.equivariance", equivariance),
    ("forms.commutation_relations", |_, _| count((1..=4).map(cr_check))),
    ("forms.wedge_associativity", wedge_associativity),
    ("capelli.main_identity", main_identity),
    ("capelli.hermite_relation", |_, _| count((0..=10).map(hermite_relation_check))),
    ("capelli.symbol_identity", |_, _| count((1..=4).map(|n| symbol_identity_check(n).unwrap_or(false)))),
    ("capelli.invariance", |_, cfg| count((2..=3).map(|n| invariance_check(n, cfg).unwrap_or(false)))),
];

pub fn property_names() -> Vec<&'static str> {
    PROPERTIES.iter().map(|(n, _)| *n).collect()
}

pub fn run_suite(seed: u64, cfg: &PfConfig) -> SuiteReport {
    let properties = PROPERTIES
        .iter()
        .enumerate()
        .map(|(k, (name, check))| {
            let mut rng = sampling::rng(seed.wrapping_mul(1_000_003).wrapping_add(k as u64));
            let (passed, total) = check(&mut rng, cfg);
            PropertyOutcome { name, passed, total }
        })
        .collect();
    SuiteReport { seed, properties }
}

type Rng8 = rand_chacha::ChaCha8Rng;

fn field_axioms(rng: &mut Rng8, _: &PfConfig) -> (usize, usize) {
    count((0..200).map(|_| {
        let (a, b, c) = (sampling::rational(rng), sampling::rational(rng), sampling::rational(rng));
        &(&a + &b) + &c == &a + &(&b + &c) && &a * &(&b + &c) == &(&a * &b) + &(&a * &c) && &a * &b == &b * &a
    }))
}

fn weyl_associativity(rng: &mut Rng8, _: &PfConfig) -> (usize, usize) {
    count((0..60).map(|_| {
        let n = rng.gen_range(2..=3);
        let (a, b, c) = (
            sampling::weyl_element(rng, n, 2, 3),
            sampling::weyl_element(rng, n, 2, 3),
            sampling::weyl_element(rng, n, 2, 3),
        );
        &(&a * &b) * &c == &a * &(&b * &c)
    }))
}

fn leibniz(rng: &mut Rng8, _: &PfConfig) -> (usize, usize) {
    count((0..40).map(|_| {
        let n = rng.gen_range(2..=3);
        let (p, q) = (sampling::weyl_element(rng, n, 2, 2), sampling::weyl_element(rng, n, 2, 2));
        let f = sampling::alt_poly(rng, n, 3, 3);
        weyl_mul(&p, &q).map(|pq| apply(&pq, &f) == apply(&p, &apply(&q, &f))).unwrap_or(false)
    }))
}

fn conjugation_of_generators(rng: &mut Rng8, _: &PfConfig) -> (usize, usize) {
    count((0..8).map(|_| {
        let n = 3;
        let g = sampling::invertible(rng, n);
        let mut push = GroupAction::new(&g, n).expect("invertible");
        let mut pull = GroupAction::new(&g.inverse().expect("invertible"), n).expect("invertible");
        let fs = AltPoly::monomials_up_to(n, 2);
        VarIndex::all(n).into_iter().all(|v| {
            let (i, j) = (v.i(), v.j());
            let cd = conjugate_derivation(&g, i, j).expect("valid");
            let cm = conjugate_multiplication(&g, i, j).expect("valid");
            let d = WeylElement::d(n, i, j).expect("valid");
            let x = WeylElement::x(n, i, j).expect("valid");
            fs.iter().all(|f| {
                let pulled = pull.act(f);
                push.act(&apply(&d, &pulled)) == apply(&cd, f) && push.act(&apply(&x, &pulled)) == apply(&cm, f)
            })
        })
    }))
}

fn dpi_bracket(_: &mut Rng8, _: &PfConfig) -> (usize, usize) {
    let n = 3;
    let e = |i, j| dpi(n, i, j).expect("valid");
    let mut results = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    let mut rhs = WeylElement::zero(n);
                    if j == k {
                        rhs = &rhs + &e(i, l);
                    }
                    if l == i {
                        rhs = &rhs - &e(k, j);
                    }
                    results.push(commutator(&e(i, j), &e(k, l)).expect("same n") == rhs);
                }
            }
        }
    }
    count(results)
}

fn iota_homomorphism(rng: &mut Rng8, _: &PfConfig) -> (usize, usize) {
    count((0..20).map(|_| {
        let n = rng.gen_range(1..=3);
        let (g, h) = (sampling::invertible(rng, n), sampling::invertible(rng, n));
        let (ig, ih) = (iota(&g).expect("invertible"), iota(&h).expect("invertible"));
        let j = crate::opmatrix::j_matrix(2 * n);
        ig.matmul(&ih).ok() == iota(&g.matmul(&h).expect("square")).ok()
            && ig.transpose().matmul(&j).and_then(|m| m.matmul(&ig)).ok() == Some(j.clone())
            && ig.det() == crate::scalars::Rational::one()
    }))
}

fn backend_agreement(rng: &mut Rng8, cfg: &PfConfig) -> (usize, usize) {
    count((0..16).map(|t| {
        let dim = if t % 2 == 0 { 4 } else { 6 };
        let x = sampling::alternating_op_matrix(rng, 2, dim, 1);
        let r = pf_restricted(&x, cfg).ok();
        r.is_some() && pf_full(&x, cfg).ok() == r && pfaffian(&x, Backend::Forms, cfg).ok() == r
    }))
}

fn pf_squared(rng: &mut Rng8, _: &PfConfig) -> (usize, usize) {
    count((0..20).map(|t| {
        let x = sampling::alternating_scalar_matrix(rng, 2 + 2 * (t % 3));
        let pf = pf_commutative(&x).expect("alternating");
        &pf * &pf == x.det()
    }))
}

fn equivariance(rng: &mut Rng8, cfg: &PfConfig) -> (usize, usize) {
    count((0..10).map(|t| {
        let dim = if t % 2 == 0 { 4 } else { 6 };
        let g = sampling::invertible(rng, dim);
        let x = sampling::anti_alternating_op_matrix(rng, 2, dim, 1);
        pf_equivariance_check(&g, &x, cfg).unwrap_or(false)
    }))
}

fn wedge_associativity(rng: &mut Rng8, _: &PfConfig) -> (usize, usize) {
    let n = 2;
    let form = |rng: &mut Rng8| {
        let mut w = ExtElement::zero(n);
        for _ in 0..3 {
            let mask: u32 = rng.gen_range(0..16);
            let e = ExtIndex::from_positions(&(0..4).filter(|p| mask & (1 << p) != 0).collect::<Vec<_>>());
            w.add_term(e, &sampling::weyl_monomial(rng, n, 1));
        }
        w
    };
    count((0..20).map(|_| {
        let (a, b, c) = (form(rng), form(rng), form(rng));
        a.wedge(&b).wedge(&c) == a.wedge(&b.wedge(&c))
    }))
}

fn main_identity(_: &mut Rng8, cfg: &PfConfig) -> (usize, usize) {
    count((1..=4).flat_map(|n| {
        [Backend::Restricted, Backend::Forms].map(|b| main_identity_check(n, b, cfg).map(|r| r.pass).unwrap_or(false))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names = property_names();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), PROPERTIES.len());
    }
}
