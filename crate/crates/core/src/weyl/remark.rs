//! Binomial expansion of `(A + B)^m` when the commutator `[A,B]` is central,
//! tested with `A = x`, `B = d` in one variable where `[A,B] = -1`.

use super::{commutator, WeylElement};
use crate::forms::c_coeff;
use crate::scalars::Rational;

/// Exponent carried by `[A,B]` in the `k`-th summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommutatorPower {
    /// `[A,B]^(2k)`, as displayed.
    Double,
    /// `[A,B]^k`, matching the `(2 tau^2)^k` specialization.
    Single,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemarkCheck {
    pub m: u32,
    /// Outcome with `[A,B]^(2k)`.
    pub printed: bool,
    /// Outcome with `[A,B]^k`.
    pub single_power: bool,
}

impl RemarkCheck {
    /// The reading that holds, preferring the displayed one.
    pub fn resolved(&self) -> Option<CommutatorPower> {
        if self.printed {
            Some(CommutatorPower::Double)
        } else if self.single_power {
            Some(CommutatorPower::Single)
        } else {
            None
        }
    }

    pub fn passes(&self) -> bool {
        self.resolved().is_some()
    }
}

/// `sum_k c_k(m) [A,B]^e(k) sum_s C(m-2k, s) B^s A^(m-2k-s)`.
pub fn remark_rhs(m: u32, power: CommutatorPower) -> WeylElement {
    let n = 2;
    let a = WeylElement::x(n, 1, 2).expect("n = 2");
    let b = WeylElement::d(n, 1, 2).expect("n = 2");
    let ab = commutator(&a, &b).expect("same n");
    let mut out = WeylElement::zero(n);
    for k in 0..=m / 2 {
        let r = m - 2 * k;
        let mut inner = WeylElement::zero(n);
        let mut binom = Rational::one();
        for s in 0..=r {
            inner = &inner + &(&b.pow(s) * &a.pow(r - s)).scale(&binom);
            binom = (&binom * &Rational::integer((r - s) as i64))
                .checked_div(&Rational::integer(s as i64 + 1))
                .expect("nonzero");
        }
        let e = match power {
            CommutatorPower::Double => 2 * k,
            CommutatorPower::Single => k,
        };
        out = &out + &(&ab.pow(e) * &inner).scale(&c_coeff(k as i64, m as i64));
    }
    out
}

/// Compares `(A + B)^m` with both readings of the expansion.
pub fn binomial_central_commutator_check(m: u32) -> RemarkCheck {
    let n = 2;
    let lhs = (&WeylElement::x(n, 1, 2).expect("n = 2") + &WeylElement::d(n, 1, 2).expect("n = 2")).pow(m);
    RemarkCheck {
        m,
        printed: lhs == remark_rhs(m, CommutatorPower::Double),
        single_power: lhs == remark_rhs(m, CommutatorPower::Single),
    }
}
