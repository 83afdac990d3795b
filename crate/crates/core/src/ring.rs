//! Minimal ring interface shared by matrices and Pfaffian algorithms.
//!
//! Elements carry a context (`Ctx`) so that zero and one can be built for
//! rings whose elements know their own size, such as the Weyl algebra over
//! `Alt_n`.

use std::fmt;

use crate::scalars::Rational;

pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn is_zero(&self) -> bool;

    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, c: &Rational) -> Self;

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }

    fn from_rational(ctx: &Self::Ctx, c: &Rational) -> Self {
        Self::one(ctx).scaled(c)
    }

    fn commutes_with(&self, rhs: &Self) -> bool {
        self.times(rhs) == rhs.times(self)
    }
}

impl Ring for Rational {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero(_: &()) -> Self {
        Rational::zero()
    }
    fn one(_: &()) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
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
        self * c
    }
    fn commutes_with(&self, _: &Self) -> bool {
        true
    }
}
