//! Exact scalars: big rationals, polynomials in the central parameter `u`,
//! and Gaussian rationals for identities that involve `i = sqrt(-1)`.

mod gauss;
mod rational;
mod upoly;

pub use gauss::{gauss_arith, GaussOp, GaussRational};
pub use rational::{rational_arith, Rational, RationalOp};
pub use upoly::{upoly_arith, UPoly, UPolyOp};

pub(crate) use upoly::{fmt_scaled_power, join_signed};
