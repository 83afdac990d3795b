//! The ring `PD(Alt_n)` of polynomial-coefficient differential operators on
//! alternating `n x n` matrices.
//!
//! Only the independent coordinates `x[i,j]`, `i < j`, are stored. Accessors
//! such as [`signed_generator`] implement `x[j,i] = -x[i,j]` and the zero
//! diagonal. Elements are kept in normal-ordered form (all multiplication
//! operators left of all derivations) and coefficients are polynomials in the
//! central parameter `u`, so equality of elements is map equality.

mod action;
mod element;
mod monomial;
mod parse;
mod poly;
mod remark;

pub use action::{apply, conjugate_derivation, conjugate_multiplication, dpi, group_action, GroupAction};
pub use element::{commutator, normal_order_word, signed_generator, weyl_mul, WeylElement};
pub use monomial::{GenKind, Generator, SignedGenerator, VarIndex, WeylMonomial, Word};
pub use parse::parse_element;
pub use poly::{total_symbol, principal_symbol, AltPoly, SymbolPoly};
pub use remark::{binomial_central_commutator_check, CommutatorPower, RemarkCheck};

/// Number of independent coordinates `x[i,j]`, `i < j`, on `Alt_n`.
pub fn num_vars(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}
