//! Exact computation with differential operators on alternating matrices:
//! noncommutative Pfaffians over the Weyl algebra, the skew Capelli
//! operators `Gamma_k`, and the Hermite-type generating function
//! `Pf(Phi(u)) = sum_k a_(n-2k)(u) Gamma_k`.
//!
//! All arithmetic is over exact rationals; equality of results is equality
//! of canonical forms.

pub mod capelli;
pub mod cli;
pub mod error;
pub mod forms;
pub mod opmatrix;
pub mod pfaffian;
pub mod ring;
pub mod sampling;
pub mod scalars;
pub mod suite;
pub mod weyl;

pub use error::{Error, Result};
