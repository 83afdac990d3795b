use std::cmp::Ordering;
use std::fmt;

use super::num_vars;
use crate::error::{Error, Result};

/// Independent coordinate `x[i,j]` with `1 <= i < j <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarIndex {
    i: usize,
    j: usize,
}

impl VarIndex {
    pub fn new(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n || i >= j {
            return Err(Error::IndexOutOfRange { i, j, n });
        }
        Ok(VarIndex { i, j })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// Row-major position among the `n(n-1)/2` coordinates.
    pub fn position(&self, n: usize) -> usize {
        (self.i - 1) * (2 * n - self.i) / 2 + (self.j - self.i - 1)
    }

    /// All coordinates of `Alt_n` in position order.
    pub fn all(n: usize) -> Vec<VarIndex> {
        let mut out = Vec::with_capacity(num_vars(n));
        for i in 1..=n {
            for j in i + 1..=n {
                out.push(VarIndex { i, j });
            }
        }
        out
    }
}

impl fmt::Display for VarIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.i, self.j)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    /// Multiplication operator `x[i,j]`.
    Mult,
    /// Derivation `d[i,j]`.
    Deriv,
}

impl GenKind {
    pub fn letter(&self) -> char {
        match self {
            GenKind::Mult => 'x',
            GenKind::Deriv => 'd',
        }
    }
}

/// Canonical generator over a stored coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: GenKind,
    pub var: VarIndex,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.var)
    }
}

/// Generator addressed by an arbitrary index pair; `(j,i)` is the negative
/// of `(i,j)` and the diagonal is zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedGenerator {
    pub kind: GenKind,
    pub i: usize,
    pub j: usize,
}

impl SignedGenerator {
    pub fn mult(i: usize, j: usize) -> Self {
        SignedGenerator { kind: GenKind::Mult, i, j }
    }

    pub fn deriv(i: usize, j: usize) -> Self {
        SignedGenerator { kind: GenKind::Deriv, i, j }
    }

    /// `None` on the diagonal, otherwise the sign and canonical generator.
    pub fn resolve(&self, n: usize) -> Result<Option<(i8, Generator)>> {
        if self.i == 0 || self.j == 0 || self.i > n || self.j > n {
            return Err(Error::IndexOutOfRange { i: self.i, j: self.j, n });
        }
        Ok(match self.i.cmp(&self.j) {
            Ordering::Equal => None,
            Ordering::Less => Some((1, Generator { kind: self.kind, var: VarIndex::new(n, self.i, self.j)? })),
            Ordering::Greater => Some((-1, Generator { kind: self.kind, var: VarIndex::new(n, self.j, self.i)? })),
        })
    }
}

/// Formal, unevaluated product of canonical generators, kept for the
/// normal-ordering map which needs the word rather than its value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn concat(&self, rhs: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + rhs.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&rhs.0);
        Word(v)
    }
}

/// Normal-ordered monomial `x^a d^b`, stored as dense exponent vectors
/// indexed by [`VarIndex::position`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylMonomial {
    pub(crate) x: Vec<u32>,
    pub(crate) d: Vec<u32>,
}

impl WeylMonomial {
    pub fn one(n: usize) -> Self {
        let k = num_vars(n);
        WeylMonomial { x: vec![0; k], d: vec![0; k] }
    }

    pub fn from_exponents(x: Vec<u32>, d: Vec<u32>) -> Self {
        debug_assert_eq!(x.len(), d.len());
        WeylMonomial { x, d }
    }

    pub fn generator(n: usize, g: Generator) -> Self {
        let mut m = WeylMonomial::one(n);
        let p = g.var.position(n);
        match g.kind {
            GenKind::Mult => m.x[p] = 1,
            GenKind::Deriv => m.d[p] = 1,
        }
        m
    }

    pub fn x_exponents(&self) -> &[u32] {
        &self.x
    }

    pub fn d_exponents(&self) -> &[u32] {
        &self.d
    }

    pub fn x_degree(&self) -> u32 {
        self.x.iter().sum()
    }

    pub fn d_degree(&self) -> u32 {
        self.d.iter().sum()
    }

    pub fn degree(&self) -> u32 {
        self.x_degree() + self.d_degree()
    }

    pub fn is_one(&self) -> bool {
        self.x.iter().chain(&self.d).all(|e| *e == 0)
    }

    /// Commutative product (exponent addition), as in the symbol algebra.
    pub fn commutative_mul(&self, rhs: &WeylMonomial) -> WeylMonomial {
        WeylMonomial {
            x: self.x.iter().zip(&rhs.x).map(|(a, b)| a + b).collect(),
            d: self.d.iter().zip(&rhs.d).map(|(a, b)| a + b).collect(),
        }
    }

    /// Text of the operator factors, e.g. `x[1,2]^2d[1,3]`; empty for 1.
    pub(crate) fn factors_text(&self, vars: &[VarIndex], d_letter: &str) -> String {
        let mut out = String::new();
        for (letter, exps) in [("x", &self.x), (d_letter, &self.d)] {
            for (v, e) in vars.iter().zip(exps.iter()) {
                match e {
                    0 => {}
                    1 => out.push_str(&format!("{letter}{v}")),
                    e => out.push_str(&format!("{letter}{v}^{e}")),
                }
            }
        }
        out
    }
}

impl Ord for WeylMonomial {
    /// Graded lexicographic on `(x, d)`: total degree first, then the
    /// exponent vectors compared lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.x.cmp(&other.x))
            .then_with(|| self.d.cmp(&other.d))
    }
}

impl PartialOrd for WeylMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for WeylMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{:?}d{:?}", self.x, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_row_major() {
        let n = 4;
        let all = VarIndex::all(n);
        assert_eq!(all.len(), 6);
        for (p, v) in all.iter().enumerate() {
            assert_eq!(v.position(n), p);
        }
        assert_eq!(all[3], VarIndex::new(4, 2, 3).unwrap());
    }

    #[test]
    fn var_index_rejects_bad_pairs() {
        assert!(VarIndex::new(3, 2, 2).is_err());
        assert!(VarIndex::new(3, 2, 1).is_err());
        assert!(VarIndex::new(3, 1, 4).is_err());
        assert!(VarIndex::new(3, 0, 1).is_err());
    }

    #[test]
    fn graded_order() {
        let n = 3;
        let x12 = WeylMonomial::generator(n, Generator { kind: GenKind::Mult, var: VarIndex::new(n, 1, 2).unwrap() });
        let x13 = WeylMonomial::generator(n, Generator { kind: GenKind::Mult, var: VarIndex::new(n, 1, 3).unwrap() });
        let one = WeylMonomial::one(n);
        let sq = x12.commutative_mul(&x12);
        assert!(one < x13 && x13 < x12 && x12 < sq);
    }
}
