//! Square matrices over a [`Ring`]: operator matrices over the Weyl algebra
//! (`M`, `D`, `Phi~(u)`, `Phi(u)`), rational matrices (`J`, `iota(g)`), and
//! symbol matrices.
//!
//! Indexing through `get`/`set` is 0-based. The mirror map `-i := 2n+1-i`
//! of the anti-alternating convention is [`mirror`] on 1-based indices.

use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::scalars::{Rational, UPoly};
use crate::weyl::{
    conjugate_derivation, conjugate_multiplication, signed_generator, GenKind, SymbolPoly,
    WeylElement, WeylMonomial,
};

#[derive(Clone, PartialEq)]
pub struct Matrix<T: Ring> {
    ctx: T::Ctx,
    dim: usize,
    entries: Vec<T>,
}

pub type OpMatrix = Matrix<WeylElement>;
pub type ScalarMatrix = Matrix<Rational>;
pub type SymbolMatrix = Matrix<SymbolPoly>;

/// `dim + 1 - i` for a 1-based index `i`.
pub fn mirror(dim: usize, i: usize) -> usize {
    dim + 1 - i
}

impl<T: Ring> Matrix<T> {
    pub fn from_fn(ctx: T::Ctx, dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        Matrix { ctx, dim, entries }
    }

    pub fn zeros(ctx: T::Ctx, dim: usize) -> Self {
        let z = T::zero(&ctx);
        Matrix::from_fn(ctx, dim, |_, _| z.clone())
    }

    pub fn identity(ctx: T::Ctx, dim: usize) -> Self {
        let (z, o) = (T::zero(&ctx), T::one(&ctx));
        Matrix::from_fn(ctx, dim, |r, c| if r == c { o.clone() } else { z.clone() })
    }

    pub fn from_rows(ctx: T::Ctx, rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch("rows must form a square matrix".into()));
        }
        Ok(Matrix { ctx, dim, entries: rows.into_iter().flatten().collect() })
    }

    /// Embeds a rational matrix into the ring.
    pub fn lift(ctx: T::Ctx, g: &ScalarMatrix) -> Self {
        let one = T::one(&ctx);
        Matrix::from_fn(ctx, g.dim, |r, c| one.scaled(g.get(r, c)))
    }

    pub fn ctx(&self) -> &T::Ctx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn map<U: Ring>(&self, ctx: U::Ctx, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { ctx, dim: self.dim, entries: self.entries.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.ctx.clone(), self.dim, |r, c| self.get(c, r).clone())
    }

    pub fn neg(&self) -> Self {
        self.map(self.ctx.clone(), T::negated)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        Ok(Matrix::from_fn(self.ctx.clone(), self.dim, |r, c| self.get(r, c).plus(rhs.get(r, c))))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        Ok(Matrix::from_fn(self.ctx.clone(), self.dim, |r, c| self.get(r, c).minus(rhs.get(r, c))))
    }

    /// Exact product; entries multiply in the order `self[r][k] * rhs[k][c]`.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let n = self.dim;
        Ok(Matrix::from_fn(self.ctx.clone(), n, |r, c| {
            let mut acc = T::zero(&self.ctx);
            for k in 0..n {
                let (a, b) = (self.get(r, k), rhs.get(k, c));
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.plus(&a.times(b));
                }
            }
            acc
        }))
    }

    /// `g * self` for a rational matrix `g`.
    pub fn scalar_mul_left(&self, g: &ScalarMatrix) -> Result<Self> {
        Matrix::lift(self.ctx.clone(), g).matmul(self)
    }

    /// `self * g` for a rational matrix `g`.
    pub fn scalar_mul_right(&self, g: &ScalarMatrix) -> Result<Self> {
        self.matmul(&Matrix::lift(self.ctx.clone(), g))
    }

    /// Principal submatrix on the given 0-based rows/columns.
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(self.ctx.clone(), idx.len(), |r, c| self.get(idx[r], idx[c]).clone())
    }

    /// Block `[r0, r0+len) x [c0, c0+len)`.
    pub fn block(&self, r0: usize, c0: usize, len: usize) -> Self {
        Matrix::from_fn(self.ctx.clone(), len, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    /// Assembles `[[a, b], [c, d]]` from equal-size blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        let h = a.dim;
        if [b.dim, c.dim, d.dim].iter().any(|x| *x != h) {
            return Err(Error::DimensionMismatch("blocks must share a size".into()));
        }
        Ok(Matrix::from_fn(a.ctx.clone(), 2 * h, |r, col| {
            let src = match (r < h, col < h) {
                (true, true) => a,
                (true, false) => b,
                (false, true) => c,
                (false, false) => d,
            };
            src.get(r % h, col % h).clone()
        }))
    }

    /// `X[i][j] = -X[j][i]` for all `i, j` (diagonal zero).
    pub fn is_alternating(&self) -> bool {
        (0..self.dim).all(|r| {
            (r..self.dim).all(|c| {
                if r == c {
                    self.get(r, r).is_zero()
                } else {
                    *self.get(r, c) == self.get(c, r).negated()
                }
            })
        })
    }

    /// `X[i][j] = -X[-j][-i]` with `-i := 2n+1-i`.
    pub fn is_anti_alternating(&self) -> bool {
        let last = self.dim.saturating_sub(1);
        (0..self.dim).all(|r| {
            (0..self.dim).all(|c| *self.get(r, c) == self.get(last - c, last - r).negated())
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(T::is_zero)
    }

    pub fn to_json(&self, entry: impl Fn(&T) -> Value) -> Value {
        Value::Array(
            (0..self.dim)
                .map(|r| Value::Array((0..self.dim).map(|c| entry(self.get(r, c))).collect()))
                .collect(),
        )
    }

    fn check_dim(&self, rhs: &Self) -> Result<()> {
        if self.dim != rhs.dim || self.ctx != rhs.ctx {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.dim, self.dim, rhs.dim, rhs.dim
            )));
        }
        Ok(())
    }
}

impl<T: Ring> fmt::Display for Matrix<T> {
    /// Aligned grid, one bracketed row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let mut widths = vec![0; self.dim];
        for (k, s) in cells.iter().enumerate() {
            let w = s.chars().count();
            widths[k % self.dim.max(1)] = widths[k % self.dim.max(1)].max(w);
        }
        for r in 0..self.dim {
            f.write_str("[ ")?;
            for c in 0..self.dim {
                let s = &cells[r * self.dim + c];
                let pad = widths[c] - s.chars().count();
                write!(f, "{}{s}", " ".repeat(pad))?;
                f.write_str(if c + 1 == self.dim { " ]" } else { "  " })?;
            }
            if r + 1 < self.dim {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl<T: Ring> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.dim, self.dim)?;
        fmt::Display::fmt(self, f)
    }
}

impl ScalarMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            (),
            rows.iter().map(|r| r.iter().map(|v| Rational::integer(*v)).collect()).collect(),
        )
    }

    pub fn diag(values: &[Rational]) -> Self {
        Matrix::from_fn((), values.len(), |r, c| {
            if r == c {
                values[r].clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// Exact determinant by fraction-free-free Gaussian elimination over Q.
    pub fn det(&self) -> Rational {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|r| !a[r * n + col].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                for c in 0..n {
                    a.swap(p * n + c, col * n + c);
                }
                det = -det;
            }
            let pivot = a[col * n + col].clone();
            det = &det * &pivot;
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let f = a[r * n + col].checked_div(&pivot).expect("nonzero pivot");
                for c in col..n {
                    let v = &a[r * n + c] - &(&f * &a[col * n + c]);
                    a[r * n + c] = v;
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse over Q.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut inv = Matrix::<Rational>::identity((), n).entries;
        for col in 0..n {
            let p = (col..n).find(|r| !a[r * n + col].is_zero()).ok_or(Error::Singular)?;
            if p != col {
                for c in 0..n {
                    a.swap(p * n + c, col * n + c);
                    inv.swap(p * n + c, col * n + c);
                }
            }
            let pivot_inv = a[col * n + col].recip()?;
            for c in 0..n {
                a[col * n + c] = &a[col * n + c] * &pivot_inv;
                inv[col * n + c] = &inv[col * n + c] * &pivot_inv;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let f = a[r * n + col].clone();
                for c in 0..n {
                    a[r * n + c] = &a[r * n + c] - &(&f * &a[col * n + c]);
                    inv[r * n + c] = &inv[r * n + c] - &(&f * &inv[col * n + c]);
                }
            }
        }
        Ok(Matrix { ctx: (), dim: n, entries: inv })
    }
}

/// `M = (x[i,j])`, the alternating matrix of multiplication operators.
pub fn build_m(n: usize) -> OpMatrix {
    generator_matrix(n, GenKind::Mult)
}

/// `D = (d[i,j])`, the alternating matrix of derivations.
pub fn build_d(n: usize) -> OpMatrix {
    generator_matrix(n, GenKind::Deriv)
}

fn generator_matrix(n: usize, kind: GenKind) -> OpMatrix {
    Matrix::from_fn(n, n, |r, c| signed_generator(n, r + 1, c + 1, kind).expect("index in range"))
}

/// Anti-diagonal identity `J_m`.
pub fn j_matrix(m: usize) -> ScalarMatrix {
    Matrix::from_fn((), m, |r, c| if r + c + 1 == m { Rational::one() } else { Rational::zero() })
}

/// Generic layout of `Phi~(u)`: upper-left `x`, upper-right `u J`, lower-left
/// `-u J`, lower-right `(a, b) -> d[n+1-b, n+1-a]`.
fn phi_tilde_layout<T: Ring>(
    ctx: T::Ctx,
    n: usize,
    u: &T,
    x: impl Fn(usize, usize) -> T,
    d: impl Fn(usize, usize) -> T,
) -> Matrix<T> {
    let dim = 2 * n;
    let zero = T::zero(&ctx);
    Matrix::from_fn(ctx, dim, |r, c| {
        let (r1, c1) = (r + 1, c + 1);
        match (r1 <= n, c1 <= n) {
            (true, true) => x(r1, c1),
            (true, false) if r1 + c1 == dim + 1 => u.clone(),
            (false, true) if r1 + c1 == dim + 1 => u.negated(),
            (false, false) => d(n + 1 - (c1 - n), n + 1 - (r1 - n)),
            _ => zero.clone(),
        }
    })
}

/// The alternating `2n x 2n` operator matrix `Phi~(u)`, entry for entry as
/// displayed: `M` in the upper-left block, anti-diagonal `u` blocks, and the
/// anti-transposed derivations in the lower-right block.
pub fn build_phi_tilde(n: usize) -> OpMatrix {
    phi_tilde_layout(
        n,
        n,
        &WeylElement::u(n),
        |i, j| signed_generator(n, i, j, GenKind::Mult).expect("index in range"),
        |i, j| signed_generator(n, i, j, GenKind::Deriv).expect("index in range"),
    )
}

/// `Phi(u) = Phi~(u) J_{2n}`, anti-alternating.
pub fn build_phi(n: usize) -> OpMatrix {
    build_phi_tilde(n).scalar_mul_right(&j_matrix(2 * n)).expect("square")
}

/// Block form of `build_phi`: `[[u 1, M J], [-J D, -u 1]]`.
pub fn phi_block_form(n: usize) -> OpMatrix {
    let u1 = OpMatrix::identity(n, n).map(n, |e| e * &WeylElement::u(n));
    let j = j_matrix(n);
    let mj = build_m(n).scalar_mul_right(&j).expect("square");
    let jd = build_d(n).scalar_mul_left(&j).expect("square");
    Matrix::from_blocks(&u1, &mj, &jd.neg(), &u1.neg()).expect("equal blocks")
}

/// The block matrix `[[u 1, D J], [-J M, -u 1]]` on which the
/// `GL_n`-equivariance through `iota(tg)` holds verbatim. It differs from
/// [`build_phi`] by exchanging the roles of `M` and `D`.
pub fn build_phi_swapped_block(n: usize) -> OpMatrix {
    let u1 = OpMatrix::identity(n, n).map(n, |e| e * &WeylElement::u(n));
    let j = j_matrix(n);
    let dj = build_d(n).scalar_mul_right(&j).expect("square");
    let jm = build_m(n).scalar_mul_left(&j).expect("square");
    Matrix::from_blocks(&u1, &dj, &jm.neg(), &u1.neg()).expect("equal blocks")
}

/// `Phi~(u)` with every `d[i,j]` replaced by the commuting symbol `xi[i,j]`.
pub fn build_phi_tilde_symbol(n: usize) -> SymbolMatrix {
    let var = |i: usize, j: usize, deriv: bool| -> SymbolPoly {
        match signed_generator(n, i, j, GenKind::Mult).expect("index in range").terms().next() {
            None => SymbolPoly::zero(n),
            Some((m, c)) => {
                let m = if deriv {
                    WeylMonomial::from_exponents(m.d_exponents().to_vec(), m.x_exponents().to_vec())
                } else {
                    m.clone()
                };
                SymbolPoly::from_monomial(n, m, c.clone())
            }
        }
    };
    phi_tilde_layout(
        n,
        n,
        &SymbolPoly::scalar(n, UPoly::u()),
        |i, j| var(i, j, false),
        |i, j| var(i, j, true),
    )
}

/// `iota(g) = diag(g, J tg^{-1} J)`, embedding `GL_n` into `SO_{2n}`.
pub fn iota(g: &ScalarMatrix) -> Result<ScalarMatrix> {
    let n = g.dim();
    let j = j_matrix(n);
    let lower = j.matmul(&g.transpose().inverse()?)?.matmul(&j)?;
    Matrix::from_blocks(g, &ScalarMatrix::zeros((), n), &ScalarMatrix::zeros((), n), &lower)
}

/// `g^ = J tg J`.
pub fn check_hat(g: &ScalarMatrix) -> ScalarMatrix {
    let j = j_matrix(g.dim());
    j.matmul(&g.transpose()).and_then(|m| m.matmul(&j)).expect("square")
}

/// `g X g^`, which keeps anti-alternating matrices anti-alternating.
pub fn scalar_conj<T: Ring>(g: &ScalarMatrix, x: &Matrix<T>) -> Result<Matrix<T>> {
    x.scalar_mul_left(g)?.scalar_mul_right(&check_hat(g))
}

/// Entrywise conjugation `pi(g) X_ij pi(g)^{-1}` for entries that are affine
/// in the generators: each `x[a,b]` and `d[a,b]` is replaced by its
/// closed-form conjugate; the central `u`-parts are unchanged.
pub fn ad_matrix(g: &ScalarMatrix, x: &OpMatrix) -> Result<OpMatrix> {
    let n = *x.ctx();
    if g.dim() != n {
        return Err(Error::DimensionMismatch(format!("g is {}x{}, expected n = {n}", g.dim(), g.dim())));
    }
    let vars = crate::weyl::VarIndex::all(n);
    let mut out = OpMatrix::zeros(n, x.dim());
    for r in 0..x.dim() {
        for c in 0..x.dim() {
            let mut acc = WeylElement::zero(n);
            for (m, coeff) in x.get(r, c).terms() {
                let image = match (m.x_degree(), m.d_degree()) {
                    (0, 0) => WeylElement::one(n),
                    (1, 0) => {
                        let p = m.x_exponents().iter().position(|e| *e == 1).expect("degree 1");
                        conjugate_multiplication(g, vars[p].i(), vars[p].j())?
                    }
                    (0, 1) => {
                        let p = m.d_exponents().iter().position(|e| *e == 1).expect("degree 1");
                        conjugate_derivation(g, vars[p].i(), vars[p].j())?
                    }
                    _ => return Err(Error::OutOfSpan { row: r + 1, col: c + 1 }),
                };
                acc = &acc + &image.scale_upoly(coeff);
            }
            out.set(r, c, acc);
        }
    }
    Ok(out)
}
