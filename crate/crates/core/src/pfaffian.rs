//! Pfaffians of alternating matrices whose entries need not commute.
//!
//! Three independent algorithms are provided for operator matrices:
//! [`pf_full`] sums over all of `S_2n`, [`pf_restricted`] sums over
//! permutations with `s(2i-1) < s(2i)` (grouped by perfect matching), and the
//! forms backend extracts a volume coefficient (see [`crate::forms`]). For
//! commuting entries [`pf_commutative`] sums once per perfect matching and
//! [`pf_expand_first_row`] recurses along the first row.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::opmatrix::{j_matrix, Matrix, OpMatrix, ScalarMatrix};
use crate::ring::Ring;
use crate::scalars::Rational;
use crate::weyl::WeylElement;

/// Perfect matching of `{1, ..., 2n}` as increasing pairs, listed in the
/// order they were chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
    sign: i8,
}

impl Matching {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        let m = 2 * pairs.len();
        let mut seen = vec![false; m + 1];
        for &(a, b) in &pairs {
            if a == 0 || a >= b || b > m || seen[a] || seen[b] {
                return Err(Error::DimensionMismatch(format!("{pairs:?} is not a perfect matching of [{m}]")));
            }
            seen[a] = true;
            seen[b] = true;
        }
        let flat: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        Ok(Matching { sign: inversion_sign(&flat), pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Parity of `(a1, b1, ..., an, bn)` as a permutation.
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn flattened(&self) -> Vec<usize> {
        self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect()
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.sign > 0 { "+" } else { "-" })?;
        for (a, b) in &self.pairs {
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

/// `(-1)^(number of inversions)`.
pub fn inversion_sign(seq: &[usize]) -> i8 {
    let mut inv = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All `(2n-1)!!` perfect matchings of `[m]`, each built by pairing the
/// smallest free element with a larger partner; partners are tried in
/// increasing order.
pub fn perfect_matchings(m: usize) -> Vec<Matching> {
    fn rec(free: &mut Vec<usize>, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Matching>) {
        if free.is_empty() {
            out.push(Matching::new(acc.clone()).expect("valid by construction"));
            return;
        }
        let a = free.remove(0);
        for k in 0..free.len() {
            let b = free.remove(k);
            acc.push((a, b));
            rec(free, acc, out);
            acc.pop();
            free.insert(k, b);
        }
        free.insert(0, a);
    }
    let mut out = Vec::new();
    if m.is_multiple_of(2) {
        rec(&mut (1..=m).collect(), &mut Vec::new(), &mut out);
    }
    out
}

/// How [`pf_restricted`] sums the `n!` orderings of the pairs of a matching.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OrderingStrategy {
    /// `n!` times one product when the pair entries commute, otherwise
    /// [`OrderingStrategy::SubsetDp`].
    #[default]
    Auto,
    /// `S(T) = sum_{e in T} S(T - e) e` over subsets `T` of the pairs.
    SubsetDp,
    /// Every ordering multiplied out.
    Naive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Full,
    Restricted,
    Forms,
    Commutative,
}

impl Backend {
    pub fn name(&self) -> &'static str {
        match self {
            Backend::Full => "full",
            Backend::Restricted => "restricted",
            Backend::Forms => "forms",
            Backend::Commutative => "commutative",
        }
    }

    pub const ALL: [Backend; 4] = [Backend::Full, Backend::Restricted, Backend::Forms, Backend::Commutative];
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Backend::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown backend `{s}` (full|restricted|forms|commutative)")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PfConfig {
    /// Largest dimension accepted by [`pf_full`].
    pub full_guard: usize,
    /// Largest dimension accepted by [`pf_restricted`] and the forms backend.
    pub restricted_guard: usize,
    pub strategy: OrderingStrategy,
}

impl Default for PfConfig {
    fn default() -> Self {
        PfConfig { full_guard: 8, restricted_guard: 12, strategy: OrderingStrategy::Auto }
    }
}

fn check_alternating<T: Ring>(x: &Matrix<T>) -> Result<usize> {
    if x.dim() % 2 == 1 {
        return Err(Error::OddDimension(x.dim()));
    }
    if !x.is_alternating() {
        return Err(Error::NotAlternating);
    }
    Ok(x.dim() / 2)
}

fn guard(dim: usize, limit: usize, backend: &'static str, hint: &'static str) -> Result<()> {
    if dim > limit {
        return Err(Error::DimensionGuard { dim, limit, backend, hint });
    }
    Ok(())
}

/// `1/n!` as a rational.
fn inv_factorial(n: usize) -> Rational {
    Rational::factorial(n as u64).recip().expect("nonzero")
}

/// `1/(2^n n!) sum_{s in S_2n} sgn(s) X[s1,s2] ... X[s(2n-1),s(2n)]`, with
/// ordered products. Branches whose partial product vanishes are pruned.
pub fn pf_full<T: Ring>(x: &Matrix<T>, cfg: &PfConfig) -> Result<T> {
    let n = check_alternating(x)?;
    guard(x.dim(), cfg.full_guard, "full", "use the restricted or forms backend")?;
    let ctx = x.ctx().clone();
    if n == 0 {
        return Ok(T::one(&ctx));
    }
    let m = x.dim();
    fn rec<T: Ring>(x: &Matrix<T>, used: &mut Vec<bool>, seq: &mut Vec<usize>, prefix: &T) -> T {
        let m = x.dim();
        if seq.len() == m {
            return if inversion_sign(seq) > 0 { prefix.clone() } else { prefix.negated() };
        }
        let mut acc = T::zero(&x.ctx().clone());
        for a in 0..m {
            if used[a] {
                continue;
            }
            for b in 0..m {
                if used[b] || a == b || x.get(a, b).is_zero() {
                    continue;
                }
                let next = prefix.times(x.get(a, b));
                if next.is_zero() {
                    continue;
                }
                used[a] = true;
                used[b] = true;
                seq.push(a);
                seq.push(b);
                acc = acc.plus(&rec(x, used, seq, &next));
                seq.truncate(seq.len() - 2);
                used[a] = false;
                used[b] = false;
            }
        }
        acc
    }
    let firsts: Vec<(usize, usize)> =
        (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).filter(|&(a, b)| a != b && !x.get(a, b).is_zero()).collect();
    let total = firsts
        .par_iter()
        .map(|&(a, b)| {
            let mut used = vec![false; m];
            used[a] = true;
            used[b] = true;
            rec(x, &mut used, &mut vec![a, b], x.get(a, b))
        })
        .reduce(|| T::zero(&ctx), |p, q| p.plus(&q));
    let norm = (&Rational::integer(2).pow(n as u32) * &Rational::factorial(n as u64)).recip()?;
    Ok(total.scaled(&norm))
}

/// `1/n! sum sgn(s) X[s1,s2] ... X[s(2n-1),s(2n)]` over `s` with
/// `s(2i-1) < s(2i)`, grouped as (perfect matching) x (ordering of pairs).
pub fn pf_restricted<T: Ring>(x: &Matrix<T>, cfg: &PfConfig) -> Result<T> {
    let n = check_alternating(x)?;
    guard(x.dim(), cfg.restricted_guard, "restricted", "raise the guard with --max-dim")?;
    let ctx = x.ctx().clone();
    if n == 0 {
        return Ok(T::one(&ctx));
    }
    let total = perfect_matchings(x.dim())
        .par_iter()
        .map(|mt| {
            let entries: Vec<&T> = mt.pairs().iter().map(|&(a, b)| x.get(a - 1, b - 1)).collect();
            if entries.iter().any(|e| e.is_zero()) {
                return T::zero(&ctx);
            }
            let s = symmetrized_product(&ctx, &entries, cfg.strategy);
            if mt.sign() > 0 {
                s
            } else {
                s.negated()
            }
        })
        .reduce(|| T::zero(&ctx), |p, q| p.plus(&q));
    Ok(total.scaled(&inv_factorial(n)))
}

/// Sum over all orderings of the product of `entries`.
pub fn symmetrized_product<T: Ring>(ctx: &T::Ctx, entries: &[&T], strategy: OrderingStrategy) -> T {
    let k = entries.len();
    match strategy {
        OrderingStrategy::Auto => {
            let commuting = (0..k).all(|i| (i + 1..k).all(|j| entries[i].commutes_with(entries[j])));
            if commuting {
                let mut p = T::one(ctx);
                for e in entries {
                    p = p.times(e);
                }
                p.scaled(&Rational::factorial(k as u64))
            } else {
                symmetrized_product(ctx, entries, OrderingStrategy::SubsetDp)
            }
        }
        OrderingStrategy::SubsetDp => {
            let mut s: Vec<T> = Vec::with_capacity(1 << k);
            s.push(T::one(ctx));
            for mask in 1usize..(1 << k) {
                let mut acc = T::zero(ctx);
                for (e, entry) in entries.iter().enumerate() {
                    if mask & (1 << e) != 0 {
                        acc = acc.plus(&s[mask & !(1 << e)].times(entry));
                    }
                }
                s.push(acc);
            }
            s.pop().expect("nonempty")
        }
        OrderingStrategy::Naive => {
            let mut idx: Vec<usize> = (0..k).collect();
            let mut acc = T::zero(ctx);
            loop {
                let mut p = T::one(ctx);
                for &i in &idx {
                    p = p.times(entries[i]);
                }
                acc = acc.plus(&p);
                if !next_permutation(&mut idx) {
                    return acc;
                }
            }
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// One signed product per perfect matching. Entries are assumed to commute.
pub fn pf_commutative<T: Ring>(x: &Matrix<T>) -> Result<T> {
    check_alternating(x)?;
    let ctx = x.ctx().clone();
    let mut acc = T::zero(&ctx);
    for mt in perfect_matchings(x.dim()) {
        let mut p = T::one(&ctx);
        for &(a, b) in mt.pairs() {
            p = p.times(x.get(a - 1, b - 1));
            if p.is_zero() {
                break;
            }
        }
        if !p.is_zero() {
            acc = if mt.sign() > 0 { acc.plus(&p) } else { acc.minus(&p) };
        }
    }
    Ok(acc)
}

/// `Pf(X) = sum_{j>1} (-1)^j X[1,j] Pf(X without rows/columns 1, j)`.
pub fn pf_expand_first_row<T: Ring>(x: &Matrix<T>) -> Result<T> {
    check_alternating(x)?;
    fn rec<T: Ring>(x: &Matrix<T>) -> T {
        let m = x.dim();
        if m == 0 {
            return T::one(x.ctx());
        }
        let mut acc = T::zero(x.ctx());
        for j in 1..m {
            if x.get(0, j).is_zero() {
                continue;
            }
            let rest: Vec<usize> = (1..m).filter(|&k| k != j).collect();
            let term = x.get(0, j).times(&rec(&x.submatrix(&rest)));
            acc = if j % 2 == 1 { acc.plus(&term) } else { acc.minus(&term) };
        }
        acc
    }
    Ok(rec(x))
}

/// Error unless every pair of entries commutes.
pub fn check_commuting<T: Ring>(x: &Matrix<T>) -> Result<()> {
    let m = x.dim();
    let cells: Vec<(usize, usize)> = (0..m).flat_map(|r| (0..m).map(move |c| (r, c))).collect();
    for (k, &(r1, c1)) in cells.iter().enumerate() {
        for &(r2, c2) in &cells[k + 1..] {
            let (a, b) = (x.get(r1, c1), x.get(r2, c2));
            if !a.commutes_with(b) {
                return Err(Error::NonCommuting(format!("{},{}", r1 + 1, c1 + 1), format!("{},{}", r2 + 1, c2 + 1)));
            }
        }
    }
    Ok(())
}

/// Pfaffian of an alternating operator matrix through the chosen backend.
pub fn pfaffian(x: &OpMatrix, backend: Backend, cfg: &PfConfig) -> Result<WeylElement> {
    match backend {
        Backend::Full => pf_full(x, cfg),
        Backend::Restricted => pf_restricted(x, cfg),
        Backend::Commutative => pf_commutative(x),
        Backend::Forms => {
            check_alternating(x)?;
            guard(x.dim(), cfg.restricted_guard, "forms", "raise the guard with --max-dim")?;
            Ok(crate::forms::pf_of_alternating_via_forms(x))
        }
    }
}

/// `Pf(X) := Pf(X J_2n)` for anti-alternating `X`.
pub fn pf_anti(x: &OpMatrix, backend: Backend, cfg: &PfConfig) -> Result<WeylElement> {
    if x.dim() % 2 == 1 {
        return Err(Error::OddDimension(x.dim()));
    }
    if !x.is_anti_alternating() {
        return Err(Error::NotAntiAlternating);
    }
    pfaffian(&x.scalar_mul_right(&j_matrix(x.dim()))?, backend, cfg)
}

/// `Pf(g X g^) == det(g) Pf(X)` with `g^ = J tg J`.
pub fn pf_equivariance_check(g: &ScalarMatrix, x: &OpMatrix, cfg: &PfConfig) -> Result<bool> {
    let lhs = pf_anti(&crate::opmatrix::scalar_conj(g, x)?, Backend::Restricted, cfg)?;
    let rhs = pf_anti(x, Backend::Restricted, cfg)?.scale(&g.det());
    Ok(lhs == rhs)
}
