//! Transition matrices between bases of the ring of symmetric functions:
//! power sums to monomials `D(n)`, Schur to monomials `K(n)`, Jack `P` to
//! monomials `K^(alpha)(n)`, and the two character tables derived from them.
//!
//! All matrices are labelled by partitions in reverse-lex order.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::matrix::{QMatrix, RationalMatrix};
use crate::partitions::{aut_weight, enumerate_partitions, fat_count_formula, Partition};
use crate::rational::{qi, Rational};

/// A filling with rows weakly increasing and columns strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemistandardTableau {
    pub shape: Partition,
    pub rows: Vec<Vec<u32>>,
}

impl SemistandardTableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(|r| r.len() as u32).collect())?;
        let rows_ok = rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = rows.windows(2).all(|pair| pair[1].iter().zip(&pair[0]).all(|(lo, hi)| lo > hi));
        if !rows_ok || !cols_ok || rows.iter().flatten().any(|&v| v == 0) {
            return domain(format!("{rows:?} is not semistandard"));
        }
        Ok(SemistandardTableau { shape, rows })
    }

    /// `weight[i]` = number of entries equal to `i + 1`.
    pub fn weight(&self) -> Vec<u32> {
        let max = self.rows.iter().flatten().copied().max().unwrap_or(0) as usize;
        let mut w = vec![0u32; max];
        for &v in self.rows.iter().flatten() {
            w[v as usize - 1] += 1;
        }
        w
    }

    /// `0 = lambda^(0) ⊂ lambda^(1) ⊂ ... ⊂ lambda^(r)`: the shape occupied by
    /// entries `<= i`.
    pub fn chain(&self) -> Vec<Partition> {
        let r = self.weight().len() as u32;
        (0..=r)
            .map(|i| {
                Partition::from_unsorted(
                    self.rows.iter().map(|row| row.iter().filter(|&&v| v <= i).count() as u32).collect(),
                )
            })
            .collect()
    }

    /// `Psi_T = prod_i Psi_{lambda^(i) / lambda^(i-1)}`.
    pub fn psi(&self, alpha: &Rational) -> Rational {
        self.chain()
            .windows(2)
            .map(|w| psi_skew(&w[1], &w[0], alpha))
            .fold(Rational::one(), |acc, x| acc * x)
    }
}

/// `b_lambda(s) = (alpha a(s) + l(s) + 1) / (alpha a(s) + l(s) + alpha)`.
pub fn b_factor(lambda: &Partition, row: usize, col: usize, alpha: &Rational) -> Rational {
    let a = qi(lambda.arm(row, col) as i64);
    let l = qi(lambda.leg(row, col) as i64);
    let base = alpha * a + l;
    (&base + Rational::one()) / (base + alpha)
}

/// `Psi_{lambda/mu}` for a horizontal strip `lambda/mu`: the product over
/// cells of `mu` lying in a row that meets the strip but in no column that
/// meets it.
pub fn psi_skew(lambda: &Partition, mu: &Partition, alpha: &Rational) -> Rational {
    let lt = lambda.transpose();
    let mt = mu.transpose();
    let mut acc = Rational::one();
    for i in 0..lambda.len() {
        if lambda.part(i) == mu.part(i) {
            continue;
        }
        for j in 0..mu.part(i) as usize {
            if lt.part(j) != mt.part(j) {
                continue;
            }
            acc *= b_factor(mu, i, j, alpha) / b_factor(lambda, i, j, alpha);
        }
    }
    acc
}

/// Partitions `nu ⊆ lambda` with `lambda/nu` a horizontal strip of `k` cells.
pub fn strip_predecessors(lambda: &Partition, k: u32) -> Vec<Partition> {
    let parts = lambda.parts();
    let mut out = Vec::new();
    fn rec(parts: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == parts.len() {
            if left == 0 {
                out.push(Partition::from_unsorted(cur.clone()));
            }
            return;
        }
        let lower = parts.get(i + 1).copied().unwrap_or(0);
        let max_take = (parts[i] - lower).min(left);
        for take in 0..=max_take {
            cur.push(parts[i] - take);
            rec(parts, i + 1, left - take, cur, out);
            cur.pop();
        }
    }
    rec(parts, 0, k, &mut Vec::new(), &mut out);
    out
}

/// Every semistandard tableau of the given shape and weight.
pub fn semistandard_tableaux(shape: &Partition, weight: &[u32]) -> Vec<SemistandardTableau> {
    if weight.iter().sum::<u32>() != shape.size() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); shape.len()];
    fn rec(
        shape: &Partition,
        weight: &[u32],
        value: usize,
        rows: &mut Vec<Vec<u32>>,
        out: &mut Vec<SemistandardTableau>,
    ) {
        if value == weight.len() {
            out.push(SemistandardTableau { shape: shape.clone(), rows: rows.clone() });
            return;
        }
        let current: Vec<u32> = rows.iter().map(|r| r.len() as u32).collect();
        // choose how many cells of value+1 go in each row
        fn place(
            shape: &Partition,
            weight: &[u32],
            value: usize,
            current: &[u32],
            row: usize,
            left: u32,
            rows: &mut Vec<Vec<u32>>,
            out: &mut Vec<SemistandardTableau>,
        ) {
            if row == current.len() {
                if left == 0 {
                    rec(shape, weight, value + 1, rows, out);
                }
                return;
            }
            let cap_above = if row == 0 { shape.part(0) } else { current[row - 1] };
            let cap = shape.part(row).min(cap_above);
            let room = cap.saturating_sub(current[row]).min(left);
            for take in 0..=room {
                for _ in 0..take {
                    rows[row].push(value as u32 + 1);
                }
                place(shape, weight, value, current, row + 1, left - take, rows, out);
                for _ in 0..take {
                    rows[row].pop();
                }
            }
        }
        place(shape, weight, value, &current, 0, weight[value], rows, out);
    }
    rec(shape, weight, 0, &mut rows, &mut out);
    out
}

/// Sums a multiplicative strip weight over all chains, i.e. over all
/// semistandard tableaux of shape `lambda` and weight `mu`, by recursion on
/// the largest entry.
fn strip_chain_sum(
    lambda: &Partition,
    mu: &[u32],
    weight: &dyn Fn(&Partition, &Partition) -> Rational,
    memo: &mut HashMap<(Partition, usize), Rational>,
) -> Rational {
    if mu.is_empty() {
        return if lambda.is_empty() { Rational::one() } else { Rational::zero() };
    }
    let key = (lambda.clone(), mu.len());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let k = *mu.last().unwrap();
    let mut acc = Rational::zero();
    for nu in strip_predecessors(lambda, k) {
        let inner = strip_chain_sum(&nu, &mu[..mu.len() - 1], weight, memo);
        if !inner.is_zero() {
            acc += inner * weight(lambda, &nu);
        }
    }
    memo.insert(key, acc.clone());
    acc
}

fn strip_matrix(n: u32, weight: &dyn Fn(&Partition, &Partition) -> Rational) -> RationalMatrix {
    let labels = enumerate_partitions(n);
    let size = labels.len();
    let mut entries = QMatrix::zeros(size, size);
    for (j, mu) in labels.iter().enumerate() {
        let mut memo = HashMap::new();
        for (i, lambda) in labels.iter().enumerate() {
            entries[(i, j)] = strip_chain_sum(lambda, mu.parts(), weight, &mut memo);
        }
    }
    RationalMatrix::square(labels, entries)
}

/// Number of ordered set partitions `(B_1, ..., B_l(mu))` of the parts of
/// `lambda` with `sum_{i in B_j} lambda_i = mu_j`.
pub fn ordered_block_count(lambda: &Partition, mu: &Partition) -> BigUint {
    fn rec(
        parts: &[u32],
        i: usize,
        remaining: &mut Vec<u32>,
        memo: &mut HashMap<(usize, Vec<u32>), BigUint>,
    ) -> BigUint {
        if i == parts.len() {
            return if remaining.iter().all(|&r| r == 0) { BigUint::one() } else { BigUint::zero() };
        }
        let key = (i, remaining.clone());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let mut acc = BigUint::zero();
        for j in 0..remaining.len() {
            if remaining[j] >= parts[i] {
                remaining[j] -= parts[i];
                acc += rec(parts, i + 1, remaining, memo);
                remaining[j] += parts[i];
            }
        }
        memo.insert(key, acc.clone());
        acc
    }
    if lambda.size() != mu.size() {
        return BigUint::zero();
    }
    rec(lambda.parts(), 0, &mut mu.parts().to_vec(), &mut HashMap::new())
}

/// Which transition matrix; used as the memoization key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatrixKind {
    /// `M(p, m) = D(n)`
    PermChar,
    /// `M(s, m) = K(n)`
    Kostka,
    /// `M(P^(alpha), m) = K^(alpha)(n)`
    AlphaKostka,
    /// Spherical functions `omega^lambda_rho`, rows = eigenspace.
    Zonal,
    /// Irreducible characters of `S_n`, rows = irreducible.
    SymChar,
}

impl MatrixKind {
    pub fn name(&self) -> &'static str {
        match self {
            MatrixKind::PermChar => "perm",
            MatrixKind::Kostka => "kostka",
            MatrixKind::AlphaKostka => "alpha-kostka",
            MatrixKind::Zonal => "zonal",
            MatrixKind::SymChar => "char",
        }
    }
}

type CacheKey = (MatrixKind, u32, Option<Rational>);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<RationalMatrix>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<RationalMatrix>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cache_key(kind: MatrixKind, n: u32, alpha: Option<&Rational>) -> CacheKey {
    let alpha = if kind == MatrixKind::AlphaKostka { alpha.cloned() } else { None };
    (kind, n, alpha)
}

/// Looks up a memoized matrix without computing it.
pub fn cached(kind: MatrixKind, n: u32, alpha: Option<&Rational>) -> Option<Arc<RationalMatrix>> {
    cache().lock().unwrap().get(&cache_key(kind, n, alpha)).cloned()
}

/// Seeds the in-memory memo, e.g. from a disk cache. Labels must be the
/// reverse-lex partitions of `n`.
pub fn seed_cache(kind: MatrixKind, n: u32, alpha: Option<&Rational>, matrix: RationalMatrix) -> Result<()> {
    let labels = enumerate_partitions(n);
    if matrix.row_labels != labels || matrix.col_labels != labels {
        return domain(format!("seeded {} matrix is not labelled by the partitions of {n}", kind.name()));
    }
    cache().lock().unwrap().insert(cache_key(kind, n, alpha), Arc::new(matrix));
    Ok(())
}

/// Drops every memoized matrix; later calls recompute from scratch.
pub fn clear_cache() {
    cache().lock().unwrap().clear();
}

fn memoized(
    kind: MatrixKind,
    n: u32,
    alpha: Option<&Rational>,
    build: impl FnOnce() -> Result<RationalMatrix>,
) -> Result<Arc<RationalMatrix>> {
    if let Some(hit) = cached(kind, n, alpha) {
        return Ok(hit);
    }
    // Built outside the lock so distinct keys can be computed concurrently.
    let built = Arc::new(build()?);
    let mut guard = cache().lock().unwrap();
    Ok(guard.entry(cache_key(kind, n, alpha)).or_insert(built).clone())
}

/// Memoized access to any of the transition matrices.
pub fn matrix(kind: MatrixKind, n: u32, alpha: Option<&Rational>) -> Result<Arc<RationalMatrix>> {
    if n == 0 {
        return domain("transition matrices need n >= 1");
    }
    match kind {
        MatrixKind::PermChar => memoized(kind, n, None, || Ok(build_perm_char(n))),
        MatrixKind::Kostka => memoized(kind, n, None, || Ok(build_kostka(n))),
        MatrixKind::AlphaKostka => {
            let alpha = alpha.ok_or_else(|| Error::Domain("alpha-Kostka needs alpha".into()))?;
            check_alpha(alpha)?;
            memoized(kind, n, Some(alpha), || Ok(build_alpha_kostka(n, alpha)))
        }
        MatrixKind::Zonal => memoized(kind, n, None, || build_zonal(n)),
        MatrixKind::SymChar => memoized(kind, n, None, || build_sym_char(n)),
    }
}

fn check_alpha(alpha: &Rational) -> Result<()> {
    if !alpha.is_positive() {
        return domain(format!("alpha must be positive, got {alpha}"));
    }
    Ok(())
}

fn build_perm_char(n: u32) -> RationalMatrix {
    let labels = enumerate_partitions(n);
    let entries = QMatrix::from_fn(labels.len(), labels.len(), |i, j| {
        Rational::from_integer(BigInt::from(ordered_block_count(&labels[i], &labels[j])))
    });
    RationalMatrix::square(labels, entries)
}

fn build_kostka(n: u32) -> RationalMatrix {
    strip_matrix(n, &|_, _| Rational::one())
}

fn build_alpha_kostka(n: u32, alpha: &Rational) -> RationalMatrix {
    strip_matrix(n, &|lambda, nu| psi_skew(lambda, nu, alpha))
}

/// `D(n) = M(p, m)`, lower-triangular with nonzero diagonal.
pub fn perm_char_matrix(n: u32) -> Result<Arc<RationalMatrix>> {
    matrix(MatrixKind::PermChar, n, None)
}

/// `K(n) = M(s, m)`: Kostka numbers, upper-unitriangular.
pub fn kostka_matrix(n: u32) -> Result<Arc<RationalMatrix>> {
    matrix(MatrixKind::Kostka, n, None)
}

/// `K^(alpha)(n)` by summing Macdonald's `Psi_T` over semistandard tableaux.
pub fn alpha_kostka_matrix(n: u32, alpha: &Rational) -> Result<Arc<RationalMatrix>> {
    matrix(MatrixKind::AlphaKostka, n, Some(alpha))
}

/// `M(P, m)` by Gram-Schmidt: `P_lambda = m_lambda + sum_{mu < lambda} c m_mu`
/// orthogonal to every `m_nu` with `nu < lambda` under
/// `<p_lambda, p_mu> = alpha^{l(lambda)} z_lambda delta`.
pub fn gram_schmidt_jack(n: u32, alpha: &Rational) -> Result<RationalMatrix> {
    check_alpha(alpha)?;
    let d = perm_char_matrix(n)?;
    let labels = d.row_labels.clone();
    let size = labels.len();
    // m = D^{-1} p
    let d_inv = d.entries.triangular_inverse().ok_or_else(|| Error::Internal("D(n) is singular".into()))?;
    let norms: Vec<Rational> = labels
        .iter()
        .map(|rho| {
            let z = Rational::from_integer(BigInt::from(aut_weight(rho)));
            z * num_traits::pow::pow(alpha.clone(), rho.len())
        })
        .collect();
    let gram = QMatrix::from_fn(size, size, |a, b| {
        (0..size)
            .filter(|&r| !d_inv[(a, r)].is_zero() && !d_inv[(b, r)].is_zero())
            .map(|r| &d_inv[(a, r)] * &d_inv[(b, r)] * &norms[r])
            .sum()
    });
    let mut out = QMatrix::identity(size);
    for i in 0..size {
        let lower: Vec<usize> = (i + 1..size).collect();
        if lower.is_empty() {
            continue;
        }
        // sum_{mu} c_mu <m_mu, m_nu> = -<m_lambda, m_nu> for every nu < lambda
        let system = QMatrix::from_fn(lower.len(), lower.len(), |r, c| gram[(lower[c], lower[r])].clone());
        let rhs: Vec<Rational> = lower.iter().map(|&nu| -gram[(i, nu)].clone()).collect();
        let coeffs = system
            .solve(&rhs)
            .map_err(|e| Error::Internal(format!("Gram-Schmidt system singular: {e}")))?;
        for (c, &mu) in coeffs.into_iter().zip(&lower) {
            out[(i, mu)] = c;
        }
    }
    Ok(RationalMatrix::square(labels, out))
}

/// `p_rho = sum_lambda W_{rho,lambda} P_lambda` with `W = D K^{-1}`.
fn power_sum_in(basis_to_monomial: &RationalMatrix, n: u32) -> Result<RationalMatrix> {
    let d = perm_char_matrix(n)?;
    let inv = basis_to_monomial.inverse()?;
    Ok(d.product(&inv))
}

fn build_zonal(n: u32) -> Result<RationalMatrix> {
    let k2 = alpha_kostka_matrix(n, &qi(2))?;
    let w = power_sum_in(&k2, n)?;
    // Rescale each column so the value at the base sphere (1^n) is 1; the
    // monic Jack normalization differs from the spherical one by exactly
    // that factor.
    let last = w.entries.rows() - 1;
    let mut entries = w.entries.clone();
    for j in 0..entries.cols() {
        let scale = w.entries[(last, j)].clone();
        if scale.is_zero() {
            return Err(Error::Internal(format!("zonal column {} vanishes at (1^n)", w.col_labels[j])));
        }
        for i in 0..entries.rows() {
            entries[(i, j)] = &w.entries[(i, j)] / &scale;
        }
    }
    Ok(RationalMatrix::new(w.row_labels, w.col_labels, entries).transpose())
}

fn build_sym_char(n: u32) -> Result<RationalMatrix> {
    let k = kostka_matrix(n)?;
    Ok(power_sum_in(&k, n)?.transpose())
}

/// Spherical functions: entry `(lambda, rho)` is `omega^lambda_rho`, the value
/// on sphere `rho` of the spherical function of eigenspace `2 lambda`.
pub fn zonal_character_table(n: u32) -> Result<Arc<RationalMatrix>> {
    matrix(MatrixKind::Zonal, n, None)
}

/// Character table of `S_n`: entry `(lambda, rho)` is `chi^lambda(rho)`.
pub fn sym_char_table(n: u32) -> Result<Arc<RationalMatrix>> {
    matrix(MatrixKind::SymChar, n, None)
}

/// Top-left `F x F` block, `F = F_t - 1`: the fat labels without the hook
/// `(n-t, 1^t)`.
pub fn leading_minor(m: &RationalMatrix, n: u32, t: u32) -> Result<RationalMatrix> {
    if t == 0 || 2 * t >= n {
        return domain(format!("leading minor needs 1 <= t < n/2 (n={n}, t={t})"));
    }
    let labels = enumerate_partitions(n);
    if m.row_labels != labels || m.col_labels != labels {
        return domain("matrix is not labelled by the reverse-lex partitions of n");
    }
    Ok(m.leading_block(fat_count_formula(t) - 1))
}
