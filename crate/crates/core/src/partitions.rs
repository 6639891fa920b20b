//! Integer partitions, their orders and classifications, dimension formulas,
//! and the scalar counts (double factorials, t-derangements) used elsewhere.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Ordering between partitions of the same `n` is reverse-lexicographic in
/// the sense that `(n)` is the largest element and `(1^n)` the smallest;
/// partitions of different sizes compare by size first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
    n: u32,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            parts.retain(|&p| p != 0);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!("parts {parts:?} are not weakly decreasing"));
        }
        let n = parts.iter().sum();
        Ok(Partition { parts, n })
    }

    /// Sorts the parts into decreasing order first.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p != 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let n = parts.iter().sum();
        Partition { parts, n }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new(), n: 0 }
    }

    /// The one-row partition `(n)`.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            return Self::empty();
        }
        Partition { parts: vec![n], n }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: u32) -> Self {
        Partition { parts: vec![1; n as usize], n }
    }

    /// The hook `(n - t, 1^t)`.
    pub fn hook(n: u32, t: u32) -> Self {
        let mut parts = vec![n - t];
        parts.extend(std::iter::repeat_n(1, t as usize));
        Partition::from_unsorted(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.n
    }

    /// Number of parts, `l(lambda)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn first(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of parts equal to `value`.
    pub fn multiplicity(&self, value: u32) -> usize {
        self.parts.iter().filter(|&&p| p == value).count()
    }

    pub fn unit_parts(&self) -> usize {
        self.multiplicity(1)
    }

    /// `2 lambda`: every part doubled.
    pub fn doubled(&self) -> Partition {
        Partition {
            parts: self.parts.iter().map(|p| 2 * p).collect(),
            n: 2 * self.n,
        }
    }

    pub fn transpose(&self) -> Partition {
        let width = self.first() as usize;
        let parts: Vec<u32> = (1..=width as u32)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts, n: self.n }
    }

    /// Whether the Ferrers diagram of `other` fits inside this one.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// Arm length of cell `(row, col)` (0-based).
    pub fn arm(&self, row: usize, col: usize) -> u32 {
        self.parts[row] - col as u32 - 1
    }

    /// Leg length of cell `(row, col)` (0-based).
    pub fn leg(&self, row: usize, col: usize) -> u32 {
        self.parts[row + 1..]
            .iter()
            .take_while(|&&p| p as usize > col)
            .count() as u32
    }

    pub fn hook_lengths(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n as usize);
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 0..p as usize {
                out.push(self.arm(i, j) + self.leg(i, j) + 1);
            }
        }
        out
    }

    /// Cells as 0-based `(row, col)` pairs in row-reading order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p as usize).map(move |j| (i, j)))
    }

    pub fn has_single_odd_part(&self) -> bool {
        self.parts.iter().filter(|&&p| p % 2 == 1).count() == 1
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("-");
        }
        let joined: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        f.write_str(&joined.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad partition {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(Error::Parse(format!("zero part in {s:?}")));
        }
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

/// Macro-free shorthand used throughout the tests: `part(&[3, 1])`.
pub fn part(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).expect("valid partition literal")
}

/// All partitions of `n`, strictly decreasing in reverse-lex order:
/// `(n)` first, `(1^n)` last.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_unsorted(prefix.clone()));
            return;
        }
        for first in (1..=remaining.min(max)).rev() {
            prefix.push(first);
            rec(remaining - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `m` with exactly one odd part.
pub fn single_odd_part_partitions(m: u32) -> Vec<Partition> {
    enumerate_partitions(m)
        .into_iter()
        .filter(Partition::has_single_odd_part)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FatClass {
    /// `k = n - lambda_1`, with `0 <= k <= t`.
    Fat(u32),
    Medium,
}

impl FatClass {
    pub fn is_fat(&self) -> bool {
        matches!(self, FatClass::Fat(_))
    }
}

fn check_fat_domain(n: u32, t: u32) -> Result<()> {
    if t == 0 || 2 * t >= n {
        return domain(format!(
            "fat/medium trichotomy undefined for n={n}, t={t} (need 1 <= t < n/2)"
        ));
    }
    Ok(())
}

/// Fat iff `lambda_1 >= n - t`, which is the same as `lambda >= (n-t,1^t)`
/// because the hook is the reverse-lex minimum among partitions with that
/// first part.
pub fn classify_fat(lambda: &Partition, n: u32, t: u32) -> Result<FatClass> {
    check_fat_domain(n, t)?;
    if lambda.size() != n {
        return domain(format!("{lambda} is not a partition of {n}"));
    }
    if lambda.first() + t >= n {
        Ok(FatClass::Fat(n - lambda.first()))
    } else {
        Ok(FatClass::Medium)
    }
}

/// The fat partitions of `n` in reverse-lex order; they form a prefix of
/// [`enumerate_partitions`].
pub fn fat_partitions(n: u32, t: u32) -> Result<Vec<Partition>> {
    check_fat_domain(n, t)?;
    Ok(enumerate_partitions(n)
        .into_iter()
        .filter(|p| p.first() + t >= n)
        .collect())
}

/// `F_t = p(0) + p(1) + ... + p(t)`.
pub fn fat_count_formula(t: u32) -> usize {
    (0..=t).map(|k| enumerate_partitions(k).len()).sum()
}

pub fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `(2n-1)!! = 1 * 3 * ... * (2n-1)`; `(-1)!! = 1`.
pub fn odd_double_factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * (2 * k - 1))
}

/// `(2n)!! = 2^n n!`; `0!! = 1`.
pub fn even_double_factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * (2 * k))
}

/// `((2n-1))_t = (2n-1)(2n-3)...(2(n-t+1)-1)`.
pub fn odd_falling(n: u32, t: u32) -> BigUint {
    (0..t).fold(BigUint::one(), |acc, i| acc * (2 * (n - i) - 1))
}

/// `((2n))_t = 2n * 2(n-1) * ... * 2(n-t+1)`.
pub fn even_falling(n: u32, t: u32) -> BigUint {
    (0..t).fold(BigUint::one(), |acc, i| acc * (2 * (n - i)))
}

/// `f^lambda = n! / prod(hooks)`.
pub fn hook_dim(lambda: &Partition) -> BigUint {
    let hooks = lambda
        .hook_lengths()
        .into_iter()
        .fold(BigUint::one(), |acc, h| acc * h);
    let (q, r) = factorial(lambda.size()).div_rem(&hooks);
    debug_assert!(r.is_zero());
    q
}

/// `z_lambda = prod_i i^{m_i} m_i!`.
pub fn aut_weight(lambda: &Partition) -> BigUint {
    let mut acc = BigUint::one();
    let mut i = 0;
    let parts = lambda.parts();
    while i < parts.len() {
        let value = parts[i];
        let mut mult = 0u32;
        while i < parts.len() && parts[i] == value {
            mult += 1;
            i += 1;
        }
        acc *= BigUint::from(value).pow(mult) * factorial(mult);
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarTable {
    pub n: u32,
    pub t: u32,
    /// `(2n-1)!!`
    pub odd_df: BigUint,
    /// `(2n)!!`
    pub even_df: BigUint,
    /// `((2n-1))_t`
    pub odd_falling: BigUint,
    /// `((2n))_t`
    pub even_falling: BigUint,
}

pub fn scalar_table(n: u32, t: u32) -> Result<ScalarTable> {
    if t > n {
        return domain(format!("falling double factorial needs t <= n (t={t}, n={n})"));
    }
    Ok(ScalarTable {
        n,
        t,
        odd_df: odd_double_factorial(n),
        even_df: even_double_factorial(n),
        odd_falling: odd_falling(n, t),
        even_falling: even_falling(n, t),
    })
}

/// `D_2(n,1)` by the recurrence `D(n) = 2(n-1)(D(n-1) + D(n-2))`.
pub fn derangement_count_recurrence(n: u32) -> BigUint {
    let mut prev = BigUint::one(); // D(0)
    if n == 0 {
        return prev;
    }
    let mut cur = BigUint::zero(); // D(1)
    for k in 2..=n {
        let next = BigUint::from(2 * (k - 1)) * (&cur + &prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// `D_2(n,1) = sum_i (-1)^i C(n,i) (2(n-i)-1)!!`: inclusion-exclusion over
/// the `n` edges of the base matching.
pub fn derangement_count_inclusion_exclusion(n: u32) -> BigUint {
    let mut acc = BigInt::zero();
    for i in 0..=n {
        let term = BigInt::from(binomial(n, i) * odd_double_factorial(n - i));
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc.to_biguint().expect("derangement count is nonnegative")
}

/// Number of perfect matchings of `K_{2n}` sharing fewer than `t` edges with
/// the base matching: `sum_{i<t} C(n,i) D_2(n-i,1)`.
pub fn derangement_count(n: u32, t: u32) -> Result<BigUint> {
    if t == 0 {
        return domain("t-derangements need t >= 1");
    }
    Ok((0..t.min(n + 1))
        .map(|i| binomial(n, i) * derangement_count_recurrence(n - i))
        .sum())
}

/// Lossy conversion for reporting only.
pub fn to_f64(value: &BigUint) -> f64 {
    value.to_f64().unwrap_or(f64::INFINITY)
}
