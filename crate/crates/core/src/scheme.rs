//! The perfect matching association scheme.
//!
//! For every `n` up to [`TABLE_CAP`] the scheme is available through its
//! character table (P-table); for `n <= EXPLICIT_CAP` the associates are
//! also materialized as a relation table over `M_{2n}`, which supports
//! idempotents, projections and Fourier-support queries on concrete
//! functions.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, resource, Error, Result};
use crate::matchings::{
    apply_unchecked, base_stabilizer, cycle_half_lengths, enumerate_matchings, sphere_representative,
    sphere_size, PerfectMatching,
};
use crate::matrix::{QMatrix, RationalMatrix};
use crate::partitions::{enumerate_partitions, hook_dim, odd_double_factorial, Partition};
use crate::rational::{from_biguint, Rational};
use crate::symfunc::zonal_character_table;

/// Largest `n` with explicit associates (945 matchings).
pub const EXPLICIT_CAP: u32 = 5;
/// Largest `n` for which the P-table is built.
pub const TABLE_CAP: u32 = 14;
/// Largest `n` for the group-averaging oracle.
pub const ORACLE_CAP: u32 = 4;

#[derive(Debug, Clone)]
struct Explicit {
    matchings: Vec<PerfectMatching>,
    index: HashMap<PerfectMatching, usize>,
    /// `relation[i * N + j]` = label index of `d(m_i, m_j)`.
    relation: Vec<u8>,
}

#[derive(Debug, Clone)]
pub struct AssociationScheme {
    pub n: u32,
    /// Reverse-lex partitions of `n`; indexes both spheres and eigenspaces.
    pub labels: Vec<Partition>,
    /// Entry `(lambda, rho) = |Omega_rho| omega^lambda_rho`.
    pub p_table: RationalMatrix,
    pub zonal: Arc<RationalMatrix>,
    /// `|Omega_rho|`
    pub valencies: Vec<BigUint>,
    /// `f^{2 lambda}`
    pub dims: Vec<BigUint>,
    explicit: Option<Explicit>,
}

/// Builds the P-table from the zonal table and sphere sizes, plus the explicit
/// relation table when `n <= EXPLICIT_CAP`.
pub fn build_scheme(n: u32) -> Result<AssociationScheme> {
    if n < 2 {
        return domain(format!("scheme needs n >= 2, got {n}"));
    }
    if n > TABLE_CAP {
        return resource(format!("character table capped at n={TABLE_CAP}"));
    }
    let labels = enumerate_partitions(n);
    let zonal = zonal_character_table(n)?;
    let valencies: Vec<BigUint> =
        labels.iter().map(|rho| sphere_size(rho, n)).collect::<Result<_>>()?;
    let dims: Vec<BigUint> = labels.iter().map(|l| hook_dim(&l.doubled())).collect();
    let size = labels.len();
    let entries = QMatrix::from_fn(size, size, |i, j| zonal.at(i, j) * from_biguint(&valencies[j]));
    let p_table = RationalMatrix::square(labels.clone(), entries);
    let explicit = (n <= EXPLICIT_CAP).then(|| build_explicit(n, &labels));
    Ok(AssociationScheme { n, labels, p_table, zonal, valencies, dims, explicit })
}

fn build_explicit(n: u32, labels: &[Partition]) -> Explicit {
    let matchings = enumerate_matchings(n).expect("within cap");
    let index: HashMap<PerfectMatching, usize> =
        matchings.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let label_index: HashMap<Vec<u32>, u8> =
        labels.iter().enumerate().map(|(i, l)| (l.parts().to_vec(), i as u8)).collect();
    let size = matchings.len();
    let mut relation = vec![0u8; size * size];
    for i in 0..size {
        for j in i..size {
            let mut parts =
                cycle_half_lengths(matchings[i].partner_array(), matchings[j].partner_array());
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let r = label_index[&parts];
            relation[i * size + j] = r;
            relation[j * size + i] = r;
        }
    }
    Explicit { matchings, index, relation }
}

impl AssociationScheme {
    pub fn label_index(&self, label: &Partition) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Domain(format!("{label} is not a partition of {}", self.n)))
    }

    /// `(2n-1)!!`
    pub fn order(&self) -> BigUint {
        odd_double_factorial(self.n)
    }

    pub fn has_explicit(&self) -> bool {
        self.explicit.is_some()
    }

    fn explicit(&self) -> Result<&Explicit> {
        self.explicit.as_ref().ok_or_else(|| {
            Error::Resource(format!("explicit associates only for n <= {EXPLICIT_CAP}"))
        })
    }

    pub fn matchings(&self) -> Result<&[PerfectMatching]> {
        Ok(&self.explicit()?.matchings)
    }

    pub fn matching_index(&self, m: &PerfectMatching) -> Result<usize> {
        self.explicit()?
            .index
            .get(m)
            .copied()
            .ok_or_else(|| Error::Domain(format!("{m} is not a matching of K_{}", 2 * self.n)))
    }

    /// Label index of `d(m_i, m_j)`.
    pub fn relation(&self, i: usize, j: usize) -> Result<usize> {
        let e = self.explicit()?;
        Ok(e.relation[i * e.matchings.len() + j] as usize)
    }

    /// `A_lambda` as a 0/1 matrix.
    pub fn associate(&self, label: &Partition) -> Result<QMatrix> {
        let r = self.label_index(label)? as u8;
        let e = self.explicit()?;
        let size = e.matchings.len();
        Ok(QMatrix::from_fn(size, size, |i, j| {
            if e.relation[i * size + j] == r {
                Rational::one()
            } else {
                Rational::zero()
            }
        }))
    }

    /// `A_rho * m` without materializing `A_rho`.
    pub fn associate_times(&self, label: &Partition, m: &QMatrix) -> Result<QMatrix> {
        let r = self.label_index(label)? as u8;
        let e = self.explicit()?;
        let size = e.matchings.len();
        if m.rows() != size {
            return domain("shape mismatch in associate product");
        }
        let mut out = QMatrix::zeros(size, m.cols());
        for i in 0..size {
            for k in 0..size {
                if e.relation[i * size + k] != r {
                    continue;
                }
                for j in 0..m.cols() {
                    if !m[(k, j)].is_zero() {
                        out[(i, j)] += &m[(k, j)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Checks symmetry, `A_(1^n) = I`, `sum A = J`, and that every product
    /// `A_a A_b` is a commuting combination of associates. Returns the
    /// intersection numbers `p^c_{ab}` indexed `[a][b][c]`.
    pub fn verify_axioms(&self) -> Result<Vec<Vec<Vec<u64>>>> {
        let e = self.explicit()?;
        let size = e.matchings.len();
        let k = self.labels.len();
        let identity = (k - 1) as u8;
        for i in 0..size {
            for j in 0..size {
                let r = e.relation[i * size + j];
                if r != e.relation[j * size + i] {
                    return Err(Error::Internal("associates are not symmetric".into()));
                }
                if (r == identity) != (i == j) {
                    return Err(Error::Internal("A_(1^n) is not the identity".into()));
                }
            }
        }
        // each entry carries exactly one label, so the associates sum to J
        let mut numbers = vec![vec![vec![0u64; k]; k]; k];
        let mut seen = vec![vec![vec![false; k]; k]; k];
        for i in 0..size {
            for j in 0..size {
                let c = e.relation[i * size + j] as usize;
                let mut counts = vec![vec![0u64; k]; k];
                for m in 0..size {
                    let a = e.relation[i * size + m] as usize;
                    let b = e.relation[m * size + j] as usize;
                    counts[a][b] += 1;
                }
                for a in 0..k {
                    for b in 0..k {
                        if !seen[a][b][c] {
                            seen[a][b][c] = true;
                            numbers[a][b][c] = counts[a][b];
                        } else if numbers[a][b][c] != counts[a][b] {
                            return Err(Error::Internal(format!(
                                "A_{} A_{} is not in the span of the associates",
                                self.labels[a], self.labels[b]
                            )));
                        }
                    }
                }
            }
        }
        for a in 0..k {
            for b in 0..k {
                if numbers[a][b] != numbers[b][a] {
                    return Err(Error::Internal("associates do not commute".into()));
                }
            }
        }
        Ok(numbers)
    }

    /// `E_lambda = (f^{2 lambda} / (2n-1)!!) sum_rho omega^lambda_rho A_rho`.
    pub fn idempotent(&self, label: &Partition) -> Result<QMatrix> {
        let li = self.label_index(label)?;
        let e = self.explicit()?;
        let size = e.matchings.len();
        let scale = from_biguint(&self.dims[li]) / from_biguint(&self.order());
        let values: Vec<Rational> = (0..self.labels.len()).map(|r| self.zonal.at(li, r) * &scale).collect();
        Ok(QMatrix::from_fn(size, size, |i, j| values[e.relation[i * size + j] as usize].clone()))
    }

    /// Checks `A_rho E_lambda = P(lambda, rho) E_lambda` for every pair.
    pub fn verify_eigenvalues(&self) -> Result<()> {
        for (li, lambda) in self.labels.iter().enumerate() {
            let e = self.idempotent(lambda)?;
            for (ri, rho) in self.labels.iter().enumerate() {
                let lhs = self.associate_times(rho, &e)?;
                if lhs != e.scale(self.p_table.at(li, ri)) {
                    return Err(Error::Internal(format!("eigenvalue mismatch at ({lambda}, {rho})")));
                }
            }
        }
        Ok(())
    }
}

/// A real function on `M_{2n}`, indexed like [`AssociationScheme::matchings`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingFunction {
    pub values: Vec<Rational>,
}

impl MatchingFunction {
    pub fn zero(scheme: &AssociationScheme) -> Result<Self> {
        Ok(MatchingFunction { values: vec![Rational::zero(); scheme.matchings()?.len()] })
    }

    pub fn constant(scheme: &AssociationScheme, value: Rational) -> Result<Self> {
        Ok(MatchingFunction { values: vec![value; scheme.matchings()?.len()] })
    }

    pub fn indicator(scheme: &AssociationScheme, family: &[PerfectMatching]) -> Result<Self> {
        let mut f = Self::zero(scheme)?;
        for m in family {
            f.values[scheme.matching_index(m)?] = Rational::one();
        }
        Ok(f)
    }

    /// The spherical function of `lambda` centred at `m*`.
    pub fn spherical(scheme: &AssociationScheme, label: &Partition) -> Result<Self> {
        let li = scheme.label_index(label)?;
        let base = scheme.matching_index(&PerfectMatching::base(scheme.n))?;
        let size = scheme.matchings()?.len();
        let values = (0..size)
            .map(|j| Ok(scheme.zonal.at(li, scheme.relation(base, j)?).clone()))
            .collect::<Result<_>>()?;
        Ok(MatchingFunction { values })
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn inner(&self, other: &MatchingFunction) -> Rational {
        self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &MatchingFunction) -> MatchingFunction {
        MatchingFunction { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn as_column(&self) -> QMatrix {
        QMatrix::from_fn(self.values.len(), 1, |i, _| self.values[i].clone())
    }
}

/// Per-matching sums of `f` over each sphere around it:
/// `sums[m][rho] = sum_{m' : d(m, m') = rho} f(m')`.
fn sphere_sums(scheme: &AssociationScheme, f: &MatchingFunction) -> Result<Vec<Vec<Rational>>> {
    let size = scheme.matchings()?.len();
    if f.values.len() != size {
        return domain("function is not defined on this scheme");
    }
    let support: Vec<usize> = (0..size).filter(|&j| !f.values[j].is_zero()).collect();
    let k = scheme.labels.len();
    (0..size)
        .map(|i| {
            let mut sums = vec![Rational::zero(); k];
            for &j in &support {
                sums[scheme.relation(i, j)?] += &f.values[j];
            }
            Ok(sums)
        })
        .collect()
}

/// `[E_mu f](m) = (f^{2mu}/(2n-1)!!) sum_{m'} f(m') omega^mu_{d(m,m')}`.
pub fn project(scheme: &AssociationScheme, f: &MatchingFunction, mu: &Partition) -> Result<MatchingFunction> {
    let mi = scheme.label_index(mu)?;
    let scale = from_biguint(&scheme.dims[mi]) / from_biguint(&scheme.order());
    let omega: Vec<Rational> = (0..scheme.labels.len()).map(|r| scheme.zonal.at(mi, r).clone()).collect();
    let values = sphere_sums(scheme, f)?
        .into_iter()
        .map(|sums| {
            let dot: Rational = sums.iter().zip(&omega).filter(|(s, _)| !s.is_zero()).map(|(s, w)| s * w).sum();
            dot * &scale
        })
        .collect();
    Ok(MatchingFunction { values })
}

/// Integer numerators of `f` over a common denominator, when they fit.
fn integer_values(f: &MatchingFunction) -> Option<Vec<i64>> {
    let lcm = f.values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    f.values
        .iter()
        .map(|v| (v.numer() * (&lcm / v.denom())).to_i64().filter(|x| x.abs() < 1 << 40))
        .collect()
}

/// `{ mu : E_mu f != 0 }`, in reverse-lex order.
pub fn fourier_support(scheme: &AssociationScheme, f: &MatchingFunction) -> Result<Vec<Partition>> {
    let size = scheme.matchings()?.len();
    if f.values.len() != size {
        return domain("function is not defined on this scheme");
    }
    let Some(ints) = integer_values(f) else {
        let mut out = Vec::new();
        for mu in &scheme.labels {
            if !project(scheme, f, mu)?.is_zero() {
                out.push(mu.clone());
            }
        }
        return Ok(out);
    };
    // omega^mu scaled to integers; E_mu f vanishes iff the scaled dot does.
    let k = scheme.labels.len();
    let mut weights: Vec<Option<Vec<i128>>> = Vec::with_capacity(k);
    for mi in 0..k {
        let row = scheme.zonal.entries.row(mi);
        let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        weights.push(row.iter().map(|v| (v.numer() * (&lcm / v.denom())).to_i64().map(i128::from)).collect());
    }
    let support: Vec<usize> = (0..size).filter(|&j| ints[j] != 0).collect();
    let mut nonzero = vec![false; k];
    for i in 0..size {
        let mut sums = vec![0i128; k];
        for &j in &support {
            sums[scheme.relation(i, j)?] += ints[j] as i128;
        }
        for mi in 0..k {
            if nonzero[mi] {
                continue;
            }
            nonzero[mi] = match &weights[mi] {
                Some(w) => sums.iter().zip(w).map(|(s, c)| s * c).sum::<i128>() != 0,
                None => {
                    let omega = scheme.zonal.entries.row(mi);
                    !sums.iter().zip(omega).map(|(s, w)| w * Rational::from_integer(BigInt::from(*s))).sum::<Rational>().is_zero()
                }
            };
        }
        if nonzero.iter().all(|&b| b) {
            break;
        }
    }
    Ok(scheme.labels.iter().zip(nonzero).filter(|(_, nz)| *nz).map(|(l, _)| l.clone()).collect())
}

/// Rows of vertex labels, each row an unordered set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tabloid {
    pub shape: Partition,
    /// `row_of[v - 1]` = row of vertex `v`.
    row_of: Vec<usize>,
}

impl Tabloid {
    pub fn new(rows: &[Vec<u32>]) -> Result<Self> {
        let shape = Partition::from_unsorted(rows.iter().map(|r| r.len() as u32).collect());
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return domain("tabloid rows must be weakly decreasing in length");
        }
        let size = shape.size() as usize;
        let mut row_of = vec![usize::MAX; size];
        for (r, row) in rows.iter().enumerate() {
            for &v in row {
                if v == 0 || v as usize > size || row_of[v as usize - 1] != usize::MAX {
                    return domain(format!("rows {rows:?} do not partition 1..={size}"));
                }
                row_of[v as usize - 1] = r;
            }
        }
        Ok(Tabloid { shape, row_of })
    }

    pub fn row_of(&self, v: u32) -> usize {
        self.row_of[v as usize - 1]
    }
}

/// Every edge of `m` lies within a single row.
pub fn covers(tabloid: &Tabloid, m: &PerfectMatching) -> Result<bool> {
    if tabloid.row_of.len() != 2 * m.n() as usize {
        return domain("tabloid and matching have different vertex counts");
    }
    Ok(covers_rows(&tabloid.row_of, m.partner_array()))
}

fn covers_rows(row_of: &[usize], partner: &[u8]) -> bool {
    partner.iter().enumerate().all(|(v, &p)| row_of[v] == row_of[p as usize])
}

/// A filled Ferrers diagram with distinct labels `1..=2n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    pub rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        Tabloid::new(&rows)?;
        Ok(Tableau { rows })
    }

    pub fn shape(&self) -> Partition {
        Partition::from_unsorted(self.rows.iter().map(|r| r.len() as u32).collect())
    }

    /// The `m*`-aligned tableau of shape `2 lambda`: rows filled left to right
    /// with the consecutive pairs `(1 2) (3 4) ...`.
    pub fn aligned(lambda: &Partition) -> Self {
        let mut next = 1u32;
        let rows = lambda
            .parts()
            .iter()
            .map(|&p| {
                let row: Vec<u32> = (next..next + 2 * p).collect();
                next += 2 * p;
                row
            })
            .collect();
        Tableau { rows }
    }

    /// The tableau of shape `2(n-t, 1^t)` whose rows below the first are
    /// `{3,4}, {5,6}, ..., {2t+1, 2t+2}`.
    pub fn hook_witness(n: u32, t: u32) -> Result<Self> {
        if t == 0 || t >= n {
            return domain(format!("hook witness needs 1 <= t < n (n={n}, t={t})"));
        }
        let mut first = vec![1, 2];
        first.extend(2 * t + 3..=2 * n);
        let mut rows = vec![first];
        rows.extend((0..t).map(|i| vec![2 * i + 3, 2 * i + 4]));
        Tableau::new(rows)
    }

    fn columns(&self) -> Vec<Vec<(usize, usize)>> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width)
            .map(|j| (0..self.rows.len()).filter(|&i| self.rows[i].len() > j).map(|i| (i, j)).collect())
            .collect()
    }

    /// Calls `visit(sign, row_of)` for every permutation in the product of
    /// the symmetric groups on the chosen columns.
    fn for_each_column_permutation(&self, columns: &[usize], mut visit: impl FnMut(i64, &[usize])) {
        let size = self.rows.iter().map(Vec::len).sum::<usize>();
        let mut row_of = vec![0usize; size];
        for (i, row) in self.rows.iter().enumerate() {
            for &v in row {
                row_of[v as usize - 1] = i;
            }
        }
        let cols = self.columns();
        let chosen: Vec<Vec<(usize, usize)>> = columns.iter().map(|&c| cols[c].clone()).collect();
        let perms: Vec<Vec<(Vec<usize>, i64)>> = chosen.iter().map(|c| signed_permutations(c.len())).collect();
        fn rec(
            tab: &Tableau,
            chosen: &[Vec<(usize, usize)>],
            perms: &[Vec<(Vec<usize>, i64)>],
            depth: usize,
            sign: i64,
            row_of: &mut Vec<usize>,
            visit: &mut dyn FnMut(i64, &[usize]),
        ) {
            if depth == chosen.len() {
                visit(sign, row_of);
                return;
            }
            let cells = &chosen[depth];
            for (perm, s) in &perms[depth] {
                // the entry of cell cells[k] moves to the row of cells[perm[k]]
                for (k, &(i, j)) in cells.iter().enumerate() {
                    let v = tab.rows[i][j];
                    row_of[v as usize - 1] = cells[perm[k]].0;
                }
                rec(tab, chosen, perms, depth + 1, sign * s, row_of, visit);
            }
            for &(i, j) in cells {
                row_of[tab.rows[i][j] as usize - 1] = i;
            }
        }
        rec(self, &chosen, &perms, 0, 1, &mut row_of, &mut visit);
    }
}

fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    if k == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in signed_permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            // inserting the largest element at `pos` adds len - pos inversions
            let flip = if (p.len() - pos) % 2 == 1 { -1 } else { 1 };
            out.push((q, s * flip));
        }
    }
    out
}

/// `f_T = sum_{sigma in C_T} sign(sigma) 1_{sigma T}`.
pub fn polytabloid_function(scheme: &AssociationScheme, tableau: &Tableau) -> Result<MatchingFunction> {
    let shape = tableau.shape();
    if shape.size() != 2 * scheme.n || shape.parts().iter().any(|p| p % 2 == 1) {
        return domain(format!("tableau shape {shape} is not 2 lambda for lambda ⊢ {}", scheme.n));
    }
    let matchings = scheme.matchings()?;
    let mut acc = vec![0i64; matchings.len()];
    let all_columns: Vec<usize> = (0..shape.first() as usize).collect();
    tableau.for_each_column_permutation(&all_columns, |sign, row_of| {
        for (k, m) in matchings.iter().enumerate() {
            if covers_rows(row_of, m.partner_array()) {
                acc[k] += sign;
            }
        }
    });
    Ok(MatchingFunction { values: acc.into_iter().map(|v| Rational::from_integer(BigInt::from(v))).collect() })
}

/// Raw group average `sum_{h in H} sum_{sigma in C'_T} sign(sigma)
/// 1_{h sigma T}(m)` for the `m*`-aligned tableau of shape `2 lambda`,
/// evaluated at one matching per sphere. Returns values in label order and
/// `|H|`.
pub fn spherical_average(lambda: &Partition, n: u32) -> Result<(Vec<BigInt>, BigUint)> {
    if lambda.size() != n {
        return domain(format!("{lambda} is not a partition of {n}"));
    }
    if n > ORACLE_CAP {
        return resource(format!("group-averaging oracle capped at n={ORACLE_CAP}"));
    }
    let labels = enumerate_partitions(n);
    let reps: Vec<PerfectMatching> = labels.iter().map(sphere_representative).collect();
    let group = base_stabilizer(n);
    // h sigma T covers m iff sigma T covers h^{-1} m
    let pulled: Vec<Vec<PerfectMatching>> = group
        .iter()
        .map(|h| {
            let mut inv = vec![0u32; h.len()];
            for (i, &x) in h.iter().enumerate() {
                inv[x as usize - 1] = i as u32 + 1;
            }
            reps.iter().map(|m| apply_unchecked(&inv, m)).collect()
        })
        .collect();
    let tableau = Tableau::aligned(lambda);
    let odd_columns: Vec<usize> = (0..2 * lambda.first() as usize).step_by(2).collect();
    let mut totals = vec![0i64; labels.len()];
    tableau.for_each_column_permutation(&odd_columns, |sign, row_of| {
        for images in &pulled {
            for (k, m) in images.iter().enumerate() {
                if covers_rows(row_of, m.partner_array()) {
                    totals[k] += sign;
                }
            }
        }
    });
    Ok((totals.into_iter().map(BigInt::from).collect(), BigUint::from(group.len())))
}

/// `omega^lambda_rho` by group-averaging signed cover indicators of an
/// aligned tableau, normalized to 1 on the base sphere `(1^n)`.
pub fn spherical_oracle(lambda: &Partition, rho: &Partition, n: u32) -> Result<Rational> {
    if rho.size() != n {
        return domain(format!("{rho} is not a partition of {n}"));
    }
    let (totals, _) = spherical_average(lambda, n)?;
    let labels = enumerate_partitions(n);
    let at = labels.iter().position(|l| l == rho).expect("rho is a partition of n");
    let base = totals.last().expect("nonempty").clone();
    if base.is_zero() {
        return Err(Error::Internal(format!("group average of {lambda} vanishes at m*")));
    }
    Ok(Rational::new(totals[at].clone(), base))
}

/// `(lambda, rho) -> oracle value` over the whole table.
pub fn spherical_oracle_table(n: u32) -> Result<RationalMatrix> {
    let labels = enumerate_partitions(n);
    let size = labels.len();
    let mut entries = QMatrix::zeros(size, size);
    for (i, lambda) in labels.iter().enumerate() {
        let (totals, _) = spherical_average(lambda, n)?;
        let base = totals[size - 1].clone();
        if base.is_zero() {
            return Err(Error::Internal(format!("group average of {lambda} vanishes at m*")));
        }
        for j in 0..size {
            entries[(i, j)] = Rational::new(totals[j].clone(), base.clone());
        }
    }
    Ok(RationalMatrix::square(labels, entries))
}
