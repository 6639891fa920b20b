//! The t-derangement graph and the ratio-bound certificate.

use indexmap::IndexMap;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::matchings::sphere_size;
use crate::partitions::{
    classify_fat, enumerate_partitions, fat_count_formula, odd_double_factorial, odd_falling, Partition,
};
use crate::rational::{self, from_biguint, Rational};
use crate::scheme::{build_scheme, AssociationScheme};
use crate::symfunc::zonal_character_table;

/// `Gamma_t` on `M_{2n}`: matchings are adjacent when they share fewer
/// than `t` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerangementGraph {
    pub n: u32,
    pub t: u32,
    /// Sphere labels with fewer than `t` unit parts.
    pub edge_labels: Vec<Partition>,
    pub valency_sum: BigUint,
}

pub fn derangement_graph(n: u32, t: u32) -> Result<DerangementGraph> {
    if t == 0 || n == 0 {
        return domain(format!("derangement graph needs n, t >= 1 (n={n}, t={t})"));
    }
    let edge_labels: Vec<Partition> =
        enumerate_partitions(n).into_iter().filter(|l| l.unit_parts() < t as usize).collect();
    let valency_sum = edge_labels
        .iter()
        .map(|l| sphere_size(l, n))
        .sum::<Result<BigUint>>()?;
    Ok(DerangementGraph { n, t, edge_labels, valency_sum })
}

/// `zeta = -1 / (((2n-1))_t - 1)`.
pub fn zeta(n: u32, t: u32) -> Result<Rational> {
    if t == 0 || t > n {
        return domain(format!("zeta needs 1 <= t <= n (n={n}, t={t})"));
    }
    let falling = odd_falling(n, t);
    if falling <= BigUint::one() {
        return domain(format!("((2n-1))_t = 1 at n={n}, t={t}; zeta is undefined"));
    }
    Ok(-Rational::new(BigInt::one(), BigInt::from(falling - 1u32)))
}

fn check_range(n: u32, t: u32) -> Result<()> {
    if t == 0 || 2 * t >= n {
        return domain(format!("certificates need 1 <= t < n/2 (n={n}, t={t})"));
    }
    Ok(())
}

/// Weights `x` on the first `F_t - 1` sphere labels solving `M x = (1, zeta, ..., zeta)`
/// where `M` is the matching leading block of the P-table.
pub fn solve_weights(n: u32, t: u32) -> Result<IndexMap<Partition, Rational>> {
    check_range(n, t)?;
    let scheme = build_scheme(n)?;
    solve_on(&scheme, t)
}

fn solve_on(scheme: &AssociationScheme, t: u32) -> Result<IndexMap<Partition, Rational>> {
    let size = fat_count_formula(t) - 1;
    let z = zeta(scheme.n, t)?;
    let minor = scheme.p_table.entries.leading_block(size);
    let mut b = vec![z; size];
    b[0] = Rational::one();
    let x = minor.solve(&b).map_err(|_| {
        Error::Internal(format!("fat leading minor is singular at n={}, t={t}", scheme.n))
    })?;
    Ok(scheme.labels[..size].iter().cloned().zip(x).collect())
}

/// `eta_lambda = sum_j x_j P(lambda, j)` for every `lambda` of `n`.
pub fn eigen_table(weights: &IndexMap<Partition, Rational>, n: u32) -> Result<IndexMap<Partition, Rational>> {
    let labels = enumerate_partitions(n);
    let zonal = zonal_character_table(n)?;
    let mut columns = Vec::with_capacity(weights.len());
    for (label, x) in weights {
        let j = labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Domain(format!("{label} is not a partition of {n}")))?;
        columns.push((j, x * from_biguint(&sphere_size(label, n)?)));
    }
    Ok(labels
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let eta: Rational = columns.iter().map(|(j, w)| w * zonal.at(i, *j)).sum();
            (l.clone(), eta)
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub n: u32,
    pub t: u32,
    #[serde(with = "rational::as_str")]
    pub zeta: Rational,
    #[serde(with = "rational::map_as_str")]
    pub weights: IndexMap<Partition, Rational>,
    #[serde(with = "rational::map_as_str")]
    pub eigenvalues: IndexMap<Partition, Rational>,
    #[serde(with = "rational::as_str")]
    pub fattest_eig: Rational,
    pub fat_nontrivial_are_zeta: bool,
    #[serde(with = "rational::as_str")]
    pub min_eigenvalue: Rational,
    pub minimizers: Vec<Partition>,
    /// The minimum is `zeta` and every minimizer is fat.
    pub min_is_zeta: bool,
    #[serde(with = "rational::as_str")]
    pub hoffman_value: Rational,
    pub valid: bool,
}

impl Certificate {
    /// `|F| <= hoffman_value` is proven when the certificate is valid.
    pub fn bound(&self) -> Option<BigInt> {
        self.valid.then(|| self.hoffman_value.to_integer())
    }

    /// Rows `label, class, eigenvalue` ending in the verdict line.
    pub fn to_pretty(&self) -> String {
        let mut out = format!("n = {}, t = {}, zeta = {}\n", self.n, self.t, self.zeta);
        let width = self.eigenvalues.keys().map(|l| l.to_string().len()).max().unwrap_or(1).max(9);
        out.push_str(&format!("{:<width$}  {:<6}  {:>12}  {}\n", "lambda", "class", "weight", "eigenvalue"));
        for (label, eta) in &self.eigenvalues {
            let class = if classify_fat(label, self.n, self.t).is_ok_and(|c| c.is_fat()) { "fat" } else { "-" };
            let weight = self.weights.get(label).map_or_else(String::new, ToString::to_string);
            let mark = if self.minimizers.contains(label) { "  <- min" } else { "" };
            out.push_str(&format!("{:<width$}  {:<6}  {:>12}  {}{}\n", label.to_string(), class, weight, eta, mark));
        }
        out.push_str(&format!("hoffman = {}\n", self.hoffman_value));
        match self.bound() {
            Some(b) => out.push_str(&format!("VALID: bound {b}\n")),
            None => out.push_str("INVALID\n"),
        }
        out
    }
}

/// `(2n-1)!! (-zeta) / (1 - zeta)`.
pub fn hoffman_value(n: u32, t: u32) -> Result<Rational> {
    let z = zeta(n, t)?;
    Ok(from_biguint(&odd_double_factorial(n)) * -&z / (Rational::one() - &z))
}

pub fn certify(n: u32, t: u32) -> Result<Certificate> {
    check_range(n, t)?;
    let scheme = build_scheme(n)?;
    let weights = solve_on(&scheme, t)?;
    let eigenvalues = eigen_table(&weights, n)?;
    let z = zeta(n, t)?;
    let fat = fat_count_formula(t);
    let fattest_eig = eigenvalues[fat - 1].clone();
    let fat_nontrivial_are_zeta = eigenvalues.values().take(fat).skip(1).all(|e| *e == z);
    let min_eigenvalue = eigenvalues.values().min().cloned().expect("p(n) > 0");
    let minimizers: Vec<Partition> =
        eigenvalues.iter().filter(|(_, e)| **e == min_eigenvalue).map(|(l, _)| l.clone()).collect();
    let minimizers_fat = eigenvalues
        .iter()
        .enumerate()
        .all(|(i, (_, e))| i < fat || *e != min_eigenvalue);
    let min_is_zeta = min_eigenvalue == z && minimizers_fat;
    let valid = min_is_zeta && fattest_eig == z && fat_nontrivial_are_zeta;
    Ok(Certificate {
        n,
        t,
        zeta: z,
        weights,
        eigenvalues,
        fattest_eig,
        fat_nontrivial_are_zeta,
        min_eigenvalue,
        minimizers,
        min_is_zeta,
        hoffman_value: hoffman_value(n, t)?,
        valid,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanRow {
    pub n: u32,
    pub valid: bool,
    #[serde(with = "rational::as_str")]
    pub min_eigenvalue: Rational,
    pub minimizers: Vec<Partition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanReport {
    pub t: u32,
    pub rows: Vec<ScanRow>,
    /// Smallest `n` in the window from which every verdict is valid.
    pub valid_from: Option<u32>,
}

impl ScanReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,t,valid,min_eigenvalue,minimizers\n");
        for row in &self.rows {
            let minimizers: Vec<String> = row.minimizers.iter().map(ToString::to_string).collect();
            out.push_str(&format!(
                "{},{},{},{},\"{}\"\n",
                row.n,
                self.t,
                row.valid,
                row.min_eigenvalue,
                minimizers.join(" ")
            ));
        }
        out
    }
}

/// Certifies every `n` in the window, one thread per `n`.
pub fn threshold_scan(t: u32, n_range: std::ops::RangeInclusive<u32>) -> Result<ScanReport> {
    let ns: Vec<u32> = n_range.collect();
    for &n in &ns {
        check_range(n, t)?;
    }
    let results: Vec<Result<Certificate>> = std::thread::scope(|scope| {
        let handles: Vec<_> = ns.iter().map(|&n| scope.spawn(move || certify(n, t))).collect();
        handles.into_iter().map(|h| h.join().expect("certify panicked")).collect()
    });
    let mut rows = Vec::with_capacity(ns.len());
    for cert in results {
        let cert = cert?;
        rows.push(ScanRow {
            n: cert.n,
            valid: cert.valid,
            min_eigenvalue: cert.min_eigenvalue,
            minimizers: cert.minimizers,
        });
    }
    let mut valid_from = None;
    for row in rows.iter().rev() {
        if !row.valid {
            break;
        }
        valid_from = Some(row.n);
    }
    Ok(ScanReport { t, rows, valid_from })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "camelCase")]
pub enum CrossRatio {
    Value {
        #[serde(with = "rational::as_str")]
        value: Rational,
    },
    Inapplicable { reason: String },
}

/// `(2n-1)!! |zeta| / (1 + |zeta|)`, when the certificate is valid and no
/// non-trivial eigenvalue exceeds `|zeta|` in absolute value.
pub fn cross_ratio_value(n: u32, t: u32) -> Result<CrossRatio> {
    let cert = certify(n, t)?;
    if !cert.valid {
        return Ok(CrossRatio::Inapplicable { reason: format!("certificate at n={n}, t={t} is invalid") });
    }
    let bound = cert.zeta.abs();
    if let Some((label, eta)) = cert.eigenvalues.iter().skip(1).find(|(_, e)| e.abs() > bound) {
        return Ok(CrossRatio::Inapplicable {
            reason: format!("|eta_{label}| = {} exceeds |zeta|", eta.abs()),
        });
    }
    let value = from_biguint(&odd_double_factorial(n)) * &bound / (Rational::one() + &bound);
    Ok(CrossRatio::Value { value })
}
