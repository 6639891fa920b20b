//! Dense exact-rational matrices. [`QMatrix`] is the bare carrier; a
//! [`RationalMatrix`] additionally labels its rows and columns by
//! partitions.

use std::fmt;
use std::ops::Mul;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, factor: &Rational) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * factor).collect() }
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)].is_zero()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self[(i, j)].is_zero()))
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.is_upper_triangular() && (0..self.rows).all(|i| self[(i, i)].is_one())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Top-left `k x k` block.
    pub fn leading_block(&self, k: usize) -> QMatrix {
        assert!(k <= self.rows && k <= self.cols);
        QMatrix::from_fn(k, k, |i, j| self[(i, j)].clone())
    }

    /// Inverse of a triangular matrix by substitution; `None` if singular or
    /// not triangular.
    pub fn triangular_inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        if self.is_upper_triangular() {
            Some(self.transpose().lower_inverse()?.transpose())
        } else if self.is_lower_triangular() {
            self.lower_inverse()
        } else {
            None
        }
    }

    fn lower_inverse(&self) -> Option<QMatrix> {
        let n = self.rows;
        if (0..n).any(|i| self[(i, i)].is_zero()) {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for j in 0..n {
            inv[(j, j)] = self[(j, j)].recip();
            for i in j + 1..n {
                let mut acc = Rational::zero();
                for k in j..i {
                    if !self[(i, k)].is_zero() && !inv[(k, j)].is_zero() {
                        acc += &self[(i, k)] * &inv[(k, j)];
                    }
                }
                inv[(i, j)] = -acc / &self[(i, i)];
            }
        }
        Some(inv)
    }

    /// Solves `self * x = b` by Gaussian elimination with exact pivoting on
    /// the first nonzero entry.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.rows;
        if !self.is_square() || b.len() != n {
            return Err(Error::Domain("solve needs a square system".into()));
        }
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(b[i].clone());
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or_else(|| Error::Internal(format!("singular system at column {col}")))?;
            a.swap(col, pivot);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut().skip(col) {
                *x *= &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for c in col..=n {
                        let delta = &factor * &a[col][c];
                        a[r][c] -= delta;
                    }
                }
            }
        }
        Ok(a.into_iter().map(|mut row| row.pop().unwrap()).collect())
    }

    pub fn inverse(&self) -> Result<QMatrix> {
        if let Some(inv) = self.triangular_inverse() {
            return Ok(inv);
        }
        let n = self.rows;
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|j| {
                let e: Vec<Rational> =
                    (0..n).map(|i| if i == j { Rational::one() } else { Rational::zero() }).collect();
                self.solve(&e)
            })
            .collect::<Result<_>>()?;
        Ok(QMatrix::from_fn(n, n, |i, j| cols[j][i].clone()))
    }

    /// Determinant by fraction-exact elimination.
    pub fn determinant(&self) -> Rational {
        assert!(self.is_square());
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                a.swap(col, pivot);
                det = -det;
            }
            det *= &a[col][col];
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &a[col][col];
                for c in col..n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
        det
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;

    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// A matrix whose rows and columns are indexed by partitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    pub row_labels: Vec<Partition>,
    pub col_labels: Vec<Partition>,
    pub entries: QMatrix,
}

impl RationalMatrix {
    pub fn new(row_labels: Vec<Partition>, col_labels: Vec<Partition>, entries: QMatrix) -> Self {
        assert_eq!(row_labels.len(), entries.rows());
        assert_eq!(col_labels.len(), entries.cols());
        RationalMatrix { row_labels, col_labels, entries }
    }

    pub fn square(labels: Vec<Partition>, entries: QMatrix) -> Self {
        Self::new(labels.clone(), labels, entries)
    }

    pub fn dim(&self) -> (usize, usize) {
        (self.entries.rows(), self.entries.cols())
    }

    pub fn row_index(&self, label: &Partition) -> Option<usize> {
        self.row_labels.iter().position(|p| p == label)
    }

    pub fn col_index(&self, label: &Partition) -> Option<usize> {
        self.col_labels.iter().position(|p| p == label)
    }

    pub fn get(&self, row: &Partition, col: &Partition) -> Option<&Rational> {
        Some(&self.entries[(self.row_index(row)?, self.col_index(col)?)])
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.entries[(i, j)]
    }

    pub fn transpose(&self) -> RationalMatrix {
        RationalMatrix::new(self.col_labels.clone(), self.row_labels.clone(), self.entries.transpose())
    }

    /// Product, checking that the inner labels line up.
    pub fn product(&self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.col_labels, rhs.row_labels, "label mismatch in product");
        RationalMatrix::new(self.row_labels.clone(), rhs.col_labels.clone(), &self.entries * &rhs.entries)
    }

    pub fn inverse(&self) -> Result<RationalMatrix> {
        let inv = self.entries.inverse()?;
        Ok(RationalMatrix::new(self.col_labels.clone(), self.row_labels.clone(), inv))
    }

    pub fn leading_block(&self, k: usize) -> RationalMatrix {
        RationalMatrix::new(
            self.row_labels[..k].to_vec(),
            self.col_labels[..k].to_vec(),
            self.entries.leading_block(k),
        )
    }

    /// CSV with a header row of column labels and a leading label column.
    /// Labels are quoted since they contain commas.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("\"\"");
        for c in &self.col_labels {
            out.push_str(&format!(",\"{c}\""));
        }
        out.push('\n');
        for (i, r) in self.row_labels.iter().enumerate() {
            out.push_str(&format!("\"{r}\""));
            for x in self.entries.row(i) {
                out.push_str(&format!(",{x}"));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = std::iter::once(
            std::iter::once(String::new()).chain(self.col_labels.iter().map(|c| format!("({c})"))).collect(),
        )
        .chain(self.row_labels.iter().enumerate().map(|(i, r)| {
            std::iter::once(format!("({r})"))
                .chain(self.entries.row(i).iter().map(|x| x.to_string()))
                .collect()
        }))
        .collect();
        let ncols = cells[0].len();
        let widths: Vec<usize> =
            (0..ncols).map(|j| cells.iter().map(|row| row[j].len()).max().unwrap_or(0)).collect();
        for row in &cells {
            let line: Vec<String> =
                row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}", w = w)).collect();
            writeln!(f, "{}", line.join("  ").trim_end())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
    }

    #[test]
    fn triangular_inverse_roundtrip() {
        let l = m(&[&[1, 0, 0], &[1, 2, 0], &[1, 3, 6]]);
        let inv = l.triangular_inverse().unwrap();
        assert_eq!(&l * &inv, QMatrix::identity(3));
        let u = l.transpose();
        assert_eq!(&u * &u.triangular_inverse().unwrap(), QMatrix::identity(3));
    }

    #[test]
    fn solve_and_det() {
        let a = m(&[&[0, 2], &[3, 1]]);
        let x = a.solve(&[qi(4), qi(5)]).unwrap();
        assert_eq!(x, vec![qi(1), qi(2)]);
        assert_eq!(a.determinant(), qi(-6));
        assert!(matches!(m(&[&[1, 2], &[2, 4]]).solve(&[qi(1), qi(1)]), Err(Error::Internal(_))));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant(), qi(0));
        assert_eq!(a.inverse().unwrap()[(0, 0)], q(-1, 6));
    }

    proptest! {
        #[test]
        fn inverse_of_random_matrix(entries in proptest::collection::vec(-5i64..6, 9)) {
            let a = QMatrix::from_fn(3, 3, |i, j| qi(entries[3 * i + j]));
            if !a.determinant().is_zero() {
                let inv = a.inverse().unwrap();
                prop_assert_eq!(&a * &inv, QMatrix::identity(3));
                prop_assert_eq!(a.determinant() * inv.determinant(), Rational::one());
            }
        }
    }
}
