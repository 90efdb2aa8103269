//! Dense exact-rational matrices and integer Hermite normal form.
//!
//! Internal helpers only; the public API exposes these through the lattice
//! and catalog types.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Row-major dense matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    /// Builds a matrix from row slices; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        debug_assert!(rows.iter().all(|row| row.len() == c));
        QMat {
            rows: r,
            cols: c,
            data: rows.iter().flat_map(|row| row.iter().cloned()).collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// `row_i -= factor * row_j`, starting at column `from`.
    fn sub_scaled_row(&mut self, i: usize, j: usize, factor: &Rational, from: usize) {
        for c in from..self.cols {
            let v = self.at(j, c) * factor;
            *self.at_mut(i, c) -= v;
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            for r in rank + 1..m.rows {
                if !m.at(r, col).is_zero() {
                    let f = m.at(r, col) / m.at(rank, col);
                    m.sub_scaled_row(r, rank, &f, col);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    pub fn det(&self) -> Rational {
        debug_assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..m.cols {
            let Some(pivot) = (col..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                m.swap_rows(col, pivot);
                det = -det;
            }
            det *= m.at(col, col);
            for r in col + 1..m.rows {
                if !m.at(r, col).is_zero() {
                    let f = m.at(r, col) / m.at(col, col);
                    m.sub_scaled_row(r, col, &f, col);
                }
            }
        }
        det
    }

    /// Solves `A x = b` when the columns of `A` are linearly independent.
    /// Returns `None` if the system is inconsistent or underdetermined.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        debug_assert_eq!(b.len(), self.rows);
        let mut m = QMat::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(i, j) = self.at(i, j).clone();
            }
            *m.at_mut(i, self.cols) = b[i].clone();
        }
        // Forward elimination; every column must produce a pivot.
        let mut pivot_rows = Vec::with_capacity(self.cols);
        let mut next = 0;
        for col in 0..self.cols {
            let pivot = (next..self.rows).find(|&r| !m.at(r, col).is_zero())?;
            m.swap_rows(next, pivot);
            for r in next + 1..self.rows {
                if !m.at(r, col).is_zero() {
                    let f = m.at(r, col) / m.at(next, col);
                    m.sub_scaled_row(r, next, &f, col);
                }
            }
            pivot_rows.push(col);
            next += 1;
        }
        // Rows below the last pivot must have vanished entirely.
        for r in next..self.rows {
            if !m.at(r, self.cols).is_zero() {
                return None;
            }
        }
        // Back substitution.
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &col) in pivot_rows.iter().enumerate().rev() {
            let mut acc = m.at(row, self.cols).clone();
            for j in col + 1..self.cols {
                acc -= m.at(row, j) * &x[j];
            }
            x[col] = acc / m.at(row, col);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<QMat> {
        debug_assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = QMat::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *m.at_mut(i, j) = self.at(i, j).clone();
            }
            *m.at_mut(i, n + i) = Rational::one();
        }
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.at(r, col).is_zero())?;
            m.swap_rows(col, pivot);
            let p = m.at(col, col).clone();
            for c in col..2 * n {
                *m.at_mut(col, c) /= &p;
            }
            for r in 0..n {
                if r != col && !m.at(r, col).is_zero() {
                    let f = m.at(r, col).clone();
                    m.sub_scaled_row(r, col, &f, col);
                }
            }
        }
        let mut inv = QMat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                *inv.at_mut(i, j) = m.at(i, n + j).clone();
            }
        }
        Some(inv)
    }

    /// Exact `L D L^T` factorization of a symmetric matrix with unit
    /// lower-triangular `L`. Returns `None` when a pivot is not strictly
    /// positive, i.e. exactly when the matrix is not positive definite.
    pub fn ldlt(&self) -> Option<(QMat, Vec<Rational>)> {
        debug_assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut lower = QMat::identity(n);
        let mut diag = vec![Rational::zero(); n];
        for j in 0..n {
            let mut d = self.at(j, j).clone();
            for k in 0..j {
                d -= lower.at(j, k) * lower.at(j, k) * &diag[k];
            }
            if !d.is_positive() {
                return None;
            }
            diag[j] = d;
            for i in j + 1..n {
                let mut v = self.at(i, j).clone();
                for k in 0..j {
                    v -= lower.at(i, k) * lower.at(j, k) * &diag[k];
                }
                *lower.at_mut(i, j) = v / &diag[j];
            }
        }
        Some((lower, diag))
    }
}

/// Row-style Hermite normal form of an integer matrix.
///
/// Returns the canonical basis of the row lattice: zero rows dropped, pivots
/// positive, entries above each pivot reduced into `[0, pivot)`.
pub(crate) fn hnf_rows(mut m: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if m.is_empty() {
        return m;
    }
    let cols = m[0].len();
    let mut pivot_row = 0;
    for col in 0..cols {
        loop {
            // Smallest nonzero |entry| in this column at or below pivot_row.
            let mut best: Option<usize> = None;
            for (r, row) in m.iter().enumerate().skip(pivot_row) {
                if !row[col].is_zero() && best.is_none_or(|b| row[col].abs() < m[b][col].abs()) {
                    best = Some(r);
                }
            }
            let Some(best) = best else { break };
            m.swap(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..m.len() {
                if !m[r][col].is_zero() {
                    let q = m[r][col].div_floor(&m[pivot_row][col]);
                    for c in 0..cols {
                        let v = &m[pivot_row][c] * &q;
                        m[r][c] -= v;
                    }
                    if !m[r][col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                // Normalize pivot sign, then reduce the rows above it.
                if m[pivot_row][col].is_negative() {
                    for c in 0..cols {
                        let v = -m[pivot_row][c].clone();
                        m[pivot_row][c] = v;
                    }
                }
                for r in 0..pivot_row {
                    if !m[r][col].is_zero() {
                        let q = m[r][col].div_floor(&m[pivot_row][col]);
                        for c in 0..cols {
                            let v = &m[pivot_row][c] * &q;
                            m[r][c] -= v;
                        }
                    }
                }
                pivot_row += 1;
                break;
            }
        }
        if pivot_row == m.len() {
            break;
        }
    }
    m.truncate(pivot_row);
    m
}
