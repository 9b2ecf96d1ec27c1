//! Dense rational matrices, fraction-free determinants and triangular inverses.

use crate::rational::{self, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not lower triangular")]
    NotLowerTriangular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Matrices produced from Riordan pairs and orthogonal-polynomial data.
pub type LowerTriangularMatrix = Matrix;

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Lower-triangular matrix from rows of increasing length, zero-filled.
    pub fn from_triangle(rows: &[Vec<Rational>]) -> Self {
        let n = rows.len();
        Self::from_fn(n, n, |i, j| rows[i].get(j).cloned().unwrap_or_else(Rational::zero))
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

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| ((i + 1)..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    /// True when every entry off the three central diagonals is zero.
    pub fn is_tridiagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i.abs_diff(j) <= 1 || self.get(i, j).is_zero()))
    }

    /// Diagonal at offset `k` (`k > 0` above, `k < 0` below the main diagonal).
    pub fn diagonal(&self, k: isize) -> Vec<Rational> {
        (0..self.rows)
            .filter_map(|i| {
                let j = i as isize + k;
                (j >= 0 && (j as usize) < self.cols).then(|| self.get(i, j as usize).clone())
            })
            .collect()
    }

    /// Inverse of a lower-triangular matrix with nonzero diagonal, by forward substitution.
    pub fn lower_triangular_inverse(&self) -> Result<Self, MatrixError> {
        if !self.is_square() || !self.is_lower_triangular() {
            return Err(MatrixError::NotLowerTriangular);
        }
        let n = self.rows;
        let mut inv = Self::zeros(n, n);
        for j in 0..n {
            for i in j..n {
                let mut acc = if i == j { Rational::one() } else { Rational::zero() };
                for k in j..i {
                    acc -= self.get(i, k) * inv.get(k, j);
                }
                let d = self.get(i, i);
                if d.is_zero() {
                    return Err(MatrixError::Singular);
                }
                inv.set(i, j, acc / d);
            }
        }
        Ok(inv)
    }

    /// Row `i` multiplied by the LCM of its denominators.
    pub fn row_scaled_to_integers(&self, i: usize) -> (BigInt, Vec<BigInt>) {
        let l = rational::denominator_lcm(self.row(i));
        let scaled = self
            .row(i)
            .iter()
            .map(|v| (v * Rational::from_integer(l.clone())).to_integer())
            .collect();
        (l, scaled)
    }
}

/// Exact determinant by fraction-free Bareiss elimination after clearing each
/// column's denominators. Panics on a non-square matrix.
pub fn exact_determinant(m: &Matrix) -> Rational {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = vec![Vec::with_capacity(n); n];
    for j in 0..n {
        let col = m.column(j);
        let l = rational::denominator_lcm(&col);
        for (i, v) in col.iter().enumerate() {
            a[i].push((v * Rational::from_integer(l.clone())).to_integer());
        }
        scale *= l;
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let det = Rational::new(a[n - 1][n - 1].clone(), scale);
    if sign {
        -det
    } else {
        det
    }
}

impl fmt::Display for Matrix {
    /// Right-aligned grid, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| cells[i * self.cols + j].len()).max().unwrap_or(0))
            .collect();
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>w$}", cells[i * self.cols + j], w = widths[j]))
                .collect();
            writeln!(f, "{}", line.join("  "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, ints};

    #[test]
    fn small_determinants() {
        assert_eq!(exact_determinant(&Matrix::identity(5)), int(1));
        let m = Matrix::from_rows(vec![ints(&[1, 1]), ints(&[1, 2])]);
        assert_eq!(exact_determinant(&m), int(1));
        let z = Matrix::from_rows(vec![ints(&[0, 1]), ints(&[1, 0])]);
        assert_eq!(exact_determinant(&z), int(-1));
        let h = Matrix::from_rows(vec![
            vec![frac(1, 2), frac(1, 3)],
            vec![frac(1, 3), frac(1, 4)],
        ]);
        assert_eq!(exact_determinant(&h), frac(1, 72));
        let rank1 = Matrix::from_rows(vec![ints(&[2, 2, 2]), ints(&[2, 2, 2]), ints(&[2, 2, 2])]);
        assert_eq!(exact_determinant(&rank1), int(0));
        assert_eq!(exact_determinant(&Matrix::zeros(0, 0)), int(1));
    }

    #[test]
    fn triangular_inverse() {
        let m = Matrix::from_triangle(&[ints(&[1]), ints(&[1, 1]), ints(&[1, 2, 1])]);
        let inv = m.lower_triangular_inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(3));
        assert_eq!(inv.row(2), &ints(&[1, -2, 1])[..]);
        let full = Matrix::from_rows(vec![ints(&[1, 1]), ints(&[0, 1])]);
        assert_eq!(full.lower_triangular_inverse(), Err(MatrixError::NotLowerTriangular));
    }

    #[test]
    fn display_aligns_columns() {
        let m = Matrix::from_rows(vec![vec![int(1), frac(-1, 2)], vec![int(10), int(0)]]);
        assert_eq!(m.to_string(), " 1  -1/2\n10     0\n");
    }

    #[test]
    fn diagonals() {
        let m = Matrix::from_fn(3, 4, |i, j| int((10 * i + j) as i64));
        assert_eq!(m.diagonal(0), ints(&[0, 11, 22]));
        assert_eq!(m.diagonal(1), ints(&[1, 12, 23]));
        assert_eq!(m.diagonal(-1), ints(&[10, 21]));
    }
}
