//! Dense square matrices and exact fraction-free elimination over big integers.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let n_rows = rows.len();
        let data = rows.into_iter().flatten().collect();
        Ok(Matrix { rows: n_rows, cols, data })
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn into_rows(self) -> Vec<Vec<T>> {
        let cols = self.cols;
        let mut out = Vec::with_capacity(self.rows);
        let mut it = self.data.into_iter();
        for _ in 0..self.rows {
            out.push(it.by_ref().take(cols).collect());
        }
        out
    }
}

impl<T: Clone> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    /// Copy of the `len × len` block starting at `(row, col)`.
    pub fn block(&self, row: usize, col: usize, len: usize) -> Matrix<T> {
        Matrix::from_fn(len, len, |i, j| self[(row + i, col + j)].clone())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl<T: Zero + One + Clone> Matrix<T> {
    pub fn identity(order: usize) -> Self {
        Matrix::from_fn(order, order, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

/// Result of a fraction-free solve `A X = B`: `X = scaled / denominator`.
#[derive(Debug, Clone)]
pub struct ScaledSolution {
    /// Determinant of the row-permuted `A` (equals `±det A`).
    pub denominator: BigInt,
    pub scaled: Matrix<BigInt>,
}

impl ScaledSolution {
    pub fn entry(&self, i: usize, j: usize) -> BigRational {
        BigRational::new(self.scaled[(i, j)].clone(), self.denominator.clone())
    }
}

/// Forward Bareiss elimination on `[A | B]` stored as rows of length `n + extra`.
///
/// On return the left block is upper triangular with the leading principal minors on
/// its diagonal. Returns the permutation sign, or `None` when `A` is singular.
fn bareiss_forward(rows: &mut [Vec<BigInt>], n: usize) -> Option<i8> {
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !rows[r][k].is_zero())?;
        if pivot != k {
            rows.swap(pivot, k);
            sign = -sign;
        }
        let (head, tail) = rows.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pivot_val = &pivot_row[k];
        let update = |row: &mut Vec<BigInt>| {
            let factor = std::mem::take(&mut row[k]);
            if factor.is_zero() {
                // a[i][j] = a[k][k] * a[i][j] / prev
                if !(pivot_val.is_one() && prev.is_one()) {
                    for x in row[k + 1..].iter_mut().filter(|x| !x.is_zero()) {
                        *x = (&*x * pivot_val).div_floor(&prev);
                    }
                }
                return;
            }
            for j in k + 1..row.len() {
                let t = &row[j] * pivot_val - &factor * &pivot_row[j];
                row[j] = if prev.is_one() { t } else { t.div_floor(&prev) };
            }
        };
        if tail.len() * (tail.first().map_or(0, Vec::len)) > 4096 {
            tail.par_iter_mut().for_each(update);
        } else {
            tail.iter_mut().for_each(update);
        }
        prev = rows[k][k].clone();
    }
    Some(sign)
}

/// Exact determinant of a square integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_determinant(matrix: &Matrix<BigInt>) -> Result<BigInt> {
    if !matrix.is_square() {
        return Err(Error::Shape(format!(
            "determinant of a {}x{} matrix",
            matrix.rows(),
            matrix.cols()
        )));
    }
    let n = matrix.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut rows = matrix.clone().into_rows();
    match bareiss_forward(&mut rows, n) {
        Some(sign) => {
            let det = rows[n - 1][n - 1].clone();
            Ok(if sign < 0 { -det } else { det })
        }
        None => Ok(BigInt::zero()),
    }
}

/// Exact determinant of a rational matrix: each row is cleared of denominators, the
/// integer determinant is taken, and the row scalings are divided back out.
pub fn rational_determinant(matrix: &Matrix<BigRational>) -> Result<BigRational> {
    if !matrix.is_square() {
        return Err(Error::Shape(format!(
            "determinant of a {}x{} matrix",
            matrix.rows(),
            matrix.cols()
        )));
    }
    let n = matrix.rows();
    let mut scale = BigInt::one();
    let mut int_rows = Vec::with_capacity(n);
    for i in 0..n {
        let row = matrix.row(i);
        let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        int_rows.push(row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect::<Vec<_>>());
        scale *= lcm;
    }
    let det = bareiss_determinant(&Matrix::from_rows(int_rows)?)?;
    Ok(BigRational::new(det, scale))
}

/// Solves `A X = B` exactly for integer `A` (square, nonsingular) and integer `B`.
///
/// Uses one fraction-free elimination on the augmented matrix followed by
/// fraction-free back substitution, so every intermediate stays an integer.
pub fn fraction_free_solve(a: &Matrix<BigInt>, b: &Matrix<BigInt>) -> Result<ScaledSolution> {
    if !a.is_square() || a.rows() != b.rows() {
        return Err(Error::Shape(format!(
            "cannot solve {}x{} system with {}x{} right-hand side",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let n = a.rows();
    let m = b.cols();
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| a.row(i).iter().chain(b.row(i)).cloned().collect())
        .collect();
    if n == 0 {
        return Ok(ScaledSolution { denominator: BigInt::one(), scaled: Matrix::filled(0, m, BigInt::zero()) });
    }
    bareiss_forward(&mut rows, n).ok_or_else(|| Error::Singular("coefficient matrix has rank < order".into()))?;
    let det = rows[n - 1][n - 1].clone();

    let upper = &rows;
    let columns: Vec<Vec<BigInt>> = (0..m)
        .into_par_iter()
        .map(|c| {
            let mut x = vec![BigInt::zero(); n];
            for i in (0..n).rev() {
                let mut acc = &det * &upper[i][n + c];
                for k in i + 1..n {
                    if !upper[i][k].is_zero() {
                        acc -= &upper[i][k] * &x[k];
                    }
                }
                debug_assert!((&acc % &upper[i][i]).is_zero());
                x[i] = acc / &upper[i][i];
            }
            x
        })
        .collect();
    let scaled = Matrix::from_fn(n, m, |i, c| columns[c][i].clone());
    let (denominator, scaled) = if det.is_negative() {
        (-det, scaled.map(|v| -v))
    } else {
        (det, scaled)
    };
    Ok(ScaledSolution { denominator, scaled })
}

/// Exact rational matrix product.
pub fn rational_matmul(a: &Matrix<BigRational>, b: &Matrix<BigRational>) -> Result<Matrix<BigRational>> {
    if a.cols() != b.rows() {
        return Err(Error::Shape(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let rows: Vec<Vec<BigRational>> = (0..a.rows())
        .into_par_iter()
        .map(|i| {
            let mut out = vec![BigRational::zero(); b.cols()];
            for (k, aik) in a.row(i).iter().enumerate() {
                if aik.is_zero() {
                    continue;
                }
                for (o, bkj) in out.iter_mut().zip(b.row(k)) {
                    if !bkj.is_zero() {
                        *o += aik * bkj;
                    }
                }
            }
            out
        })
        .collect();
    Matrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
            .unwrap()
    }

    /// Laplace expansion along the first row; exponential, small orders only.
    fn cofactor_det(m: &Matrix<BigInt>) -> BigInt {
        let n = m.rows();
        if n == 0 {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for j in 0..n {
            let minor = Matrix::from_fn(n - 1, n - 1, |r, c| m[(r + 1, if c < j { c } else { c + 1 })].clone());
            let term = &m[(0, j)] * cofactor_det(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(bareiss_determinant(&int_matrix(&[&[2, 1], &[1, 2]])).unwrap(), BigInt::from(3));
        assert_eq!(bareiss_determinant(&int_matrix(&[&[0, 1], &[1, 0]])).unwrap(), BigInt::from(-1));
        assert_eq!(bareiss_determinant(&int_matrix(&[&[1, 2], &[2, 4]])).unwrap(), BigInt::zero());
        let m = int_matrix(&[&[0, 2, -1, 3], &[4, 0, 1, 1], &[-2, 5, 0, 0], &[1, 1, 1, 0]]);
        assert_eq!(bareiss_determinant(&m).unwrap(), cofactor_det(&m));
    }

    #[test]
    fn non_square_rejected() {
        let m = Matrix::filled(2, 3, BigInt::one());
        assert!(matches!(bareiss_determinant(&m), Err(Error::Shape(_))));
    }

    #[test]
    fn solve_recovers_rational_solution() {
        let a = int_matrix(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let b = int_matrix(&[&[1, 0], &[0, 1], &[1, 1]]);
        let sol = fraction_free_solve(&a, &b).unwrap();
        for c in 0..2 {
            for i in 0..3 {
                let lhs: BigRational = (0..3)
                    .map(|k| BigRational::from_integer(a[(i, k)].clone()) * sol.entry(k, c))
                    .sum();
                assert_eq!(lhs, BigRational::from_integer(b[(i, c)].clone()));
            }
        }
    }

    #[test]
    fn singular_solve_is_an_error() {
        let a = int_matrix(&[&[1, 1], &[1, 1]]);
        let b = int_matrix(&[&[1], &[2]]);
        assert!(matches!(fraction_free_solve(&a, &b), Err(Error::Singular(_))));
    }

    #[test]
    fn rational_determinant_clears_denominators() {
        let m = Matrix::from_rows(vec![
            vec![crate::rational(1, 2), crate::rational(1, 3)],
            vec![crate::rational(1, 4), crate::rational(1, 5)],
        ])
        .unwrap();
        assert_eq!(rational_determinant(&m).unwrap(), crate::rational(1, 10) - crate::rational(1, 12));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn bareiss_matches_cofactor_expansion(
                n in 1usize..6,
                entries in proptest::collection::vec(-9i64..10, 36),
            ) {
                let m = Matrix::from_fn(n, n, |i, j| BigInt::from(entries[i * 6 + j]));
                prop_assert_eq!(bareiss_determinant(&m).unwrap(), cofactor_det(&m));
            }
        }
    }
}
