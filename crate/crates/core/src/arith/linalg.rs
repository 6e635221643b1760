//! Small dense matrices over a generic scalar.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use super::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let data = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Submatrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
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

impl<T> Matrix<T>
where
    T: Clone,
    for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    /// Matrix product; `zero` is the additive identity of the scalar.
    pub fn mul_with(&self, rhs: &Self, zero: &T) -> Self {
        assert_eq!(self.cols, rhs.rows);
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(zero.clone(), |acc, k| &acc + &(&self[(i, k)] * &rhs[(k, j)]))
        })
    }
}

impl<T> Matrix<T>
where
    T: Clone,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    /// Determinant by cofactor expansion along the first row.
    ///
    /// Works over any commutative ring, including polynomial rings, which is
    /// what symbolic minors need. Intended for small sizes.
    pub fn determinant_with(&self, zero: &T, one: &T) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let all: Vec<usize> = (0..self.cols).collect();
        self.det_rec(0, &all, zero, one)
    }

    fn det_rec(&self, row: usize, cols: &[usize], zero: &T, one: &T) -> T {
        if cols.is_empty() {
            return one.clone();
        }
        let mut acc = zero.clone();
        for (pos, &c) in cols.iter().enumerate() {
            let entry = &self[(row, c)];
            let rest: Vec<usize> = cols.iter().copied().filter(|&k| k != c).collect();
            let term = entry * &self.det_rec(row + 1, &rest, zero, one);
            acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, F::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in 0..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in 0..m.cols {
                        m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Determinant by Gaussian elimination.
    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = m.rows;
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return F::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det = det * pivot.clone();
            let inv = pivot.inv().expect("pivot is nonzero");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() * inv.clone();
                for j in c..n {
                    m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(c, j)].clone();
                }
            }
        }
        det
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::scalar::{parse_rational, Fp};
    use num_rational::BigRational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn rank_and_determinant_over_rationals() {
        let m = Matrix::from_rows(vec![
            vec![q("1"), q("2"), q("3")],
            vec![q("2"), q("4"), q("6")],
            vec![q("1"), q("0"), q("1")],
        ]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.determinant(), q("0"));
        let m = Matrix::from_rows(vec![vec![q("2"), q("1/2")], vec![q("3"), q("1")]]);
        assert_eq!(m.determinant(), q("1/2"));
        assert_eq!(m.determinant_with(&q("0"), &q("1")), q("1/2"));
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let rows = vec![vec![1i64, 1], vec![1, -1]];
        let over2 = Matrix::from_rows(rows.clone()).map(|&v| Fp::<2>::new(v));
        let over3 = Matrix::from_rows(rows).map(|&v| Fp::<3>::new(v));
        assert_eq!(over2.rank(), 1);
        assert_eq!(over3.rank(), 2);
    }

    #[test]
    fn cofactor_determinant_over_integers() {
        use num_bigint::BigInt;
        let m = Matrix::from_rows(vec![
            vec![BigInt::from(2), BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(3), BigInt::from(2)],
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)],
        ]);
        assert_eq!(m.determinant_with(&BigInt::from(0), &BigInt::from(1)), BigInt::from(0));
    }
}
