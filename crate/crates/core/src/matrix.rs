//! Dense row-major matrices over any [`FieldElement`].

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::FieldElement;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.data.chunks(self.cols.max(1)))
            .finish()
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

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from row vectors; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Dimension {
                    expected: c,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
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

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.rows().map(<[T]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Principal submatrix on the given index set.
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(idx.len(), idx.len(), |i, j| self[(idx[i], idx[j])].clone())
    }

    pub fn is_symmetric(&self) -> bool
    where
        T: PartialEq,
    {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + std::ops::Mul<Output = T>,
{
    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                expected: self.cols,
                got: other.rows,
            });
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
            }
            acc
        }))
    }

    /// `self · m · selfᵀ`, the congruence action on a Gram matrix.
    pub fn congruence(&self, m: &Matrix<T>) -> Result<Matrix<T>> {
        self.mul(m)?.mul(&self.transpose())
    }

    pub fn scale(&self, s: &T) -> Matrix<T> {
        self.map(|x| x.clone() * s.clone())
    }
}

impl<T: FieldElement> Matrix<T> {
    /// Index of the pivot to use in column `col` among rows `from..`.
    fn pivot(&self, col: usize, from: usize) -> Option<usize> {
        if T::is_exact() {
            (from..self.rows).find(|&r| !self[(r, col)].is_zero())
        } else {
            (from..self.rows)
                .filter(|&r| self[(r, col)].abs_f64() > 0.0)
                .max_by(|&a, &b| {
                    self[(a, col)]
                        .abs_f64()
                        .partial_cmp(&self[(b, col)].abs_f64())
                        .unwrap()
                })
        }
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::Dimension {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = a.pivot(c, c) else {
                return Ok(T::zero());
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a[(c, c)].clone();
            det = det * piv.clone();
            for r in c + 1..n {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone() / piv.clone();
                for k in c..n {
                    let v = a[(r, k)].clone() - f.clone() * a[(c, k)].clone();
                    a[(r, k)] = v;
                }
            }
        }
        Ok(det)
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix<T>> {
        if !self.is_square() {
            return Err(Error::Dimension {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::<T>::identity(n);
        for c in 0..n {
            let p = a.pivot(c, c).ok_or(Error::Singular)?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let piv = a[(c, c)].clone();
            for k in 0..n {
                a[(c, k)] = a[(c, k)].clone() / piv.clone();
                inv[(c, k)] = inv[(c, k)].clone() / piv.clone();
            }
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for k in 0..n {
                    a[(r, k)] = a[(r, k)].clone() - f.clone() * a[(c, k)].clone();
                    inv[(r, k)] = inv[(r, k)].clone() - f.clone() * inv[(c, k)].clone();
                }
            }
        }
        Ok(inv)
    }

    /// Rank by row reduction.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = a.pivot(c, rank) else { continue };
            a.swap_rows(p, rank);
            let piv = a[(rank, c)].clone();
            for r in rank + 1..self.rows {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone() / piv.clone();
                for k in c..self.cols {
                    let v = a[(r, k)].clone() - f.clone() * a[(rank, k)].clone();
                    a[(r, k)] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(FieldElement::to_f64)
    }
}

/// `v · M` for a row vector `v`.
pub fn vec_mat<T>(v: &[T], m: &Matrix<T>) -> Vec<T>
where
    T: Clone + Zero + std::ops::Mul<Output = T>,
{
    (0..m.ncols())
        .map(|j| {
            let mut acc = T::zero();
            for (i, vi) in v.iter().enumerate() {
                acc = acc + vi.clone() * m[(i, j)].clone();
            }
            acc
        })
        .collect()
}

pub fn dot<T>(a: &[T], b: &[T]) -> T
where
    T: Clone + Zero + std::ops::Mul<Output = T>,
{
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}
