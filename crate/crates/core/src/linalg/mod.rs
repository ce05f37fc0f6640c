//! Dense exact vectors and matrices over [`ExactScalar`].

mod elim;
mod forms;

pub use elim::{coordinates, kernel, rank, rref, solve, Solution, Subspace};
pub use forms::{increasing_tuples, AltForm, Signature, SymmetricForm};

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("form degree {0} is not supported")]
    Degree(usize),
    #[error("index tuple {0:?} is out of range or repeats an index")]
    BadIndex(Vec<usize>),
}

/// Column vector.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(pub Vec<ExactScalar>);

impl Vector {
    pub fn zeros(n: usize) -> Self {
        Vector(vec![ExactScalar::zero(); n])
    }

    /// The `i`-th standard basis vector of length `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Vector::zeros(n);
        v.0[i] = ExactScalar::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Vector(xs.iter().map(|&x| ExactScalar::from_int(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(ExactScalar::is_zero)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ExactScalar> {
        self.0.iter()
    }

    pub fn scale(&self, c: &ExactScalar) -> Vector {
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn dot(&self, other: &Vector) -> ExactScalar {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// `self += c·other`
    pub fn axpy(&mut self, c: &ExactScalar, other: &Vector) {
        if c.is_zero() {
            return;
        }
        for (x, y) in self.0.iter_mut().zip(&other.0) {
            if !y.is_zero() {
                *x += c * y;
            }
        }
    }

    /// Indices and values of the nonzero entries.
    pub fn support(&self) -> impl Iterator<Item = (usize, &ExactScalar)> {
        self.0.iter().enumerate().filter(|(_, x)| !x.is_zero())
    }

    /// `Some(c)` with `self = c·other`, if `other` is nonzero and the two are parallel.
    pub fn multiple_of(&self, other: &Vector) -> Option<ExactScalar> {
        let (k, pivot) = other.support().next()?;
        let c = self.0[k].try_div(pivot).ok()?;
        (other.scale(&c) == *self).then_some(c)
    }
}

impl Index<usize> for Vector {
    type Output = ExactScalar;
    fn index(&self, i: usize) -> &ExactScalar {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut ExactScalar {
        &mut self.0[i]
    }
}

impl Add<&Vector> for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&Vector> for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![ExactScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ExactScalar::one();
        }
        m
    }

    pub fn diagonal(entries: &[ExactScalar]) -> Self {
        let mut m = Mat::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Dimension("ragged rows".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Mat::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| ExactScalar::from_int(x)).collect()).collect(),
        )
        .expect("rectangular integer rows")
    }

    /// Matrix whose columns are the given vectors (all of length `n`).
    pub fn from_columns(n: usize, cols: &[Vector]) -> Self {
        Mat::from_fn(n, cols.len(), |i, j| cols[j][i].clone())
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ExactScalar::is_zero)
    }

    pub fn row(&self, i: usize) -> Vector {
        Vector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<ExactScalar>> {
        (0..self.rows).map(|i| self.row(i).0).collect()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &ExactScalar) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn trace(&self) -> ExactScalar {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        assert_eq!(self.cols, v.len(), "mul_vec dimension mismatch");
        let mut out = Vector::zeros(self.rows);
        for (j, x) in v.support() {
            for i in 0..self.rows {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    out.0[i] += a * x;
                }
            }
        }
        out
    }

    /// `self·rhs − rhs·self`
    pub fn commutator(&self, rhs: &Mat) -> Mat {
        &(self * rhs) - &(rhs * self)
    }

    /// Entries read row by row, as one long vector.
    pub fn flatten(&self) -> Vector {
        Vector(self.data.clone())
    }

    pub fn unflatten(rows: usize, cols: usize, v: &Vector) -> Mat {
        assert_eq!(v.len(), rows * cols);
        Mat { rows, cols, data: v.0.clone() }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        Mat::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Inverse by Gauss-Jordan elimination, `None` when singular.
    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = ExactScalar::one();
        }
        let (r, pivots) = rref(&aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    pub fn determinant(&self) -> ExactScalar {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = ExactScalar::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return ExactScalar::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                det = -det;
            }
            let pivot = a[(k, k)].clone();
            det *= &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for i in k + 1..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let f = &a[(i, k)] * &inv;
                for j in k..n {
                    if !a[(k, j)].is_zero() {
                        let d = &f * &a[(k, j)];
                        a[(i, j)] -= &d;
                    }
                }
            }
        }
        det
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = ExactScalar;
    fn index(&self, (i, j): (usize, usize)) -> &ExactScalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ExactScalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&Mat> for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add<&Mat> for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&Mat> for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl Serialize for Mat {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<ExactScalar>>::deserialize(deserializer)?;
        Mat::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    #[test]
    fn product_and_inverse() {
        let a = Mat::from_int_rows(&[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Mat::identity(2));
        assert_eq!(a.determinant(), s(-2));
        assert!(Mat::from_int_rows(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn irrational_determinant() {
        let r2 = ExactScalar::sqrt2();
        let a = Mat::from_rows(vec![vec![r2.clone(), s(1)], vec![s(1), r2.clone()]]).unwrap();
        assert_eq!(a.determinant(), s(1));
        assert_eq!(&a * &a.inverse().unwrap(), Mat::identity(2));
    }

    #[test]
    fn associativity_on_a_small_example() {
        let a = Mat::from_int_rows(&[&[1, 2, 0], &[0, -1, 3]]);
        let b = Mat::from_int_rows(&[&[2, 1], &[0, 1], &[5, -2]]);
        let c = Mat::from_int_rows(&[&[1, 1, 1], &[4, 0, -3]]);
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiple_of() {
        let v = Vector::from_ints(&[0, 2, -4]);
        let w = Vector::from_ints(&[0, 1, -2]);
        assert_eq!(v.multiple_of(&w), Some(s(2)));
        assert_eq!(w.multiple_of(&Vector::from_ints(&[1, 0, 0])), None);
        assert_eq!(w.multiple_of(&Vector::zeros(3)), None);
    }
}
