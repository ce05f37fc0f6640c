//! Gaussian elimination: reduced row echelon form, rank, kernels, solving,
//! and subspaces kept in canonical (reduced echelon) form.

use super::{LinalgError, Mat, Vector};
use crate::scalar::ExactScalar;

/// Reduced row echelon form and the pivot columns.
pub fn rref(a: &Mat) -> (Mat, Vec<usize>) {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(p, r);
        let inv = m[(r, c)].inv().expect("nonzero pivot");
        for j in c..cols {
            if !m[(r, j)].is_zero() {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
        }
        let pivot_row: Vec<(usize, ExactScalar)> =
            (c..cols).filter(|&j| !m[(r, j)].is_zero()).map(|j| (j, m[(r, j)].clone())).collect();
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for (j, x) in &pivot_row {
                let d = &f * x;
                m[(i, *j)] -= &d;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(a: &Mat) -> usize {
    rref(a).1.len()
}

/// Basis of the null space `{x : a·x = 0}`, one vector per free column.
pub fn kernel(a: &Mat) -> Vec<Vector> {
    let (r, pivots) = rref(a);
    let n = a.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = Vector::unit(n, f);
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(row, f)];
            }
            v
        })
        .collect()
}

/// Outcome of solving `A·x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vector),
    None,
    /// `particular + span(directions)`
    Affine { particular: Vector, directions: Vec<Vector> },
}

impl Solution {
    pub fn unique(self) -> Option<Vector> {
        match self {
            Solution::Unique(v) => Some(v),
            _ => None,
        }
    }

    /// Any one solution, if the system is consistent.
    pub fn any(self) -> Option<Vector> {
        match self {
            Solution::Unique(v) | Solution::Affine { particular: v, .. } => Some(v),
            Solution::None => None,
        }
    }
}

pub fn solve(a: &Mat, b: &Vector) -> Result<Solution, LinalgError> {
    if a.rows() != b.len() {
        return Err(LinalgError::Dimension(format!(
            "{}x{} system with right-hand side of length {}",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    let n = a.cols();
    let aug = Mat::from_fn(a.rows(), n + 1, |i, j| if j < n { a[(i, j)].clone() } else { b[i].clone() });
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&n) {
        return Ok(Solution::None);
    }
    let mut particular = Vector::zeros(n);
    for (row, &p) in pivots.iter().enumerate() {
        particular[p] = r[(row, n)].clone();
    }
    let directions = kernel(a);
    Ok(if directions.is_empty() {
        Solution::Unique(particular)
    } else {
        Solution::Affine { particular, directions }
    })
}

/// Coordinates of `v` in the (linearly independent) family `basis`.
pub fn coordinates(basis: &[Vector], v: &Vector) -> Option<Vector> {
    let a = Mat::from_columns(v.len(), basis);
    solve(&a, v).ok()?.unique()
}

/// A linear subspace of `K^ambient`, stored as the nonzero rows of a reduced
/// echelon form so that equal subspaces have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::span(ambient, (0..ambient).map(|i| Vector::unit(ambient, i)))
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vector>) -> Self {
        let vs: Vec<Vector> = vectors.into_iter().collect();
        if vs.is_empty() {
            return Subspace::zero(ambient);
        }
        let m = Mat::from_fn(vs.len(), ambient, |i, j| vs[i][j].clone());
        let (r, pivots) = rref(&m);
        Subspace { ambient, rows: (0..pivots.len()).map(|i| r.row(i)).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn contains(&self, v: &Vector) -> bool {
        if v.is_zero() {
            return true;
        }
        Subspace::span(self.ambient, self.rows.iter().cloned().chain([v.clone()])).dim() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.ambient, self.rows.iter().chain(&other.rows).cloned())
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // Solve Σ a_i u_i = Σ b_j w_j.
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        let cols: Vec<Vector> =
            self.rows.iter().cloned().chain(other.rows.iter().map(|w| -w)).collect();
        let m = Mat::from_columns(self.ambient, &cols);
        let vs = kernel(&m).into_iter().map(|k| {
            let mut v = Vector::zeros(self.ambient);
            for (i, u) in self.rows.iter().enumerate() {
                v.axpy(&k[i], u);
            }
            v
        });
        Subspace::span(self.ambient, vs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_system() {
        let b = Vector::from_ints(&[3, -1, 2]);
        assert_eq!(solve(&Mat::identity(3), &b).unwrap(), Solution::Unique(b));
    }

    #[test]
    fn inconsistent_zero_system() {
        let b = Vector::from_ints(&[0, 1]);
        assert_eq!(solve(&Mat::zeros(2, 2), &b).unwrap(), Solution::None);
    }

    #[test]
    fn underdetermined_system() {
        let a = Mat::from_int_rows(&[&[1, 1, 1], &[1, 1, 2]]);
        let b = Vector::from_ints(&[3, 2]);
        match solve(&a, &b).unwrap() {
            Solution::Affine { particular, directions } => {
                assert_eq!(a.mul_vec(&particular), b);
                assert_eq!(directions.len(), 1);
                assert!(a.mul_vec(&directions[0]).is_zero());
            }
            other => panic!("expected affine family, got {other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch() {
        assert!(solve(&Mat::identity(2), &Vector::zeros(3)).is_err());
    }

    #[test]
    fn kernels() {
        assert!(kernel(&Mat::identity(4)).is_empty());
        let k = kernel(&Mat::zeros(3, 3));
        assert_eq!(k.len(), 3);
        let a = Mat::from_int_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn subspace_canonical_form() {
        let a = Subspace::span(3, [Vector::from_ints(&[1, 1, 0]), Vector::from_ints(&[0, 1, 0])]);
        let b = Subspace::span(3, [Vector::from_ints(&[1, 0, 0]), Vector::from_ints(&[2, 3, 0])]);
        assert_eq!(a, b);
        assert!(a.contains(&Vector::from_ints(&[5, -7, 0])));
        assert!(!a.contains(&Vector::from_ints(&[0, 0, 1])));
        let c = Subspace::span(3, [Vector::from_ints(&[0, 1, 1])]);
        assert_eq!(a.intersection(&c).dim(), 0);
        let d = Subspace::span(3, [Vector::from_ints(&[0, 1, 1]), Vector::from_ints(&[1, 0, 0])]);
        assert_eq!(a.intersection(&d), Subspace::span(3, [Vector::from_ints(&[1, 0, 0])]));
    }
}
