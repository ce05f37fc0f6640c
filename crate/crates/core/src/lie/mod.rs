//! Lie algebras given by structure constants.

mod indecomp;
mod triple;

pub use indecomp::{representation_indecomposability, Indecomposability};
pub use triple::{Holonomy, MetricInvolutiveLie, SymmetricTripleCandidate};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{kernel, Mat, Subspace, SymmetricForm, Vector};
use crate::report::Report;
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("bracket index ({0}, {1}) is out of range or diagonal")]
    BadPair(usize, usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("basis change is singular")]
    Singular,
    #[error("metric is degenerate")]
    DegenerateMetric,
}

/// Structure constants `[e_i, e_j] = Σ_k c_ij^k e_k`, stored for every
/// ordered pair so that antisymmetry holds by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    table: Vec<Vec<Vector>>,
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra::with_labels((1..=dim).map(|i| format!("x{i}")).collect())
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        let dim = labels.len();
        LieAlgebra { dim, labels, table: vec![vec![Vector::zeros(dim); dim]; dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `[e_i, e_j] = v` (and `[e_j, e_i] = −v`).
    pub fn set_bracket(&mut self, i: usize, j: usize, v: Vector) -> Result<(), LieError> {
        if i == j || i >= self.dim || j >= self.dim {
            return Err(LieError::BadPair(i, j));
        }
        if v.len() != self.dim {
            return Err(LieError::Dimension(format!("bracket vector of length {}", v.len())));
        }
        self.table[j][i] = -&v;
        self.table[i][j] = v;
        Ok(())
    }

    /// `[e_i, e_j] += c·e_k`
    pub fn add_bracket_term(&mut self, i: usize, j: usize, k: usize, c: &ExactScalar) -> Result<(), LieError> {
        if i == j || i >= self.dim || j >= self.dim || k >= self.dim {
            return Err(LieError::BadPair(i, j));
        }
        self.table[i][j][k] += c;
        self.table[j][i][k] -= c;
        Ok(())
    }

    /// `[e_i, e_j]`
    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zeros(self.dim);
        for (i, a) in x.support() {
            for (j, b) in y.support() {
                out.axpy(&(a * b), &self.table[i][j]);
            }
        }
        out
    }

    /// `ad(e_i)`, with `ad(e_i) e_j = [e_i, e_j]` in column `j`.
    pub fn ad(&self, i: usize) -> Mat {
        Mat::from_columns(self.dim, &self.table[i])
    }

    pub fn ad_of(&self, x: &Vector) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim);
        for (i, a) in x.support() {
            m = &m + &self.ad(i).scale(a);
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().flatten().all(Vector::is_zero)
    }

    /// Basis triples `i < j < k` with a nonzero Jacobiator, and its value.
    pub fn jacobi_failures(&self) -> Vec<((usize, usize, usize), Vector)> {
        let n = self.dim;
        let mut out = Vec::new();
        let e = |i| Vector::unit(n, i);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut s = self.bracket(&self.table[i][j], &e(k));
                    s = &s + &self.bracket(&self.table[j][k], &e(i));
                    s = &s + &self.bracket(&self.table[k][i], &e(j));
                    if !s.is_zero() {
                        out.push(((i, j, k), s));
                    }
                }
            }
        }
        out
    }

    pub fn jacobi_report(&self) -> Report {
        let mut r = Report::new();
        let n = self.dim;
        let failures = self.jacobi_failures();
        r.check_all(
            format!("Jacobi ({} triples)", n * n.saturating_sub(1) * n.saturating_sub(2) / 6),
            failures
                .iter()
                .map(|((i, j, k), v)| {
                    format!("({}, {}, {}) -> {v}", self.labels[*i], self.labels[*j], self.labels[*k])
                })
                .collect(),
        );
        r
    }

    pub fn killing_form(&self) -> SymmetricForm {
        let ads: Vec<Mat> = (0..self.dim).map(|i| self.ad(i)).collect();
        let g = Mat::from_fn(self.dim, self.dim, |i, j| (&ads[i] * &ads[j]).trace());
        SymmetricForm::new(g).expect("trace form is symmetric")
    }

    /// `span{[x, y] : x ∈ a, y ∈ b}`
    pub fn bracket_span(&self, a: &[Vector], b: &[Vector]) -> Subspace {
        Subspace::span(self.dim, a.iter().flat_map(|x| b.iter().map(move |y| self.bracket(x, y))))
    }

    /// Dimensions of `𝔤 ⊇ [𝔤,𝔤] ⊇ [𝔤,[𝔤,𝔤]] ⊇ …` until the chain stabilizes.
    pub fn lower_central_series(&self) -> Vec<usize> {
        let all: Vec<Vector> = (0..self.dim).map(|i| Vector::unit(self.dim, i)).collect();
        let mut cur = Subspace::full(self.dim);
        let mut dims = vec![cur.dim()];
        loop {
            let next = self.bracket_span(&all, cur.basis());
            if next.dim() == cur.dim() {
                return dims;
            }
            dims.push(next.dim());
            if next.is_zero() {
                return dims;
            }
            cur = next;
        }
    }

    /// Nilpotency class, if nilpotent. The zero algebra has class 0.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let lcs = self.lower_central_series();
        (*lcs.last().unwrap() == 0).then(|| lcs.len() - 1)
    }

    /// Whether `m[x, y] = [m x, m y]` on all basis pairs.
    pub fn is_automorphism(&self, m: &Mat) -> bool {
        self.homomorphism_failures(m, self).is_empty()
    }

    /// Basis pairs where `m: self → target` fails `m[x,y] = [m x, m y]`.
    pub fn homomorphism_failures(&self, m: &Mat, target: &LieAlgebra) -> Vec<(usize, usize)> {
        let cols = m.columns();
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let lhs = m.mul_vec(&self.table[i][j]);
                let rhs = target.bracket(&cols[i], &cols[j]);
                if lhs != rhs {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The same algebra in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Mat, labels: Vec<String>) -> Result<LieAlgebra, LieError> {
        let pinv = p.inverse().ok_or(LieError::Singular)?;
        let cols = p.columns();
        let mut out = LieAlgebra::with_labels(labels);
        if out.dim != self.dim {
            return Err(LieError::Dimension("label count".into()));
        }
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                out.set_bracket(a, b, pinv.mul_vec(&self.bracket(&cols[a], &cols[b])))?;
            }
        }
        Ok(out)
    }

    /// Reorder: the new `a`-th basis vector is the old `perm[a]`-th.
    pub fn permute(&self, perm: &[usize]) -> Result<LieAlgebra, LieError> {
        let p = permutation_matrix(perm);
        let labels = perm.iter().map(|&i| self.labels[i].clone()).collect();
        self.change_basis(&p, labels)
    }

    /// `self ⊕ other`, with the basis of `self` first.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim + other.dim;
        let labels = self
            .labels
            .iter()
            .map(|l| format!("{l}'"))
            .chain(other.labels.iter().map(|l| format!("{l}''")))
            .collect();
        let mut out = LieAlgebra::with_labels(labels);
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.table[i][j].support() {
                    out.table[i][j][k] = c.clone();
                }
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                for (k, c) in other.table[i][j].support() {
                    out.table[self.dim + i][self.dim + j][self.dim + k] = c.clone();
                }
            }
        }
        debug_assert_eq!(out.dim, n);
        out
    }

    /// Center, as a subspace.
    pub fn center(&self) -> Subspace {
        let n = self.dim;
        // x is central iff ad(e_j) x = 0 for all j.
        let rows: Vec<Mat> = (0..n).map(|j| self.ad(j)).collect();
        let stacked = Mat::from_fn(n * n, n, |r, c| rows[r / n][(r % n, c)].clone());
        Subspace::span(n, kernel(&stacked))
    }
}

pub fn permutation_matrix(perm: &[usize]) -> Mat {
    let n = perm.len();
    Mat::from_fn(n, n, |i, j| if perm[j] == i { ExactScalar::one() } else { ExactScalar::zero() })
}

#[derive(Serialize, Deserialize)]
struct LieRepr {
    dim: usize,
    labels: Vec<String>,
    brackets: Vec<(usize, usize, Vec<(usize, ExactScalar)>)>,
}

impl Serialize for LieAlgebra {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut brackets = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = &self.table[i][j];
                if !v.is_zero() {
                    brackets.push((i, j, v.support().map(|(k, c)| (k, c.clone())).collect()));
                }
            }
        }
        LieRepr { dim: self.dim, labels: self.labels.clone(), brackets }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LieAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = LieRepr::deserialize(deserializer)?;
        if r.labels.len() != r.dim {
            return Err(D::Error::custom("label count does not match dim"));
        }
        let mut out = LieAlgebra::with_labels(r.labels);
        for (i, j, terms) in r.brackets {
            if i >= j {
                return Err(D::Error::custom(format!("bracket ({i}, {j}) must have i < j")));
            }
            for (k, c) in terms {
                out.add_bracket_term(i, j, k, &c).map_err(D::Error::custom)?;
            }
        }
        Ok(out)
    }
}
