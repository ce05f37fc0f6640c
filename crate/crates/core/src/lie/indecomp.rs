//! Deciding whether a metric representation splits orthogonally.
//!
//! Tier 1 computes the commutant `C` of the representation and the radical
//! of its trace form; when `C/rad C` is one-dimensional, `C` is local and has
//! no idempotents besides 0 and 1. Tier 2 looks for a self-adjoint idempotent
//! among Fitting projectors of a few elements of `C`.

use super::LieError;
use crate::linalg::{kernel, rank, Mat, Subspace, SymmetricForm, Vector};
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Indecomposability {
    Indecomposable { commutant: Vec<Mat>, quotient_dim: usize },
    Decomposable { projector: Mat },
    Inconclusive { commutant_dim: usize, quotient_dim: usize },
}

impl Indecomposability {
    pub fn is_indecomposable(&self) -> bool {
        matches!(self, Indecomposability::Indecomposable { .. })
    }
}

/// Basis of `{M : M h = h M for every h}`.
pub fn commutant(mats: &[Mat], n: usize) -> Vec<Mat> {
    let mut eqs = Mat::zeros(mats.len() * n * n, n * n);
    for (t, h) in mats.iter().enumerate() {
        // (M h − h M)[p][q] = Σ_r M[p][r] h[r][q] − h[p][r] M[r][q]
        for p in 0..n {
            for q in 0..n {
                let row = t * n * n + p * n + q;
                for r in 0..n {
                    if !h[(r, q)].is_zero() {
                        eqs[(row, p * n + r)] += &h[(r, q)];
                    }
                    if !h[(p, r)].is_zero() {
                        eqs[(row, r * n + q)] -= &h[(p, r)];
                    }
                }
            }
        }
    }
    kernel(&eqs).iter().map(|v| Mat::unflatten(n, n, v)).collect()
}

/// Metric adjoint `G⁻¹ Mᵀ G`.
fn adjoint(m: &Mat, g: &Mat, ginv: &Mat) -> Mat {
    &(ginv * &m.transpose()) * g
}

pub fn representation_indecomposability(
    mats: &[Mat],
    metric: &SymmetricForm,
) -> Result<Indecomposability, LieError> {
    let n = metric.dim();
    let g = metric.gram();
    let ginv = g.inverse().ok_or(LieError::DegenerateMetric)?;
    let c = commutant(mats, n);
    let trace_form = Mat::from_fn(c.len(), c.len(), |i, j| (&c[i] * &c[j]).trace());
    let quotient_dim = rank(&trace_form);
    if quotient_dim == 1 {
        return Ok(Indecomposability::Indecomposable { commutant: c, quotient_dim });
    }
    if n == 0 {
        return Ok(Indecomposability::Inconclusive { commutant_dim: 0, quotient_dim });
    }

    let half = ExactScalar::from_ratio(1, 2);
    let mut candidates: Vec<Mat> = Vec::new();
    for x in &c {
        candidates.push(x.clone());
        candidates.push((x + &adjoint(x, g, &ginv)).scale(&half));
    }
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            let s = &c[i] + &c[j];
            candidates.push((&s + &adjoint(&s, g, &ginv)).scale(&half));
        }
    }
    for x in &candidates {
        for lambda in shifts(x) {
            if let Some(p) = fitting_projector(x, &lambda) {
                let commutes = mats.iter().all(|h| (&p * h) == (h * &p));
                let self_adjoint = adjoint(&p, g, &ginv) == p;
                if commutes && self_adjoint && &p * &p == p {
                    return Ok(Indecomposability::Decomposable { projector: p });
                }
            }
        }
    }
    Ok(Indecomposability::Inconclusive { commutant_dim: c.len(), quotient_dim })
}

fn shifts(x: &Mat) -> Vec<ExactScalar> {
    let mut out: Vec<ExactScalar> = [0, 1, -1, 2, -2].iter().map(|&k| ExactScalar::from_int(k)).collect();
    out.push(ExactScalar::from_ratio(1, 2));
    out.push(ExactScalar::from_ratio(-1, 2));
    for i in 0..x.rows() {
        out.push(x[(i, i)].clone());
    }
    out.sort();
    out.dedup();
    out
}

/// Projector onto `ker (x−λ)ⁿ` along `im (x−λ)ⁿ`, when both are nonzero.
fn fitting_projector(x: &Mat, lambda: &ExactScalar) -> Option<Mat> {
    let n = x.rows();
    let shifted = x - &Mat::identity(n).scale(lambda);
    let mut pow = Mat::identity(n);
    for _ in 0..n {
        pow = &pow * &shifted;
    }
    let ker = kernel(&pow);
    if ker.is_empty() || ker.len() == n {
        return None;
    }
    let img = Subspace::span(n, pow.columns());
    let basis: Vec<Vector> = ker.iter().cloned().chain(img.basis().iter().cloned()).collect();
    let b = Mat::from_columns(n, &basis);
    let binv = b.inverse()?;
    let d = Mat::diagonal(
        &(0..n).map(|i| if i < ker.len() { ExactScalar::one() } else { ExactScalar::zero() }).collect::<Vec<_>>(),
    );
    Some(&(&b * &d) * &binv)
}
