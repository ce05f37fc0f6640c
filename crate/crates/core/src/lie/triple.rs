use super::{permutation_matrix, representation_indecomposability, Indecomposability, LieAlgebra, LieError};
use crate::linalg::{coordinates, kernel, Mat, Signature, Subspace, SymmetricForm, Vector};
use crate::report::Report;
use crate::scalar::ExactScalar;

/// A Lie algebra with an inner product and an involution, not yet known to
/// satisfy any compatibility. `plus` and `minus` are bases of the ±1
/// eigenspaces of θ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricInvolutiveLie {
    pub alg: LieAlgebra,
    pub theta: Mat,
    pub ip: SymmetricForm,
    plus: Vec<Vector>,
    minus: Vec<Vector>,
}

pub type SymmetricTripleCandidate = MetricInvolutiveLie;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Holonomy {
    /// `ad(X)|_{𝔤₋}` in the minus basis, one per plus basis vector.
    pub matrices: Vec<Mat>,
    pub span_dim: usize,
    pub abelian: bool,
    pub bracket_closed: bool,
}

impl MetricInvolutiveLie {
    pub fn new(alg: LieAlgebra, theta: Mat, ip: SymmetricForm) -> Result<Self, LieError> {
        let n = alg.dim();
        if theta.rows() != n || theta.cols() != n || ip.dim() != n {
            return Err(LieError::Dimension(format!("algebra has dimension {n}")));
        }
        let id = Mat::identity(n);
        let plus = kernel(&(&theta - &id));
        let minus = kernel(&(&theta + &id));
        Ok(MetricInvolutiveLie { alg, theta, ip, plus, minus })
    }

    /// Replace the eigenspace bases, e.g. to fix a canonical ordering.
    pub fn with_bases(mut self, plus: Vec<Vector>, minus: Vec<Vector>) -> Result<Self, LieError> {
        let ok = |v: &Vector, sign: i64| self.theta.mul_vec(v) == v.scale(&ExactScalar::from_int(sign));
        if !plus.iter().all(|v| ok(v, 1)) || !minus.iter().all(|v| ok(v, -1)) {
            return Err(LieError::Dimension("basis vector is not a θ-eigenvector".into()));
        }
        let n = self.alg.dim();
        if Subspace::span(n, plus.iter().cloned()).dim() != Subspace::span(n, self.plus.iter().cloned()).dim()
            || Subspace::span(n, minus.iter().cloned()).dim()
                != Subspace::span(n, self.minus.iter().cloned()).dim()
        {
            return Err(LieError::Dimension("bases do not span the eigenspaces".into()));
        }
        self.plus = plus;
        self.minus = minus;
        Ok(self)
    }

    /// Reorder the basis: the new `a`-th basis vector is the old `perm[a]`-th.
    pub fn permute(&self, perm: &[usize]) -> Result<Self, LieError> {
        let p = permutation_matrix(perm);
        let pt = p.transpose();
        Ok(MetricInvolutiveLie {
            alg: self.alg.permute(perm)?,
            theta: &(&pt * &self.theta) * &p,
            ip: self.ip.congruent(&p),
            plus: self.plus.iter().map(|v| pt.mul_vec(v)).collect(),
            minus: self.minus.iter().map(|v| pt.mul_vec(v)).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn plus(&self) -> &[Vector] {
        &self.plus
    }

    pub fn minus(&self) -> &[Vector] {
        &self.minus
    }

    pub fn minus_metric(&self) -> SymmetricForm {
        self.ip.restrict(&self.minus)
    }

    pub fn minus_signature(&self) -> Signature {
        self.minus_metric().signature()
    }

    /// θ involutive, automorphism and isometry; eigenspaces orthogonal and
    /// spanning; metric nondegenerate and ad-invariant; `[𝔤₋,𝔤₋] = 𝔤₊`.
    pub fn metric_invariance(&self) -> Report {
        let n = self.dim();
        let mut r = Report::new();
        let id = Mat::identity(n);
        let t2 = &self.theta * &self.theta;
        r.check("theta involutive", t2 == id, || "θ² != Id".into());
        r.check("eigenspaces span", self.plus.len() + self.minus.len() == n, || {
            format!("dim 𝔤₊ + dim 𝔤₋ = {} + {}", self.plus.len(), self.minus.len())
        });
        let fails = self.alg.homomorphism_failures(&self.theta, &self.alg);
        r.check_all(
            "theta automorphism",
            fails.iter().map(|(i, j)| format!("({}, {})", self.alg.labels()[*i], self.alg.labels()[*j])).collect(),
        );
        let iso = self.ip.congruent(&self.theta) == self.ip;
        r.check("theta isometry", iso, || "θᵀGθ != G".into());
        let mut bad = Vec::new();
        for (a, p) in self.plus.iter().enumerate() {
            for (b, m) in self.minus.iter().enumerate() {
                let v = self.ip.eval(p, m);
                if !v.is_zero() {
                    bad.push(format!("<plus{a}, minus{b}> = {v}"));
                }
            }
        }
        r.check_all("plus orthogonal to minus", bad);
        let rad = self.ip.radical();
        r.check("metric nondegenerate", rad.is_empty(), || format!("radical dim {}", rad.len()));
        let g = self.ip.gram();
        let mut bad = Vec::new();
        for x in 0..n {
            let ad = self.alg.ad(x);
            let ga = g * &ad;
            let s = &ga + &ga.transpose();
            for y in 0..n {
                for z in y..n {
                    if !s[(y, z)].is_zero() {
                        let l = self.alg.labels();
                        bad.push(format!("<[{0},{1}],{2}> + <{1},[{0},{2}]> = {3}", l[x], l[y], l[z], s[(y, z)]));
                    }
                }
            }
        }
        r.check_all("ad-invariance", bad);
        let br = self.alg.bracket_span(&self.minus, &self.minus);
        let gp = Subspace::span(n, self.plus.iter().cloned());
        r.check("[g-,g-] = g+", br == gp, || {
            format!("dim [g-,g-] = {}, dim g+ = {}, contained: {}", br.dim(), gp.dim(), gp.contains_subspace(&br))
        });
        r
    }

    /// Coordinates of `v ∈ 𝔤₋` in the minus basis.
    pub fn minus_coordinates(&self, v: &Vector) -> Option<Vector> {
        if self.minus.is_empty() {
            return v.is_zero().then(|| Vector::zeros(0));
        }
        coordinates(&self.minus, v)
    }

    /// `None` if some `ad(X)`, `X ∈ 𝔤₊`, does not preserve `𝔤₋`.
    pub fn holonomy(&self) -> Option<Holonomy> {
        let m = self.minus.len();
        let mut matrices = Vec::with_capacity(self.plus.len());
        for x in &self.plus {
            let cols: Option<Vec<Vector>> =
                self.minus.iter().map(|y| self.minus_coordinates(&self.alg.bracket(x, y))).collect();
            matrices.push(Mat::from_columns(m, &cols?));
        }
        let span = Subspace::span(m * m, matrices.iter().map(Mat::flatten));
        let mut abelian = true;
        let mut bracket_closed = true;
        for (i, a) in matrices.iter().enumerate() {
            for b in &matrices[i + 1..] {
                let c = a.commutator(b);
                if !c.is_zero() {
                    abelian = false;
                }
                if !span.contains(&c.flatten()) {
                    bracket_closed = false;
                }
            }
        }
        Some(Holonomy { matrices, span_dim: span.dim(), abelian, bracket_closed })
    }

    pub fn indecomposability(&self) -> Result<Indecomposability, LieError> {
        let hol = self.holonomy().ok_or_else(|| LieError::Dimension("ad(g+) does not preserve g-".into()))?;
        let metric = self.minus_metric();
        if !metric.is_nondegenerate() {
            return Err(LieError::DegenerateMetric);
        }
        representation_indecomposability(&hol.matrices, &metric)
    }

    /// Orthogonal direct sum, with the basis of `self` first.
    pub fn direct_sum(&self, other: &MetricInvolutiveLie) -> MetricInvolutiveLie {
        let (a, b) = (self.dim(), other.dim());
        let n = a + b;
        let block = |x: &Mat, y: &Mat| {
            Mat::from_fn(n, n, |i, j| match (i < a, j < a) {
                (true, true) => x[(i, j)].clone(),
                (false, false) => y[(i - a, j - a)].clone(),
                _ => ExactScalar::zero(),
            })
        };
        let lift = |v: &Vector, off: usize| {
            let mut out = Vector::zeros(n);
            for (k, c) in v.support() {
                out[off + k] = c.clone();
            }
            out
        };
        let ip = SymmetricForm::new(block(self.ip.gram(), other.ip.gram())).expect("blocks are symmetric");
        MetricInvolutiveLie {
            alg: self.alg.direct_sum(&other.alg),
            theta: block(&self.theta, &other.theta),
            ip,
            plus: self.plus.iter().map(|v| lift(v, 0)).chain(other.plus.iter().map(|v| lift(v, a))).collect(),
            minus: self.minus.iter().map(|v| lift(v, 0)).chain(other.minus.iter().map(|v| lift(v, a))).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::tests::heisenberg;

    fn s(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    /// Lorentzian triple with basis `Z, T, X, Y`: `[T,X] = Y`, `[Y,T] = X`,
    /// `[X,Y] = Z`; θ = +1 on Y only; `⟨Z,T⟩ = ⟨X,X⟩ = ⟨Y,Y⟩ = 1`.
    pub(crate) fn lorentzian() -> MetricInvolutiveLie {
        let mut g = LieAlgebra::with_labels(["Z", "T", "X", "Y"].map(String::from).to_vec());
        g.set_bracket(1, 2, Vector::unit(4, 3)).unwrap();
        g.set_bracket(3, 1, Vector::unit(4, 2)).unwrap();
        g.set_bracket(2, 3, Vector::unit(4, 0)).unwrap();
        let theta = Mat::diagonal(&[s(-1), s(-1), s(-1), s(1)]);
        let ip = SymmetricForm::new(Mat::from_int_rows(&[
            &[0, 1, 0, 0],
            &[1, 0, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ]))
        .unwrap();
        MetricInvolutiveLie::new(g, theta, ip).unwrap()
    }

    #[test]
    fn lorentzian_is_a_symmetric_triple() {
        let t = lorentzian();
        assert!(t.alg.jacobi_failures().is_empty());
        let r = t.metric_invariance();
        assert!(r.all_pass(), "{r}");
        let h = t.holonomy().unwrap();
        assert_eq!(h.span_dim, 1);
        assert!(h.abelian);
    }

    #[test]
    fn perturbed_metric_breaks_invariance() {
        let mut t = lorentzian();
        let mut g = t.ip.gram().clone();
        g[(2, 2)] = s(2);
        t.ip = SymmetricForm::new(g).unwrap();
        assert_eq!(t.metric_invariance().get("ad-invariance").unwrap().verdict, crate::report::Verdict::Fail);
    }

    #[test]
    fn identity_theta_breaks_generation() {
        let t = lorentzian();
        let t = MetricInvolutiveLie::new(t.alg, Mat::identity(4), t.ip).unwrap();
        let r = t.metric_invariance();
        assert_eq!(r.get("[g-,g-] = g+").unwrap().verdict, crate::report::Verdict::Fail);
    }

    #[test]
    fn heisenberg_with_wrong_theta_is_not_an_automorphism() {
        let t = MetricInvolutiveLie::new(
            heisenberg(),
            Mat::diagonal(&[s(-1), s(-1), s(-1)]),
            SymmetricForm::new(Mat::identity(3)).unwrap(),
        )
        .unwrap();
        let r = t.metric_invariance();
        assert_eq!(r.get("theta automorphism").unwrap().verdict, crate::report::Verdict::Fail);
    }

    #[test]
    fn lorentzian_indecomposable_and_sum_decomposable() {
        let t = lorentzian();
        assert!(matches!(t.indecomposability().unwrap(), Indecomposability::Indecomposable { .. }));
        let d = t.direct_sum(&t);
        assert!(d.metric_invariance().all_pass());
        match d.indecomposability().unwrap() {
            Indecomposability::Decomposable { projector } => {
                assert_eq!(&projector * &projector, projector);
            }
            other => panic!("expected decomposable, got {other:?}"),
        }
    }

    #[test]
    fn flat_plane_is_decomposable() {
        let t = MetricInvolutiveLie::new(
            LieAlgebra::abelian(2),
            Mat::diagonal(&[s(-1), s(-1)]),
            SymmetricForm::new(Mat::diagonal(&[s(1), s(-1)])).unwrap(),
        )
        .unwrap();
        assert!(matches!(t.indecomposability().unwrap(), Indecomposability::Decomposable { .. }));
    }
}
