//! Symmetric bilinear forms and alternating multilinear forms.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{kernel, LinalgError, Mat, Vector};
use crate::scalar::{ExactScalar, Sign};

/// Inertia of a symmetric form. `neg` comes first: the Witt form on
/// seven dimensions has signature `(4, 3, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub neg: usize,
    pub pos: usize,
    pub null: usize,
}

impl Signature {
    pub fn new(neg: usize, pos: usize, null: usize) -> Self {
        Signature { neg, pos, null }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.neg, self.pos, self.null)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricForm {
    gram: Mat,
}

impl SymmetricForm {
    pub fn new(gram: Mat) -> Result<Self, LinalgError> {
        if !gram.is_square() {
            return Err(LinalgError::Dimension("gram matrix must be square".into()));
        }
        if gram != gram.transpose() {
            return Err(LinalgError::NotSymmetric);
        }
        Ok(SymmetricForm { gram })
    }

    /// `2σ¹σ⁵ + 2σ²σ⁶ + 2σ³σ⁷ − (σ⁴)²` on seven dimensions.
    pub fn witt() -> Self {
        let mut g = Mat::zeros(7, 7);
        for i in 0..3 {
            g[(i, i + 4)] = ExactScalar::one();
            g[(i + 4, i)] = ExactScalar::one();
        }
        g[(3, 3)] = ExactScalar::from_int(-1);
        SymmetricForm { gram: g }
    }

    /// `2 Σ dx_i dx_{i+4}` on eight dimensions.
    pub fn split_hyperbolic(n: usize) -> Self {
        let mut g = Mat::zeros(2 * n, 2 * n);
        for i in 0..n {
            g[(i, i + n)] = ExactScalar::one();
            g[(i + n, i)] = ExactScalar::one();
        }
        SymmetricForm { gram: g }
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn eval(&self, u: &Vector, v: &Vector) -> ExactScalar {
        u.dot(&self.gram.mul_vec(v))
    }

    pub fn entry(&self, i: usize, j: usize) -> &ExactScalar {
        &self.gram[(i, j)]
    }

    /// Radical `{v : ⟨v, ·⟩ = 0}`.
    pub fn radical(&self) -> Vec<Vector> {
        kernel(&self.gram)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().is_empty()
    }

    /// Gram matrix of the restriction to `span(basis)`, in that basis.
    pub fn restrict(&self, basis: &[Vector]) -> SymmetricForm {
        let n = basis.len();
        let gv: Vec<Vector> = basis.iter().map(|b| self.gram.mul_vec(b)).collect();
        SymmetricForm { gram: Mat::from_fn(n, n, |i, j| basis[i].dot(&gv[j])) }
    }

    /// `Sᵀ·G·S`
    pub fn congruent(&self, s: &Mat) -> SymmetricForm {
        SymmetricForm { gram: &(&s.transpose() * &self.gram) * s }
    }

    /// The vector `v` with `⟨v, ·⟩ = ξ`, for nondegenerate forms.
    pub fn raise(&self, covector: &Vector) -> Option<Vector> {
        super::solve(&self.gram, covector).ok()?.unique()
    }

    /// `⟨v, ·⟩` as a covector.
    pub fn lower(&self, v: &Vector) -> Vector {
        self.gram.mul_vec(v)
    }

    /// Whether `a` is skew: `⟨a u, v⟩ + ⟨u, a v⟩ = 0`.
    pub fn is_skew(&self, a: &Mat) -> bool {
        let ga = &self.gram * a;
        (&ga + &ga.transpose()).is_zero()
    }

    /// Counts by symmetric Gaussian elimination. When no diagonal pivot is
    /// left, a hyperbolic pair `e_i, e_j` is replaced by `e_i + e_j`.
    pub fn signature(&self) -> Signature {
        let mut a = self.gram.clone();
        let mut n = a.rows();
        let mut sig = Signature::new(0, 0, 0);
        while n > 0 {
            let pivot = (0..n).find(|&i| !a[(i, i)].is_zero()).or_else(|| {
                let (i, j) = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[(i, j)].is_zero())?;
                // Row and column operation e_i += e_j.
                for k in 0..n {
                    let x = a[(j, k)].clone();
                    a[(i, k)] += &x;
                }
                for k in 0..n {
                    let x = a[(k, j)].clone();
                    a[(k, i)] += &x;
                }
                Some(i)
            });
            let Some(p) = pivot else {
                sig.null += n;
                break;
            };
            let d = a[(p, p)].clone();
            match d.sign() {
                Sign::Negative => sig.neg += 1,
                Sign::Positive => sig.pos += 1,
                Sign::Zero => unreachable!("pivot is nonzero"),
            }
            let inv = d.inv().expect("nonzero pivot");
            let rest: Vec<usize> = (0..n).filter(|&i| i != p).collect();
            a = Mat::from_fn(n - 1, n - 1, |i, j| {
                let (r, c) = (rest[i], rest[j]);
                let corr = &(&a[(r, p)] * &a[(p, c)]) * &inv;
                &a[(r, c)] - &corr
            });
            n -= 1;
        }
        sig
    }
}

/// Alternating `k`-form on `K^dim`, stored by strictly increasing index
/// tuples. Evaluation uses the determinant convention
/// `(σ^a∧σ^b∧σ^c)(x,y,z) = det[σ^i(arg_j)]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AltForm {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, ExactScalar>,
}

/// Sort `idx` in place and return the permutation sign, or `None` on a repeat.
fn sort_with_sign(idx: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 0..idx.len() {
        for j in 0..idx.len() - 1 - i {
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

fn det_small(m: &[Vec<ExactScalar>]) -> ExactScalar {
    match m.len() {
        0 => ExactScalar::one(),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        n => Mat::from_rows(m.to_vec()).map(|a| a.determinant()).unwrap_or_else(|_| {
            unreachable!("square {n}x{n} block")
        }),
    }
}

impl AltForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        AltForm { dim, degree, coeffs: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero coefficients keyed by increasing index tuples.
    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &ExactScalar)> {
        self.coeffs.iter().map(|(k, v)| (k.as_slice(), v))
    }

    fn check(&self, idx: &[usize]) -> Result<(), LinalgError> {
        if idx.len() != self.degree || idx.iter().any(|&i| i >= self.dim) {
            return Err(LinalgError::BadIndex(idx.to_vec()));
        }
        Ok(())
    }

    /// Coefficient of `σ^{i₁}∧…∧σ^{i_k}` in any index order.
    pub fn coeff(&self, idx: &[usize]) -> ExactScalar {
        let mut s = idx.to_vec();
        match sort_with_sign(&mut s) {
            Some(sign) => self
                .coeffs
                .get(&s)
                .map_or_else(ExactScalar::zero, |c| c * &ExactScalar::from_int(sign)),
            None => ExactScalar::zero(),
        }
    }

    /// Set the coefficient of `σ^{i₁}∧…∧σ^{i_k}`; indices may come in any order.
    pub fn set(&mut self, idx: &[usize], value: ExactScalar) -> Result<(), LinalgError> {
        self.check(idx)?;
        let mut s = idx.to_vec();
        let sign = sort_with_sign(&mut s).ok_or_else(|| LinalgError::BadIndex(idx.to_vec()))?;
        let v = &value * &ExactScalar::from_int(sign);
        if v.is_zero() {
            self.coeffs.remove(&s);
        } else {
            self.coeffs.insert(s, v);
        }
        Ok(())
    }

    /// Add `value·σ^{i₁}∧…∧σ^{i_k}`.
    pub fn add_term(&mut self, idx: &[usize], value: &ExactScalar) -> Result<(), LinalgError> {
        let cur = self.coeff(idx);
        self.set(idx, &cur + value)
    }

    pub fn with_terms(
        dim: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, ExactScalar)>,
    ) -> Result<Self, LinalgError> {
        let mut f = AltForm::zero(dim, degree);
        for (idx, c) in terms {
            f.add_term(&idx, &c)?;
        }
        Ok(f)
    }

    /// Value on basis vectors `e_{i₁}, …, e_{i_k}`.
    pub fn eval_basis(&self, idx: &[usize]) -> ExactScalar {
        self.coeff(idx)
    }

    pub fn eval(&self, args: &[Vector]) -> ExactScalar {
        assert_eq!(args.len(), self.degree, "wrong number of arguments");
        let mut total = ExactScalar::zero();
        for (idx, c) in &self.coeffs {
            let m: Vec<Vec<ExactScalar>> =
                idx.iter().map(|&i| args.iter().map(|a| a[i].clone()).collect()).collect();
            let d = det_small(&m);
            if !d.is_zero() {
                total += &(c * &d);
            }
        }
        total
    }

    /// The form with coefficients `f(idx)` on every increasing tuple.
    pub fn from_fn(dim: usize, degree: usize, mut f: impl FnMut(&[usize]) -> ExactScalar) -> Self {
        let mut out = AltForm::zero(dim, degree);
        for idx in increasing_tuples(dim, degree) {
            let v = f(&idx);
            if !v.is_zero() {
                out.coeffs.insert(idx, v);
            }
        }
        out
    }

    /// `(m*ω)(x, …) = ω(m x, …)`, where `m` maps `K^n → K^dim`.
    pub fn pullback(&self, m: &Mat) -> AltForm {
        assert_eq!(m.rows(), self.dim);
        let cols = m.columns();
        AltForm::from_fn(m.cols(), self.degree, |idx| {
            let args: Vec<Vector> = idx.iter().map(|&i| cols[i].clone()).collect();
            self.eval(&args)
        })
    }

    /// `Σ_slots ω(…, a·, …)`, the infinitesimal action of `−a` on ω.
    pub fn derivation(&self, a: &Mat) -> AltForm {
        assert_eq!((a.rows(), a.cols()), (self.dim, self.dim));
        let cols = a.columns();
        AltForm::from_fn(self.dim, self.degree, |idx| {
            let mut total = ExactScalar::zero();
            for slot in 0..idx.len() {
                let args: Vec<Vector> = idx
                    .iter()
                    .enumerate()
                    .map(|(s, &i)| if s == slot { cols[i].clone() } else { Vector::unit(self.dim, i) })
                    .collect();
                total += &self.eval(&args);
            }
            total
        })
    }

    pub fn scale(&self, c: &ExactScalar) -> AltForm {
        let mut out = AltForm::zero(self.dim, self.degree);
        if !c.is_zero() {
            for (k, v) in &self.coeffs {
                out.coeffs.insert(k.clone(), v * c);
            }
        }
        out
    }

    pub fn add(&self, other: &AltForm) -> AltForm {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree));
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(k, v).expect("indices already validated");
        }
        out
    }

    pub fn sub(&self, other: &AltForm) -> AltForm {
        self.add(&other.scale(&ExactScalar::from_int(-1)))
    }

    /// Keys `"i,j,k"` (0-based, increasing) to coefficients.
    pub fn to_key_map(&self) -> BTreeMap<String, ExactScalar> {
        self.coeffs
            .iter()
            .map(|(k, v)| (k.iter().map(usize::to_string).collect::<Vec<_>>().join(","), v.clone()))
            .collect()
    }

    pub fn from_key_map(
        dim: usize,
        degree: usize,
        map: &BTreeMap<String, ExactScalar>,
    ) -> Result<Self, LinalgError> {
        let mut out = AltForm::zero(dim, degree);
        for (key, v) in map {
            let idx: Vec<usize> = key
                .split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| LinalgError::Dimension(format!("bad form key {key:?}")))?;
            out.add_term(&idx, v)?;
        }
        Ok(out)
    }
}

/// All strictly increasing `k`-tuples from `0..n`.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl fmt::Debug for AltForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AltForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, v)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let idx: Vec<String> = k.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({v})σ^{}", idx.join(""))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct AltFormRepr {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<String, ExactScalar>,
}

impl Serialize for AltForm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        AltFormRepr { dim: self.dim, degree: self.degree, coeffs: self.to_key_map() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AltForm {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let r = AltFormRepr::deserialize(deserializer)?;
        AltForm::from_key_map(r.dim, r.degree, &r.coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    #[test]
    fn witt_signature() {
        assert_eq!(SymmetricForm::witt().signature(), Signature::new(4, 3, 0));
    }

    #[test]
    fn identity_signature() {
        let f = SymmetricForm::new(Mat::identity(7)).unwrap();
        assert_eq!(f.signature(), Signature::new(0, 7, 0));
    }

    #[test]
    fn spinor_form_signature() {
        assert_eq!(SymmetricForm::split_hyperbolic(4).signature(), Signature::new(4, 4, 0));
    }

    #[test]
    fn degenerate_signature() {
        let f = SymmetricForm::new(Mat::from_int_rows(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, -2]])).unwrap();
        assert_eq!(f.signature(), Signature::new(1, 1, 1));
        assert_eq!(f.radical().len(), 1);
    }

    #[test]
    fn irrational_signature() {
        let r2 = ExactScalar::sqrt2();
        // [[1, √2], [√2, 1]] has determinant −1.
        let g = Mat::from_rows(vec![vec![s(1), r2.clone()], vec![r2, s(1)]]).unwrap();
        assert_eq!(SymmetricForm::new(g).unwrap().signature(), Signature::new(1, 1, 0));
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(SymmetricForm::new(Mat::from_int_rows(&[&[0, 1], &[0, 0]])).is_err());
    }

    #[test]
    fn wedge_evaluation_is_determinant() {
        let mut w = AltForm::zero(4, 2);
        w.set(&[0, 2], s(1)).unwrap();
        let e = |i| Vector::unit(4, i);
        assert_eq!(w.eval(&[e(0), e(2)]), s(1));
        assert_eq!(w.eval(&[e(2), e(0)]), s(-1));
        assert_eq!(w.coeff(&[2, 0]), s(-1));
        assert_eq!(w.eval(&[e(0), e(1)]), s(0));
    }

    #[test]
    fn set_with_unsorted_indices() {
        let mut w = AltForm::zero(7, 3);
        w.set(&[3, 0, 4], s(-1)).unwrap();
        assert_eq!(w.coeff(&[0, 3, 4]), s(1));
        assert!(w.set(&[1, 1, 2], s(1)).is_err());
        assert!(w.set(&[1, 2, 9], s(1)).is_err());
    }

    #[test]
    fn pullback_by_swap() {
        let mut w = AltForm::zero(3, 3);
        w.set(&[0, 1, 2], s(1)).unwrap();
        let p = Mat::from_int_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(w.pullback(&p).coeff(&[0, 1, 2]), s(-1));
        // det(diag(2,1,1))·σ¹²³
        let d = Mat::diagonal(&[s(2), s(1), s(1)]);
        assert_eq!(w.pullback(&d).coeff(&[0, 1, 2]), s(2));
    }

    #[test]
    fn derivation_by_trace() {
        let mut w = AltForm::zero(3, 3);
        w.set(&[0, 1, 2], s(1)).unwrap();
        let a = Mat::from_int_rows(&[&[1, 2, 0], &[0, 3, 5], &[7, 0, -1]]);
        assert_eq!(w.derivation(&a).coeff(&[0, 1, 2]), a.trace());
    }

    #[test]
    fn key_map_round_trip() {
        let mut w = AltForm::zero(7, 3);
        w.set(&[0, 1, 6], ExactScalar::sqrt2()).unwrap();
        w.set(&[0, 3, 4], s(1)).unwrap();
        let json = serde_json::to_string(&w).unwrap();
        assert!(json.contains("\"0,1,6\""));
        let back: AltForm = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
    }
}
