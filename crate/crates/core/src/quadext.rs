//! Quadratic extensions `𝔡 = 𝔩* ⊕ 𝔞 ⊕ 𝔩` of a Lie algebra with involution by
//! an orthogonal module, B-structures on `𝔩`, and the cochain calculus that
//! relates two extensions built from the same data.
//!
//! Coordinates on `𝔡` follow [`Layout`]: first the dual basis `Z^k` of `𝔩*`,
//! then the basis of `𝔞`, then the basis of `𝔩`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::g2::{G2Error, GStructure};
use crate::lie::{LieAlgebra, LieError, MetricInvolutiveLie};
use crate::linalg::{coordinates, kernel, AltForm, LinalgError, Mat, Subspace, SymmetricForm, Vector};
use crate::report::Report;
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadExtError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("B-structure: {0}")]
    BStructure(String),
    #[error("S0 is not in the group N: {0}")]
    NotInN(String),
    #[error("the transformation calculus is implemented for trivial ρ only")]
    NontrivialRho,
    #[error("matrix is not of equivalence-map shape: {0}")]
    NotEquivalenceShape(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    G2(#[from] G2Error),
}

fn eigenbasis(theta: &Mat, sign: i64) -> Vec<Vector> {
    let n = theta.rows();
    kernel(&(theta - &Mat::identity(n).scale(&ExactScalar::from_int(sign))))
}

fn half() -> ExactScalar {
    ExactScalar::from_ratio(1, 2)
}

fn dual_label(label: &str) -> String {
    match label.strip_prefix('L') {
        Some(rest) if !rest.is_empty() => format!("Z{rest}"),
        _ => format!("Z_{label}"),
    }
}

fn vector_name(labels: &[String], v: &Vector, fallback: String) -> String {
    let support: Vec<_> = v.support().collect();
    match support.as_slice() {
        [(i, c)] if c.is_one() => labels[*i].clone(),
        _ => fallback,
    }
}

/// A Lie algebra with involution together with `b_𝔪: 𝔪 × 𝔪 → 𝔩₋` on a
/// plane `𝔪 ⊂ 𝔩₋`. Since `b_𝔪` is antisymmetric on a plane it is fixed by
/// `b_𝔪(m[0], m[1])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieWithBStructure {
    pub l: LieAlgebra,
    pub theta: Mat,
    m: [Vector; 2],
    b12: Vector,
}

impl LieWithBStructure {
    pub fn new(l: LieAlgebra, theta: Mat, m: [Vector; 2], b12: Vector) -> Result<Self, QuadExtError> {
        let n = l.dim();
        if theta.rows() != n || theta.cols() != n || m.iter().chain([&b12]).any(|v| v.len() != n) {
            return Err(QuadExtError::Dimension(format!("𝔩 has dimension {n}")));
        }
        if Subspace::span(n, m.iter().cloned()).dim() != 2 {
            return Err(QuadExtError::BStructure("m is not a plane".into()));
        }
        Ok(LieWithBStructure { l, theta, m, b12 })
    }

    fn catalog_shape(l: LieAlgebra) -> Self {
        let theta = Mat::diagonal(&[-1, -1, -1, 1].map(ExactScalar::from_int));
        let b12 = Vector::unit(4, 2).scale(&ExactScalar::sqrt2());
        Self::new(l, theta, [Vector::unit(4, 0), Vector::unit(4, 1)], b12).expect("valid shape")
    }

    fn basis_l() -> LieAlgebra {
        LieAlgebra::with_labels(["L1", "L2", "L3", "B"].map(String::from).to_vec())
    }

    /// `𝔤_{4,1}` on `L1, L2, L3, B` with `[L2,L3] = B`, `[B,L3] = L1`;
    /// `θ` fixes `B`, `𝔪 = span{L1, L2}`, `b_𝔪(L1,L2) = √2 L3`.
    pub fn g41() -> Self {
        let mut l = Self::basis_l();
        l.set_bracket(1, 2, Vector::unit(4, 3)).expect("in range");
        l.set_bracket(3, 2, Vector::unit(4, 0)).expect("in range");
        Self::catalog_shape(l)
    }

    /// `ℝ ⊕ 𝔥(1)` on `L1, L2, L3, B` with `[L2,L3] = B`, otherwise as [`Self::g41`].
    pub fn r_plus_heisenberg() -> Self {
        let mut l = Self::basis_l();
        l.set_bracket(1, 2, Vector::unit(4, 3)).expect("in range");
        Self::catalog_shape(l)
    }

    pub fn dim(&self) -> usize {
        self.l.dim()
    }

    pub fn m(&self) -> &[Vector; 2] {
        &self.m
    }

    pub fn b12(&self) -> &Vector {
        &self.b12
    }

    pub fn plus(&self) -> Vec<Vector> {
        eigenbasis(&self.theta, 1)
    }

    pub fn minus(&self) -> Vec<Vector> {
        eigenbasis(&self.theta, -1)
    }

    /// `b_𝔪(x, y)`, or `None` unless both arguments lie in `𝔪`.
    pub fn b_m(&self, x: &Vector, y: &Vector) -> Option<Vector> {
        let a = coordinates(&self.m, x)?;
        let b = coordinates(&self.m, y)?;
        Some(self.b12.scale(&(&(&a[0] * &b[1]) - &(&a[1] * &b[0]))))
    }

    /// `m[0], m[1], b_𝔪(m[0],m[1])`, then a basis of `𝔩₊`; `None` unless
    /// this is a basis of `𝔩`.
    pub fn adapted_basis(&self) -> Option<Vec<Vector>> {
        let n = self.dim();
        let mut basis = vec![self.m[0].clone(), self.m[1].clone(), self.b12.clone()];
        basis.extend(self.plus());
        (basis.len() == n && Subspace::span(n, basis.iter().cloned()).dim() == n).then_some(basis)
    }

    /// Coordinates of `x ∈ 𝔩₋` along `m[0], m[1], b_𝔪(m[0],m[1])`.
    fn minus_split(&self, x: &Vector) -> Option<Vector> {
        coordinates(&[self.m[0].clone(), self.m[1].clone(), self.b12.clone()], x)
    }

    fn is_solvable(&self) -> bool {
        let n = self.dim();
        let mut d: Vec<Vector> = (0..n).map(|i| Vector::unit(n, i)).collect();
        loop {
            let next = self.l.bracket_span(&d, &d);
            if next.dim() == d.len() {
                return next.is_zero();
            }
            d = next.basis().to_vec();
        }
    }

    pub fn report(&self) -> Report {
        let n = self.dim();
        let mut r = Report::new();
        let involutive = &self.theta * &self.theta == Mat::identity(n);
        let auto = self.l.is_automorphism(&self.theta);
        r.check("theta involutive automorphism", involutive && auto, || {
            format!("involutive: {involutive}, automorphism: {auto}")
        });
        let negated = |v: &Vector| self.theta.mul_vec(v) == -v;
        r.check("m in l-", self.m.iter().all(negated), || "θ does not act by −1 on m".into());
        r.check("solvable", self.is_solvable(), || "derived series does not reach 0".into());

        let plus = self.plus();
        let minus = self.minus();
        let msp = Subspace::span(n, self.m.iter().cloned());
        let labels = self.l.labels();
        let pname = |k: usize| vector_name(labels, &plus[k], format!("plus{k}"));

        let mut bad = Vec::new();
        for (k, p) in plus.iter().enumerate() {
            for (i, x) in self.m.iter().enumerate() {
                let v = self.l.bracket(p, x);
                if !msp.contains(&v) {
                    bad.push(format!("[{}, m{}] = {v}", pname(k), i + 1));
                }
            }
        }
        r.check_all("(L1) [l+, m] in m", bad);

        let v = self.l.bracket(&self.m[0], &self.m[1]);
        r.check("(L2) [m, m] = 0", v.is_zero(), || format!("[m1, m2] = {v}"));

        let lm = Subspace::span(n, minus.iter().cloned());
        let complementary = negated(&self.b12) && lm.dim() == 3 && self.minus_split(&self.b12).is_some()
            && Subspace::span(n, [self.m[0].clone(), self.m[1].clone(), self.b12.clone()]).dim() == 3;
        r.check("(L3) n complementary to m in l-", complementary, || {
            format!("b(m1, m2) = {}, dim l- = {}", self.b12, lm.dim())
        });

        let br = self.l.bracket_span(&minus, &minus);
        let lp = Subspace::span(n, plus.iter().cloned());
        r.check("[l-,l-] = l+", br == lp, || format!("dim [l-,l-] = {}, dim l+ = {}", br.dim(), lp.dim()));

        let mut bad = Vec::new();
        for (k, p) in plus.iter().enumerate() {
            for (i, x) in minus.iter().enumerate() {
                let v = self.l.bracket(p, x);
                if !msp.contains(&v) {
                    bad.push(format!("[{}, minus{i}] = {v}", pname(k)));
                }
            }
        }
        r.check_all("[l+, l-] in m", bad);

        let mut bad = Vec::new();
        for (k, p) in plus.iter().enumerate() {
            let u = self.l.bracket(p, &self.m[0]);
            let w = self.l.bracket(p, &self.m[1]);
            match (self.b_m(&u, &self.m[1]), self.b_m(&self.m[0], &w)) {
                (Some(a), Some(b)) => {
                    let s = &a + &b;
                    if !s.is_zero() {
                        bad.push(format!("{}: {s}", pname(k)));
                    }
                }
                _ => bad.push(format!("{}: [l+, m] leaves m", pname(k))),
            }
        }
        r.check_all("ad(l+) traceless on m", bad);
        r
    }
}

/// `𝔞` with inner product, a time-like unit vector `A`, the involution
/// `θ_𝔞 = −1` on `ℝA` and `+1` on `A^⊥`, and a representation of `𝔩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalModule {
    pub ip: SymmetricForm,
    pub a: Vector,
    pub theta: Mat,
    /// `ρ(e_i)` for each basis vector of `𝔩`.
    pub rho: Vec<Mat>,
    pub labels: Vec<String>,
}

impl OrthogonalModule {
    pub fn new(ip: SymmetricForm, a: Vector, rho: Vec<Mat>, labels: Vec<String>) -> Result<Self, QuadExtError> {
        let k = ip.dim();
        if a.len() != k || labels.len() != k || rho.iter().any(|r| r.rows() != k || r.cols() != k) {
            return Err(QuadExtError::Dimension(format!("𝔞 has dimension {k}")));
        }
        let ga = ip.gram().mul_vec(&a);
        let two = ExactScalar::from_int(2);
        let theta = Mat::from_fn(k, k, |i, j| {
            let d = if i == j { ExactScalar::one() } else { ExactScalar::zero() };
            &d + &(&two * &(&a[i] * &ga[j]))
        });
        Ok(OrthogonalModule { ip, a, theta, rho, labels })
    }

    /// `A = e_0`, then `neg − 1` further negative and `pos` positive unit
    /// vectors; labels `A, A1, A2, …`; trivial `ρ`.
    pub fn standard(neg: usize, pos: usize, l_dim: usize) -> Self {
        assert!(neg >= 1, "A must be time-like");
        let k = neg + pos;
        let diag: Vec<ExactScalar> =
            (0..k).map(|i| ExactScalar::from_int(if i < neg { -1 } else { 1 })).collect();
        let ip = SymmetricForm::new(Mat::diagonal(&diag)).expect("diagonal");
        let labels = (0..k).map(|i| if i == 0 { "A".to_string() } else { format!("A{i}") }).collect();
        Self::new(ip, Vector::unit(k, 0), vec![Mat::zeros(k, k); l_dim], labels).expect("consistent")
    }

    pub fn dim(&self) -> usize {
        self.ip.dim()
    }

    pub fn is_trivial(&self) -> bool {
        self.rho.iter().all(Mat::is_zero)
    }

    pub fn inner(&self, x: &Vector, y: &Vector) -> ExactScalar {
        self.ip.eval(x, y)
    }

    fn rho_of(&self, x: &Vector) -> Mat {
        let k = self.dim();
        let mut out = Mat::zeros(k, k);
        for (i, c) in x.support() {
            out = &out + &self.rho[i].scale(c);
        }
        out
    }

    pub fn report(&self, l: &LieAlgebra, theta_l: &Mat) -> Report {
        let k = self.dim();
        let mut r = Report::new();
        let aa = self.inner(&self.a, &self.a);
        r.check("<A,A> = -1", aa == ExactScalar::from_int(-1), || format!("<A,A> = {aa}"));
        let inv = &self.theta * &self.theta == Mat::identity(k);
        let iso = self.ip.congruent(&self.theta) == self.ip;
        r.check("theta_a isometric involution", inv && iso, || format!("involutive: {inv}, isometry: {iso}"));
        r.check("rho has one entry per basis vector", self.rho.len() == l.dim(), || {
            format!("{} matrices for dim 𝔩 = {}", self.rho.len(), l.dim())
        });
        if self.rho.len() != l.dim() {
            return r;
        }
        let bad = (0..l.dim()).filter(|&i| !self.ip.is_skew(&self.rho[i])).map(|i| l.labels()[i].clone()).collect();
        r.check_all("rho skew", bad);
        let mut bad = Vec::new();
        for i in 0..l.dim() {
            for j in i + 1..l.dim() {
                if self.rho[i].commutator(&self.rho[j]) != self.rho_of(l.bracket_basis(i, j)) {
                    bad.push(format!("({}, {})", l.labels()[i], l.labels()[j]));
                }
            }
        }
        r.check_all("rho representation", bad);
        let mut bad = Vec::new();
        for i in 0..l.dim() {
            let lhs = self.rho_of(&theta_l.column(i));
            let rhs = &(&self.theta * &self.rho[i]) * &self.theta;
            if lhs != rhs {
                bad.push(l.labels()[i].clone());
            }
        }
        r.check_all("rho equivariant", bad);
        r
    }
}

/// `α ∈ C²(𝔩, 𝔞)` as one real 2-form per coordinate of `𝔞`, and `γ ∈ C³(𝔩)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticCocycle {
    pub alpha: Vec<AltForm>,
    pub gamma: AltForm,
}

/// JSON shape `{alpha: [[i, j, a-vector]], gamma: [[i, j, k, scalar]]}`,
/// listing increasing index tuples only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleRepr {
    pub alpha: Vec<(usize, usize, Vector)>,
    pub gamma: Vec<(usize, usize, usize, ExactScalar)>,
}

impl QuadraticCocycle {
    pub fn zero(l_dim: usize, a_dim: usize) -> Self {
        QuadraticCocycle { alpha: vec![AltForm::zero(l_dim, 2); a_dim], gamma: AltForm::zero(l_dim, 3) }
    }

    pub fn l_dim(&self) -> usize {
        self.gamma.dim()
    }

    pub fn a_dim(&self) -> usize {
        self.alpha.len()
    }

    /// `α(e_i, e_j) += a`.
    pub fn add_alpha(&mut self, i: usize, j: usize, a: &Vector) -> Result<(), QuadExtError> {
        if a.len() != self.a_dim() {
            return Err(QuadExtError::Dimension(format!("𝔞 has dimension {}", self.a_dim())));
        }
        for (k, c) in a.support() {
            self.alpha[k].add_term(&[i, j], c)?;
        }
        Ok(())
    }

    /// `γ(e_i, e_j, e_k) += c`.
    pub fn add_gamma(&mut self, i: usize, j: usize, k: usize, c: &ExactScalar) -> Result<(), QuadExtError> {
        Ok(self.gamma.add_term(&[i, j, k], c)?)
    }

    pub fn alpha_basis(&self, i: usize, j: usize) -> Vector {
        Vector(self.alpha.iter().map(|f| f.coeff(&[i, j])).collect())
    }

    pub fn alpha(&self, x: &Vector, y: &Vector) -> Vector {
        let args = [x.clone(), y.clone()];
        Vector(self.alpha.iter().map(|f| f.eval(&args)).collect())
    }

    pub fn gamma(&self, x: &Vector, y: &Vector, z: &Vector) -> ExactScalar {
        self.gamma.eval(&[x.clone(), y.clone(), z.clone()])
    }

    pub fn to_repr(&self) -> CocycleRepr {
        let n = self.l_dim();
        let mut alpha = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = self.alpha_basis(i, j);
                if !v.is_zero() {
                    alpha.push((i, j, v));
                }
            }
        }
        let gamma = self.gamma.terms().map(|(idx, c)| (idx[0], idx[1], idx[2], c.clone())).collect();
        CocycleRepr { alpha, gamma }
    }

    pub fn from_repr(r: &CocycleRepr, l_dim: usize, a_dim: usize) -> Result<Self, QuadExtError> {
        let mut c = Self::zero(l_dim, a_dim);
        for (i, j, v) in &r.alpha {
            c.add_alpha(*i, *j, v)?;
        }
        for (i, j, k, g) in &r.gamma {
            c.add_gamma(*i, *j, *k, g)?;
        }
        Ok(c)
    }
}

/// Index ranges of `𝔩* ⊕ 𝔞 ⊕ 𝔩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub l_dim: usize,
    pub a_dim: usize,
}

impl Layout {
    pub fn dim(&self) -> usize {
        2 * self.l_dim + self.a_dim
    }

    pub fn z(&self, i: usize) -> usize {
        i
    }

    pub fn a(&self, k: usize) -> usize {
        self.l_dim + k
    }

    pub fn l(&self, i: usize) -> usize {
        self.l_dim + self.a_dim + i
    }

    fn embed(&self, offset: usize, v: &Vector) -> Vector {
        let mut out = Vector::zeros(self.dim());
        for (i, c) in v.support() {
            out[offset + i] = c.clone();
        }
        out
    }

    pub fn embed_dual(&self, v: &Vector) -> Vector {
        self.embed(0, v)
    }

    pub fn embed_a(&self, v: &Vector) -> Vector {
        self.embed(self.l_dim, v)
    }

    pub fn embed_l(&self, v: &Vector) -> Vector {
        self.embed(self.l_dim + self.a_dim, v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardModel {
    pub triple: MetricInvolutiveLie,
    pub layout: Layout,
}

/// The standard model `d_{α,γ}(𝔩, θ_𝔩, 𝔞)`.
pub fn build_standard_model(
    l: &LieAlgebra,
    theta_l: &Mat,
    module: &OrthogonalModule,
    c: &QuadraticCocycle,
) -> Result<StandardModel, QuadExtError> {
    let n = l.dim();
    let na = module.dim();
    if c.l_dim() != n || c.a_dim() != na || module.rho.len() != n || theta_l.rows() != n {
        return Err(QuadExtError::Dimension(format!("dim 𝔩 = {n}, dim 𝔞 = {na}")));
    }
    let lay = Layout { l_dim: n, a_dim: na };
    let labels: Vec<String> = l
        .labels()
        .iter()
        .map(|s| dual_label(s))
        .chain(module.labels.iter().cloned())
        .chain(l.labels().iter().cloned())
        .collect();
    let mut d = LieAlgebra::with_labels(labels);
    let eta = module.ip.gram();
    let e = |i: usize| Vector::unit(n, i);

    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                d.add_bracket_term(lay.l(i), lay.l(j), lay.z(k), &c.gamma.coeff(&[i, j, k]))?;
            }
            for (a, v) in c.alpha_basis(i, j).support() {
                d.add_bracket_term(lay.l(i), lay.l(j), lay.a(a), v)?;
            }
            for (k, v) in l.bracket_basis(i, j).support() {
                d.add_bracket_term(lay.l(i), lay.l(j), lay.l(k), v)?;
            }
        }
        // [L_i, A_a] = ρ(L_i) A_a − Σ_k ⟨A_a, α(L_i, L_k)⟩ Z^k
        for a in 0..na {
            for b in 0..na {
                d.add_bracket_term(lay.l(i), lay.a(a), lay.a(b), &module.rho[i][(b, a)])?;
            }
            for k in 0..n {
                let pairing = eta.row(a).dot(&c.alpha_basis(i, k));
                d.add_bracket_term(lay.l(i), lay.a(a), lay.z(k), &-&pairing)?;
            }
        }
        // coadjoint: [L_i, Z^j] = −Σ_k c_ik^j Z^k
        for j in 0..n {
            for k in 0..n {
                let cjk = &l.bracket(&e(i), &e(k))[j];
                d.add_bracket_term(lay.l(i), lay.z(j), lay.z(k), &-cjk)?;
            }
        }
    }
    // [A_a, A_b] = Σ_k ⟨ρ(L_k) A_a, A_b⟩ Z^k
    for a in 0..na {
        for b in a + 1..na {
            for k in 0..n {
                let v = module.ip.eval(&module.rho[k].column(a), &Vector::unit(na, b));
                d.add_bracket_term(lay.a(a), lay.a(b), lay.z(k), &v)?;
            }
        }
    }

    let dim = lay.dim();
    let theta = Mat::from_fn(dim, dim, |r, s| {
        let (lo_a, lo_l) = (lay.a(0), lay.l(0));
        if r < lo_a && s < lo_a {
            theta_l[(s, r)].clone()
        } else if (lo_a..lo_l).contains(&r) && (lo_a..lo_l).contains(&s) {
            module.theta[(r - lo_a, s - lo_a)].clone()
        } else if r >= lo_l && s >= lo_l {
            theta_l[(r - lo_l, s - lo_l)].clone()
        } else {
            ExactScalar::zero()
        }
    });
    let gram = Mat::from_fn(dim, dim, |r, s| {
        let (lo_a, lo_l) = (lay.a(0), lay.l(0));
        if (lo_a..lo_l).contains(&r) && (lo_a..lo_l).contains(&s) {
            eta[(r - lo_a, s - lo_a)].clone()
        } else if (r < lo_a && s == lo_l + r) || (s < lo_a && r == lo_l + s) {
            ExactScalar::one()
        } else {
            ExactScalar::zero()
        }
    });
    let ip = SymmetricForm::new(gram)?;
    let triple = MetricInvolutiveLie::new(d, theta, ip)?;
    Ok(StandardModel { triple, layout: lay })
}

/// `[𝔩*, 𝔩* ⊕ 𝔞] = 0` and `[𝔩*, 𝔡] ⊆ 𝔩*`, on basis pairs.
pub fn dual_ideal_failures(model: &StandardModel) -> Vec<String> {
    let lay = model.layout;
    let alg = &model.triple.alg;
    let mut bad = Vec::new();
    for i in 0..lay.l_dim {
        for y in 0..lay.dim() {
            let v = alg.bracket_basis(lay.z(i), y);
            let abelian_part = y < lay.l(0);
            if (abelian_part && !v.is_zero()) || v.support().any(|(k, _)| k >= lay.a(0)) {
                bad.push(format!("[{}, {}] = {v}", alg.labels()[lay.z(i)], alg.labels()[y]));
            }
        }
    }
    bad
}

/// `Z1, Z2, Z3, A, L1, L2, L3` in `𝔡`, where `L3 = b_𝔪(L1,L2)/√2` and `Z_i`
/// is the dual basis of `𝔩₋*` vanishing on `𝔩₊`.
pub fn standard_frame(
    model: &StandardModel,
    bst: &LieWithBStructure,
    module: &OrthogonalModule,
    l1: &Vector,
    l2: &Vector,
) -> Result<Vec<Vector>, QuadExtError> {
    let n = bst.dim();
    let b = bst.b_m(l1, l2).ok_or_else(|| QuadExtError::BStructure("L1, L2 must lie in m".into()))?;
    if b.is_zero() {
        return Err(QuadExtError::BStructure("b_m(L1, L2) = 0 violates (L3)".into()));
    }
    let l3 = b.scale(&ExactScalar::inv_sqrt2());
    let mut cols = vec![l1.clone(), l2.clone(), l3.clone()];
    cols.extend(bst.plus());
    let p = (cols.len() == n).then(|| Mat::from_columns(n, &cols)).and_then(|p| p.inverse());
    let pinv = p.ok_or_else(|| QuadExtError::BStructure("L1, L2, L3 and l+ do not form a basis".into()))?;
    let lay = model.layout;
    let mut frame: Vec<Vector> = (0..3).map(|i| lay.embed_dual(&pinv.row(i))).collect();
    frame.push(lay.embed_a(&module.a));
    frame.extend([l1, l2, &l3].map(|v| lay.embed_l(v)));
    Ok(frame)
}

/// The standard 3-form on `𝔡₋`, in coordinates of the model's minus basis.
pub fn standard_omega(
    model: &StandardModel,
    bst: &LieWithBStructure,
    module: &OrthogonalModule,
) -> Result<GStructure, QuadExtError> {
    standard_omega_in_basis(model, bst, module, &bst.m[0], &bst.m[1])
}

pub fn standard_omega_in_basis(
    model: &StandardModel,
    bst: &LieWithBStructure,
    module: &OrthogonalModule,
    l1: &Vector,
    l2: &Vector,
) -> Result<GStructure, QuadExtError> {
    let frame = standard_frame(model, bst, module, l1, l2)?;
    let witness = frame
        .iter()
        .map(|v| model.triple.minus_coordinates(v))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| QuadExtError::BStructure("frame leaves d-".into()))?;
    Ok(GStructure::omega0_on(model.triple.minus_metric(), witness)?)
}

/// Rebuild ω from `(L1+L2, L2)` and from `(2L1, L2)` and compare.
pub fn omega_basis_independence(
    model: &StandardModel,
    bst: &LieWithBStructure,
    module: &OrthogonalModule,
) -> Result<Report, QuadExtError> {
    let base = standard_omega(model, bst, module)?;
    let [m1, m2] = &bst.m;
    let mut r = Report::new();
    for (name, l1) in [("L1 -> L1+L2", m1 + m2), ("L1 -> 2L1", m1.scale(&ExactScalar::from_int(2)))] {
        let other = standard_omega_in_basis(model, bst, module, &l1, m2)?;
        r.check(name, other.omega == base.omega, || format!("{} vs {}", other.omega, base.omega));
    }
    Ok(r)
}

/// (Z1)–(Z3), `dα = 0` and θ-equivariance of `(α, γ)`.
pub fn check_cocycle_conditions(bst: &LieWithBStructure, module: &OrthogonalModule, c: &QuadraticCocycle) -> Report {
    let n = bst.dim();
    let mut r = Report::new();
    if c.l_dim() != n || c.a_dim() != module.dim() {
        r.check("dimensions", false, || format!("cocycle on {}+{}, data on {}+{}", c.l_dim(), c.a_dim(), n, module.dim()));
        return r;
    }
    let a = &module.a;
    let pa = |v: &Vector| module.inner(v, a);
    let [m1, m2] = &bst.m;
    let plus = bst.plus();
    let labels = bst.l.labels();
    let pname = |k: usize| vector_name(labels, &plus[k], format!("plus{k}"));

    let v = c.alpha(m1, m2);
    r.check("(Z1) alpha(m, m) = 0", v.is_zero(), || format!("alpha(m1, m2) = {v}"));

    let b = bst.b12();
    let mut bad2 = Vec::new();
    let mut bad3 = Vec::new();
    for (k, p) in plus.iter().enumerate() {
        let lhs = bst.l.bracket(p, b);
        let rhs = &m1.scale(&pa(&c.alpha(p, m2))) - &m2.scale(&pa(&c.alpha(p, m1)));
        if lhs != rhs {
            bad2.push(format!("{}: lhs {lhs}, rhs {rhs}", pname(k)));
        }
        let two_gamma = &ExactScalar::from_int(2) * &c.gamma(p, m1, m2);
        let rhs = -&pa(&c.alpha(p, b));
        if two_gamma != rhs {
            bad3.push(format!("{}: 2gamma = {two_gamma}, rhs {rhs}", pname(k)));
        }
        r.quantity(format!("2gamma({},m1,m2)", pname(k)), two_gamma.to_string());
    }
    r.check_all("(Z2)", bad2);
    r.check_all("(Z3)", bad3);

    // dα(x,y,z) = Σ_cyc ρ(x)α(y,z) − Σ_cyc α([x,y],z)
    let e = |i: usize| Vector::unit(n, i);
    let mut bad = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut total = Vector::zeros(module.dim());
                for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                    total = &total + &module.rho[x].mul_vec(&c.alpha_basis(y, z));
                    total = &total - &c.alpha(&bst.l.bracket_basis(x, y).clone(), &e(z));
                }
                if !total.is_zero() {
                    bad.push(format!("d alpha({}, {}, {}) = {total}", labels[i], labels[j], labels[k]));
                }
            }
        }
    }
    r.check_all("d alpha = 0", bad);

    let th = &bst.theta;
    let alpha_ok = (0..n).all(|i| {
        (0..n).all(|j| c.alpha(&th.column(i), &th.column(j)) == module.theta.mul_vec(&c.alpha_basis(i, j)))
    });
    let gamma_ok = c.gamma.pullback(th) == c.gamma;
    r.check("theta-equivariance", alpha_ok && gamma_ok, || {
        format!("alpha equivariant: {alpha_ok}, gamma invariant: {gamma_ok}")
    });
    r
}

/// Ricci-flatness of the standard model: `tr(ρ(L)ρ(L′)) = −2κ_𝔩(L, L′)`.
pub fn ricci_flat_criterion(l: &LieAlgebra, module: &OrthogonalModule) -> bool {
    let n = l.dim();
    if module.rho.len() != n {
        return false;
    }
    let kappa = l.killing_form();
    let two = ExactScalar::from_int(-2);
    (0..n).all(|i| (0..n).all(|j| (&module.rho[i] * &module.rho[j]).trace() == &two * kappa.entry(i, j)))
}

/// `(S₀, τ, σ)` with `τ: 𝔩 → 𝔞` stored as a `dim 𝔞 × dim 𝔩` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainTransformation {
    pub s0: Mat,
    pub tau: Mat,
    pub sigma: AltForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BFlags {
    pub b1: bool,
    pub b2: bool,
}

impl CochainTransformation {
    pub fn identity(l_dim: usize, a_dim: usize) -> Self {
        CochainTransformation {
            s0: Mat::identity(l_dim),
            tau: Mat::zeros(a_dim, l_dim),
            sigma: AltForm::zero(l_dim, 2),
        }
    }

    fn dims_ok(&self, l_dim: usize, a_dim: usize) -> bool {
        self.s0.rows() == l_dim
            && self.s0.cols() == l_dim
            && self.tau.rows() == a_dim
            && self.tau.cols() == l_dim
            && self.sigma.dim() == l_dim
            && self.sigma.degree() == 2
    }

    /// Reasons why `S₀` is not an automorphism of `(𝔩, θ_𝔩)` that is the
    /// identity on `𝔪`, on `𝔩₊` and on `𝔩₋/𝔪`.
    pub fn n_membership_failures(&self, bst: &LieWithBStructure) -> Vec<String> {
        let n = bst.dim();
        if self.s0.rows() != n || self.s0.cols() != n {
            return vec![format!("S0 is not {n}×{n}")];
        }
        let mut bad = Vec::new();
        if !bst.l.is_automorphism(&self.s0) || self.s0.inverse().is_none() {
            bad.push("not an automorphism".to_string());
        }
        if &self.s0 * &bst.theta != &bst.theta * &self.s0 {
            bad.push("does not commute with θ".to_string());
        }
        if bst.m.iter().any(|v| self.s0.mul_vec(v) != *v) {
            bad.push("not the identity on m".to_string());
        }
        if bst.plus().iter().any(|v| self.s0.mul_vec(v) != *v) {
            bad.push("not the identity on l+".to_string());
        }
        let msp = Subspace::span(n, bst.m.iter().cloned());
        if bst.minus().iter().any(|v| !msp.contains(&(&self.s0.mul_vec(v) - v))) {
            bad.push("not the identity on l-/m".to_string());
        }
        bad
    }

    /// `τ θ_𝔩 = θ_𝔞 τ` and `σ` θ-invariant.
    pub fn equivariance_failures(&self, bst: &LieWithBStructure, module: &OrthogonalModule) -> Vec<String> {
        let mut bad = Vec::new();
        if &self.tau * &bst.theta != &module.theta * &self.tau {
            bad.push("tau is not θ-equivariant".to_string());
        }
        if self.sigma.pullback(&bst.theta) != self.sigma {
            bad.push("sigma is not θ-invariant".to_string());
        }
        bad
    }

    /// `τ(m[0]), τ(m[1])` as prescribed by (B1):
    /// `τ(L) = tr(proj_𝔪 S₀ b_𝔪(L, ·)) A`.
    pub fn b1_values(s0: &Mat, bst: &LieWithBStructure, module: &OrthogonalModule) -> Option<[Vector; 2]> {
        let mut out = [Vector::zeros(module.dim()), Vector::zeros(module.dim())];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut tr = ExactScalar::zero();
            for l in 0..2 {
                let b = bst.b_m(&bst.m[k], &bst.m[l])?;
                tr += &bst.minus_split(&s0.mul_vec(&b))?[l];
            }
            *slot = module.a.scale(&tr);
        }
        Some(out)
    }

    /// `σ(m[0], m[1])` as prescribed by (B2): `2σ(L′,L″) = −⟨τ(b_𝔪(L′,L″)), A⟩`.
    pub fn b2_value(tau: &Mat, bst: &LieWithBStructure, module: &OrthogonalModule) -> ExactScalar {
        &(-&module.inner(&tau.mul_vec(bst.b12()), &module.a)) * &half()
    }

    pub fn b_flags(&self, bst: &LieWithBStructure, module: &OrthogonalModule) -> BFlags {
        let b1 = Self::b1_values(&self.s0, bst, module)
            .is_some_and(|v| (0..2).all(|k| self.tau.mul_vec(&bst.m[k]) == v[k]));
        let b2 = self.sigma.eval(&[bst.m[0].clone(), bst.m[1].clone()]) == Self::b2_value(&self.tau, bst, module);
        BFlags { b1, b2 }
    }

    /// Overwrite `τ` on `𝔪` and `σ(m[0], m[1])` so that (B1) and (B2) hold,
    /// keeping the values on the rest of the adapted basis.
    pub fn completing_b_conditions(
        s0: Mat,
        tau: Mat,
        sigma: AltForm,
        bst: &LieWithBStructure,
        module: &OrthogonalModule,
    ) -> Result<Self, QuadExtError> {
        let n = bst.dim();
        let basis = bst.adapted_basis().ok_or_else(|| QuadExtError::BStructure("(L3) fails".into()))?;
        let pinv = Mat::from_columns(n, &basis).inverse().ok_or(QuadExtError::BStructure("(L3) fails".into()))?;
        let b1 = Self::b1_values(&s0, bst, module).ok_or_else(|| QuadExtError::BStructure("(L3) fails".into()))?;
        let values: Vec<Vector> =
            basis.iter().enumerate().map(|(k, v)| if k < 2 { b1[k].clone() } else { tau.mul_vec(v) }).collect();
        let tau = &Mat::from_columns(module.dim(), &values) * &pinv;
        let target = Self::b2_value(&tau, bst, module);
        let current = sigma.eval(&[bst.m[0].clone(), bst.m[1].clone()]);
        let (mu1, mu2) = (pinv.row(0), pinv.row(1));
        let fix = AltForm::from_fn(n, 2, |idx| &(&mu1[idx[0]] * &mu2[idx[1]]) - &(&mu1[idx[1]] * &mu2[idx[0]]));
        let sigma = sigma.add(&fix.scale(&(&target - &current)));
        Ok(CochainTransformation { s0, tau, sigma })
    }

    /// The block-triangular map `𝔩* ⊕ 𝔞 ⊕ 𝔩 → 𝔩* ⊕ 𝔞 ⊕ 𝔩`:
    ///
    /// ```text
    /// [ S̃  −S̃τᵀη   S̃(σ̄ᵀ − ½τᵀητ) ]
    /// [ 0   1       τ              ]    S̃ = (S₀ᵀ)⁻¹,  σ̄[i][k] = σ(L_i, L_k)
    /// [ 0   0       S₀             ]
    /// ```
    pub fn equivalence_map(&self, module: &OrthogonalModule) -> Result<Mat, QuadExtError> {
        let n = self.s0.rows();
        let na = module.dim();
        if !self.dims_ok(n, na) {
            return Err(QuadExtError::Dimension(format!("dim 𝔩 = {n}, dim 𝔞 = {na}")));
        }
        let st = self.s0.transpose().inverse().ok_or(LieError::Singular)?;
        let eta = module.ip.gram();
        let tt = self.tau.transpose();
        let top_mid = -&(&(&st * &tt) * eta);
        let sig_t = Mat::from_fn(n, n, |i, k| self.sigma.coeff(&[k, i]));
        let quad = (&(&tt * eta) * &self.tau).scale(&half());
        let top_right = &st * &(&sig_t - &quad);
        let lay = Layout { l_dim: n, a_dim: na };
        Ok(Mat::from_fn(lay.dim(), lay.dim(), |r, c| {
            let (lo_a, lo_l) = (lay.a(0), lay.l(0));
            match (r < lo_a, r < lo_l, c < lo_a, c < lo_l) {
                (true, _, true, _) => st[(r, c)].clone(),
                (true, _, false, true) => top_mid[(r, c - lo_a)].clone(),
                (true, _, false, false) => top_right[(r, c - lo_l)].clone(),
                (false, true, false, true) if r == c => ExactScalar::one(),
                (false, true, false, false) => self.tau[(r - lo_a, c - lo_l)].clone(),
                (false, false, false, false) => self.s0[(r - lo_l, c - lo_l)].clone(),
                _ => ExactScalar::zero(),
            }
        }))
    }

    /// Read `(S₀, τ, σ)` back off a map of the shape of [`Self::equivalence_map`].
    pub fn from_equivalence_map(psi: &Mat, l_dim: usize, module: &OrthogonalModule) -> Result<Self, QuadExtError> {
        let lay = Layout { l_dim, a_dim: module.dim() };
        if psi.rows() != lay.dim() || psi.cols() != lay.dim() {
            return Err(QuadExtError::Dimension(format!("expected {0}×{0}", lay.dim())));
        }
        let zs: Vec<usize> = (0..l_dim).collect();
        let as_: Vec<usize> = (lay.a(0)..lay.l(0)).collect();
        let ls: Vec<usize> = (lay.l(0)..lay.dim()).collect();
        let s0 = psi.submatrix(&ls, &ls);
        let tau = psi.submatrix(&as_, &ls);
        let candidate = CochainTransformation { s0: s0.clone(), tau: tau.clone(), sigma: AltForm::zero(l_dim, 2) };
        let st = s0.transpose().inverse().ok_or(LieError::Singular)?;
        let shape_ok = psi.submatrix(&as_, &zs).is_zero()
            && psi.submatrix(&ls, &zs).is_zero()
            && psi.submatrix(&ls, &as_).is_zero()
            && psi.submatrix(&as_, &as_) == Mat::identity(module.dim())
            && psi.submatrix(&zs, &zs) == st;
        let expected = candidate.equivalence_map(module)?;
        if !shape_ok || psi.submatrix(&zs, &as_) != expected.submatrix(&zs, &as_) {
            return Err(QuadExtError::NotEquivalenceShape("blocks do not match".into()));
        }
        let eta = module.ip.gram();
        let quad = (&(&tau.transpose() * eta) * &tau).scale(&half());
        let sig_t = &(&s0.transpose() * &psi.submatrix(&zs, &ls)) + &quad;
        if sig_t.transpose() != -&sig_t {
            return Err(QuadExtError::NotEquivalenceShape("sigma block is not antisymmetric".into()));
        }
        let sigma = AltForm::from_fn(l_dim, 2, |idx| sig_t[(idx[1], idx[0])].clone());
        Ok(CochainTransformation { s0, tau, sigma })
    }

    /// The transformation whose equivalence map is the inverse of this one's.
    pub fn inverse(&self, module: &OrthogonalModule) -> Result<Self, QuadExtError> {
        let psi = self.equivalence_map(module)?;
        let inv = psi.inverse().ok_or(LieError::Singular)?;
        Self::from_equivalence_map(&inv, self.s0.rows(), module)
    }
}

/// `α′ = S₀*α + dτ`, `γ′ = S₀*γ + dσ + ⟨(S₀*α + ½dτ) ∧ τ⟩`, where
/// `dτ(x,y) = −τ([x,y])`, `dσ(x,y,z) = −Σ_cyc σ([x,y],z)` and
/// `⟨β∧τ⟩(x,y,z) = Σ_cyc ⟨β(x,y), τ(z)⟩`.
pub fn apply_transformation(
    c: &QuadraticCocycle,
    tr: &CochainTransformation,
    bst: &LieWithBStructure,
    module: &OrthogonalModule,
) -> Result<(QuadraticCocycle, BFlags), QuadExtError> {
    let n = bst.dim();
    let na = module.dim();
    if c.l_dim() != n || c.a_dim() != na || !tr.dims_ok(n, na) {
        return Err(QuadExtError::Dimension(format!("dim 𝔩 = {n}, dim 𝔞 = {na}")));
    }
    if !module.is_trivial() {
        return Err(QuadExtError::NontrivialRho);
    }
    let fails = tr.n_membership_failures(bst);
    if !fails.is_empty() {
        return Err(QuadExtError::NotInN(fails.join("; ")));
    }
    let l = &bst.l;
    let e = |i: usize| Vector::unit(n, i);
    let tau_br: Vec<Vec<Vector>> =
        (0..n).map(|i| (0..n).map(|j| tr.tau.mul_vec(l.bracket_basis(i, j))).collect()).collect();
    let pulled: Vec<AltForm> = c.alpha.iter().map(|f| f.pullback(&tr.s0)).collect();
    let dtau: Vec<AltForm> =
        (0..na).map(|a| AltForm::from_fn(n, 2, |idx| -&tau_br[idx[0]][idx[1]][a])).collect();
    let alpha: Vec<AltForm> = pulled.iter().zip(&dtau).map(|(p, d)| p.add(d)).collect();
    let beta: Vec<AltForm> = pulled.iter().zip(&dtau).map(|(p, d)| p.add(&d.scale(&half()))).collect();
    let beta_at = |i: usize, j: usize| Vector(beta.iter().map(|f| f.coeff(&[i, j])).collect());
    let tau_cols = tr.tau.columns();

    let gamma = AltForm::from_fn(n, 3, |idx| {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let mut total = ExactScalar::zero();
        for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
            total -= &tr.sigma.eval(&[l.bracket_basis(x, y).clone(), e(z)]);
            total += &module.inner(&beta_at(x, y), &tau_cols[z]);
        }
        total
    })
    .add(&c.gamma.pullback(&tr.s0));
    let flags = tr.b_flags(bst, module);
    Ok((QuadraticCocycle { alpha, gamma }, flags))
}

/// The equivalence map of `tr`, after checking `tr` against the B-structure.
pub fn build_equivalence_map(
    tr: &CochainTransformation,
    bst: &LieWithBStructure,
    module: &OrthogonalModule,
) -> Result<Mat, QuadExtError> {
    if !tr.dims_ok(bst.dim(), module.dim()) {
        return Err(QuadExtError::Dimension(format!("dim 𝔩 = {}, dim 𝔞 = {}", bst.dim(), module.dim())));
    }
    let fails = tr.n_membership_failures(bst);
    if !fails.is_empty() {
        return Err(QuadExtError::NotInN(fails.join("; ")));
    }
    tr.equivalence_map(module)
}

/// Whether `psi: source → target` preserves bracket, metric, θ and the
/// given 3-forms on the minus parts.
pub fn verify_equivalence(
    psi: &Mat,
    source: &StandardModel,
    target: &StandardModel,
    omega_source: &GStructure,
    omega_target: &GStructure,
) -> Report {
    let (s, t) = (&source.triple, &target.triple);
    let mut r = Report::new();
    let fails = s.alg.homomorphism_failures(psi, &t.alg);
    let labels = s.alg.labels();
    r.check_all("bracket", fails.iter().map(|(i, j)| format!("({}, {})", labels[*i], labels[*j])).collect());
    r.check("invertible", psi.inverse().is_some(), || "singular".into());
    let g = psi.transpose();
    r.check("metric", &(&g * t.ip.gram()) * psi == *s.ip.gram(), || "Ψᵀ G Ψ != G".into());
    r.check("theta", psi * &s.theta == &t.theta * psi, || "Ψθ != θΨ".into());
    let cols: Option<Vec<Vector>> = s.minus().iter().map(|v| t.minus_coordinates(&psi.mul_vec(v))).collect();
    match cols {
        Some(cols) => {
            let m = Mat::from_columns(t.minus().len(), &cols);
            let pulled = omega_target.omega.pullback(&m);
            r.check("omega", pulled == omega_source.omega, || {
                format!("Ψ*ω = {pulled}, expected {}", omega_source.omega)
            });
        }
        None => r.check("omega", false, || "Ψ does not map d- to d-".into()),
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{family_data, FamilySpec};
    use crate::lie::tests::heisenberg;

    fn s(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    fn r(p: i64, q: i64) -> ExactScalar {
        ExactScalar::from_ratio(p, q)
    }

    fn model_of(spec: &FamilySpec) -> (crate::catalog::FamilyData, StandardModel) {
        let data = family_data(spec).unwrap();
        let m = build_standard_model(&data.bst.l, &data.bst.theta, &data.module, &data.cocycle).unwrap();
        (data, m)
    }

    /// `S₀(L3) = L3 + s1 L1 + s2 L2`.
    fn shear(s1: &ExactScalar, s2: &ExactScalar) -> Mat {
        let mut m = Mat::identity(4);
        m[(0, 2)] = s1.clone();
        m[(1, 2)] = s2.clone();
        m
    }

    #[test]
    fn zero_cocycle_over_abelian_algebra_is_abelian() {
        let l = LieAlgebra::abelian(3);
        let module = OrthogonalModule::standard(1, 1, 3);
        let m = build_standard_model(&l, &Mat::identity(3).scale(&s(-1)), &module, &QuadraticCocycle::zero(3, 2))
            .unwrap();
        assert_eq!(m.triple.dim(), 8);
        assert!(m.triple.alg.is_abelian());
    }

    #[test]
    fn heisenberg_extension_has_dual_ideal() {
        let l = heisenberg();
        let module = OrthogonalModule::standard(1, 0, 3);
        let m = build_standard_model(&l, &Mat::identity(3), &module, &QuadraticCocycle::zero(3, 1)).unwrap();
        assert!(m.triple.alg.jacobi_failures().is_empty());
        assert!(dual_ideal_failures(&m).is_empty());
        assert!(m.triple.metric_invariance().get("ad-invariance").unwrap().verdict.is_pass());
    }

    #[test]
    fn f2b_brackets() {
        let (_, m) = model_of(&FamilySpec::f2b());
        let alg = &m.triple.alg;
        let ix = |l: &str| alg.index_of(l).unwrap();
        let n = alg.dim();
        assert_eq!(*alg.bracket_basis(ix("B"), ix("L3")), Vector::unit(n, ix("A")));
        assert_eq!(*alg.bracket_basis(ix("L3"), ix("A")), -&Vector::unit(n, ix("Z_B")));
    }

    #[test]
    fn f1_bracket_b_l3() {
        let t = r(2, 3);
        let (_, m) = model_of(&FamilySpec::f1(crate::catalog::ASignature::Lorentzian, t.clone()));
        let alg = &m.triple.alg;
        let ix = |l: &str| alg.index_of(l).unwrap();
        let n = alg.dim();
        let expected = &Vector::unit(n, ix("L1")) - &Vector::unit(n, ix("Z1")).scale(&t);
        assert_eq!(*alg.bracket_basis(ix("B"), ix("L3")), expected);
    }

    #[test]
    fn catalog_cocycles_satisfy_conditions() {
        for spec in crate::catalog::sweep() {
            let data = family_data(&spec).unwrap();
            assert!(data.bst.report().all_pass(), "{}", data.bst.report());
            assert!(data.module.report(&data.bst.l, &data.bst.theta).all_pass());
            let rep = check_cocycle_conditions(&data.bst, &data.module, &data.cocycle);
            assert!(rep.all_pass(), "{spec:?}\n{rep}");
        }
        let data = family_data(&FamilySpec::f2b()).unwrap();
        let rep = check_cocycle_conditions(&data.bst, &data.module, &data.cocycle);
        assert_eq!(rep.quantities["2gamma(B,m1,m2)"], ExactScalar::sqrt2().to_string());
    }

    #[test]
    fn f1_z2_pairs_b_with_l3() {
        let data = family_data(&FamilySpec::f1(crate::catalog::ASignature::Definite, s(0))).unwrap();
        let b = Vector::unit(4, 3);
        let a = &data.module.a;
        let pairing = data.module.inner(&data.cocycle.alpha(&b, &Vector::unit(4, 1)), a);
        assert_eq!(pairing, ExactScalar::sqrt2());
        let lhs = data.bst.l.bracket(&b, data.bst.b12());
        assert_eq!(lhs, Vector::unit(4, 0).scale(&ExactScalar::sqrt2()));
    }

    #[test]
    fn zeroed_gamma_violates_z3() {
        let mut data = family_data(&FamilySpec::f2b()).unwrap();
        data.cocycle.gamma = AltForm::zero(4, 3);
        let rep = check_cocycle_conditions(&data.bst, &data.module, &data.cocycle);
        assert!(!rep.get("(Z3)").unwrap().verdict.is_pass());
        assert!(rep.get("(Z2)").unwrap().verdict.is_pass());
    }

    #[test]
    fn ricci_criterion() {
        let g41 = LieWithBStructure::g41();
        let rh = LieWithBStructure::r_plus_heisenberg();
        for l in [&g41.l, &rh.l] {
            assert!(ricci_flat_criterion(l, &OrthogonalModule::standard(1, 1, 4)));
        }
        // [X, Y] = Y has κ(X, X) = 1.
        let mut aff = LieAlgebra::abelian(2);
        aff.set_bracket(0, 1, Vector::unit(2, 1)).unwrap();
        assert!(!ricci_flat_criterion(&aff, &OrthogonalModule::standard(1, 0, 2)));
    }

    #[test]
    fn standard_omega_has_standard_coefficients() {
        let (data, m) = model_of(&FamilySpec::f2b());
        let g = standard_omega(&m, &data.bst, &data.module).unwrap();
        assert_eq!(g.omega.coeff(&[0, 1, 6]), ExactScalar::sqrt2());
        assert_eq!(g.witness_holds(), Some(true));
        assert!(omega_basis_independence(&m, &data.bst, &data.module).unwrap().all_pass());
    }

    #[test]
    fn degenerate_b_structure_is_rejected() {
        let (data, m) = model_of(&FamilySpec::f2b());
        let flat = LieWithBStructure::new(
            data.bst.l.clone(),
            data.bst.theta.clone(),
            data.bst.m().clone(),
            Vector::zeros(4),
        )
        .unwrap();
        assert!(!flat.report().get("(L3) n complementary to m in l-").unwrap().verdict.is_pass());
        assert!(matches!(standard_omega(&m, &flat, &data.module), Err(QuadExtError::BStructure(_))));
    }

    #[test]
    fn identity_transformation_is_trivial() {
        let data = family_data(&FamilySpec::f2a(crate::catalog::ASignature::Lorentzian)).unwrap();
        let id = CochainTransformation::identity(4, 2);
        let (c, flags) = apply_transformation(&data.cocycle, &id, &data.bst, &data.module).unwrap();
        assert_eq!(c, data.cocycle);
        assert_eq!(flags, BFlags { b1: true, b2: true });
        assert_eq!(build_equivalence_map(&id, &data.bst, &data.module).unwrap(), Mat::identity(10));
    }

    #[test]
    fn f1_shear_matches_closed_form() {
        let data = family_data(&FamilySpec::f1(crate::catalog::ASignature::Lorentzian, r(1, 3))).unwrap();
        let (s1, s2) = (r(2, 3), r(-1, 2));
        let mut tau = Mat::zeros(2, 4);
        tau[(0, 2)] = r(3, 7);
        tau[(1, 3)] = r(5, 2);
        let tr = CochainTransformation::completing_b_conditions(
            shear(&s1, &s2),
            tau.clone(),
            AltForm::zero(4, 2),
            &data.bst,
            &data.module,
        )
        .unwrap();
        assert_eq!(tr.tau.column(0), Vector(vec![&ExactScalar::sqrt2() * &s2, s(0)]));
        assert_eq!(tr.tau.column(1), Vector(vec![-&(&ExactScalar::sqrt2() * &s1), s(0)]));
        let (c, flags) = apply_transformation(&data.cocycle, &tr, &data.bst, &data.module).unwrap();
        assert_eq!(flags, BFlags { b1: true, b2: true });
        // α′ = α − (Z2∧Z3)⊗τ(B) − 2√2 s2 (Z_B∧Z3)⊗A
        let mut expected = data.cocycle.clone();
        expected.add_alpha(1, 2, &-&tr.tau.column(3)).unwrap();
        let k = &(&s(-2) * &ExactScalar::sqrt2()) * &s2;
        expected.add_alpha(3, 2, &data.module.a.scale(&k)).unwrap();
        assert_eq!(c.alpha, expected.alpha);
    }

    #[test]
    fn transformation_then_inverse_is_identity() {
        let data = family_data(&FamilySpec::f1(crate::catalog::ASignature::Lorentzian, r(1, 2))).unwrap();
        let mut tau = Mat::zeros(2, 4);
        tau[(0, 2)] = r(-4, 5);
        tau[(1, 3)] = s(3);
        let tr = CochainTransformation::completing_b_conditions(
            shear(&r(1, 3), &s(2)),
            tau,
            AltForm::zero(4, 2),
            &data.bst,
            &data.module,
        )
        .unwrap();
        let inv = tr.inverse(&data.module).unwrap();
        let (c1, _) = apply_transformation(&data.cocycle, &tr, &data.bst, &data.module).unwrap();
        let (c2, _) = apply_transformation(&c1, &inv, &data.bst, &data.module).unwrap();
        assert_eq!(c2, data.cocycle);
    }

    #[test]
    fn equivalence_map_is_certified_and_sigma_mutation_breaks_omega() {
        let data = family_data(&FamilySpec::f2a(crate::catalog::ASignature::Lorentzian)).unwrap();
        let (bst, module) = (&data.bst, &data.module);
        let tr = CochainTransformation::completing_b_conditions(
            shear(&s(1), &s(0)),
            Mat::zeros(2, 4),
            AltForm::zero(4, 2),
            bst,
            module,
        )
        .unwrap();
        assert_eq!(tr.tau.column(1), Vector(vec![-&ExactScalar::sqrt2(), s(0)]));
        let check = |tr: &CochainTransformation| {
            let (c2, _) = apply_transformation(&data.cocycle, tr, bst, module).unwrap();
            let target = build_standard_model(&bst.l, &bst.theta, module, &data.cocycle).unwrap();
            let source = build_standard_model(&bst.l, &bst.theta, module, &c2).unwrap();
            let (ws, wt) =
                (standard_omega(&source, bst, module).unwrap(), standard_omega(&target, bst, module).unwrap());
            let psi = build_equivalence_map(tr, bst, module).unwrap();
            verify_equivalence(&psi, &source, &target, &ws, &wt)
        };
        let rep = check(&tr);
        assert!(rep.all_pass(), "{rep}");

        let mut bad = tr.clone();
        bad.sigma.add_term(&[0, 1], &s(1)).unwrap();
        let rep = check(&bad);
        assert!(!rep.get("omega").unwrap().verdict.is_pass());
        for name in ["bracket", "metric", "theta"] {
            assert!(rep.get(name).unwrap().verdict.is_pass(), "{name}");
        }
    }

    #[test]
    fn s0_outside_n_is_rejected() {
        let data = family_data(&FamilySpec::f2b()).unwrap();
        let mut tr = CochainTransformation::identity(4, 1);
        tr.s0[(0, 1)] = s(1);
        assert!(matches!(
            apply_transformation(&data.cocycle, &tr, &data.bst, &data.module),
            Err(QuadExtError::NotInN(_))
        ));
    }

    #[test]
    fn cocycle_json_round_trip() {
        let data = family_data(&FamilySpec::f2a(crate::catalog::ASignature::Definite)).unwrap();
        let json = serde_json::to_string(&data.cocycle.to_repr()).unwrap();
        let back: CocycleRepr = serde_json::from_str(&json).unwrap();
        assert_eq!(QuadraticCocycle::from_repr(&back, 4, 2).unwrap(), data.cocycle);
    }
}
