//! The Clifford algebra of the seven-dimensional Witt space acting on
//! eight-component spinors, its spin Lie algebra, and spinor stabilizers.
//!
//! Vectors are written in the Witt basis `e1..e7` (indices `0..7`), spinors
//! in the basis `s1..s8` (indices `0..8`).

use std::fmt;

use serde_json::json;
use thiserror::Error;

use crate::linalg::{coordinates, kernel, rank, Mat, Subspace, SymmetricForm, Vector};
use crate::report::Report;
use crate::scalar::ExactScalar;

pub const VECTOR_DIM: usize = 7;
pub const SPINOR_DIM: usize = 8;
pub const SPIN_DIM: usize = 21;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("Clifford relation fails for (e{0}, e{1})")]
    Relation(usize, usize),
    #[error("volume element is not ±Id")]
    Volume,
    #[error("matrix is not skew with respect to the metric")]
    NotSkew,
    #[error("matrix is not in the spin algebra")]
    NotInSpin,
    #[error("spinor is isotropic")]
    Isotropic,
    #[error("expected {expected} components, got {got}")]
    Dimension { expected: usize, got: usize },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Spinor(Vector);

impl Spinor {
    pub fn new(coords: Vector) -> Result<Self, CliffordError> {
        if coords.len() != SPINOR_DIM {
            return Err(CliffordError::Dimension { expected: SPINOR_DIM, got: coords.len() });
        }
        Ok(Spinor(coords))
    }

    /// `s_{i+1}`
    pub fn basis(i: usize) -> Self {
        Spinor(Vector::unit(SPINOR_DIM, i))
    }

    pub fn zero() -> Self {
        Spinor(Vector::zeros(SPINOR_DIM))
    }

    pub fn from_ints(xs: &[i64; SPINOR_DIM]) -> Self {
        Spinor(Vector::from_ints(xs))
    }

    pub fn coords(&self) -> &Vector {
        &self.0
    }

    pub fn scale(&self, c: &ExactScalar) -> Spinor {
        Spinor(self.0.scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Debug for Spinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Spinor{}", self.0)
    }
}

/// `⟨·,·⟩_Δ = 2 Σ dx_i dx_{i+4}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinorForm {
    form: SymmetricForm,
}

impl SpinorForm {
    pub fn standard() -> Self {
        SpinorForm { form: SymmetricForm::split_hyperbolic(4) }
    }

    pub fn form(&self) -> &SymmetricForm {
        &self.form
    }

    pub fn eval(&self, a: &Spinor, b: &Spinor) -> ExactScalar {
        self.form.eval(&a.0, &b.0)
    }

    pub fn is_isotropic(&self, a: &Spinor) -> bool {
        self.eval(a, a).is_zero()
    }

    /// Every basis triple `(e_k, s_a, s_b)` with
    /// `⟨e_k·s_a, s_b⟩ + ⟨s_a, e_k·s_b⟩ ≠ 0`, out of `7·8·8`.
    pub fn invariance_failures(&self, rep: &CliffordRep) -> (usize, Vec<(usize, usize, usize)>) {
        let g = self.form.gram();
        let mut checked = 0;
        let mut bad = Vec::new();
        for (k, p) in rep.phi.iter().enumerate() {
            let m = &(&p.transpose() * g) + &(g * p);
            for a in 0..SPINOR_DIM {
                for b in 0..SPINOR_DIM {
                    checked += 1;
                    if !m[(a, b)].is_zero() {
                        bad.push((k, a, b));
                    }
                }
            }
        }
        (checked, bad)
    }
}

/// An 8×8 matrix in the span of `Φ(ê_i)Φ(ê_j)`, `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinElement {
    matrix: Mat,
}

impl SpinElement {
    pub fn new(rep: &CliffordRep, matrix: Mat) -> Result<Self, CliffordError> {
        if rep.spin_coordinates(&matrix).is_none() {
            return Err(CliffordError::NotInSpin);
        }
        Ok(SpinElement { matrix })
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn into_matrix(self) -> Mat {
        self.matrix
    }

    pub fn act(&self, psi: &Spinor) -> Spinor {
        Spinor(self.matrix.mul_vec(&psi.0))
    }
}

/// Orthonormal basis used for the volume element, with the reordering that
/// was applied to the default order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthonormalFrame {
    pub vectors: Vec<Vector>,
    /// `order[k]` is the default-order index of the k-th frame vector.
    pub order: Vec<usize>,
    /// Whether the frame has the orientation of `e1..e7`.
    pub same_orientation_as_witt: bool,
}

#[derive(Debug, Clone)]
pub struct CliffordRep {
    phi: Vec<Mat>,
    metric: SymmetricForm,
    frame: OrthonormalFrame,
    spin_basis: Vec<Mat>,
}

/// `(source, target, sign)`: `Φ(e_k) s_source = sign·√2·s_target`.
const PHI_TABLE: [[(usize, usize, i64); 4]; 6] = [
    [(1, 8, 1), (2, 7, 1), (3, 6, -1), (4, 5, -1)],
    [(1, 3, -1), (2, 4, 1), (7, 5, 1), (8, 6, -1)],
    [(2, 1, -1), (4, 3, -1), (5, 6, 1), (7, 8, 1)],
    [(5, 4, 1), (6, 3, 1), (7, 2, -1), (8, 1, -1)],
    [(3, 1, 1), (4, 2, -1), (5, 7, -1), (6, 8, 1)],
    [(1, 2, 1), (3, 4, 1), (6, 5, -1), (8, 7, -1)],
];

/// Spinor indices (1-based) fixed by `Φ(e4)`; the rest are negated.
const E4_PLUS: [usize; 4] = [1, 4, 6, 7];

pub fn standard_phi_matrices() -> Vec<Mat> {
    let r2 = ExactScalar::sqrt2();
    let mut out = Vec::with_capacity(VECTOR_DIM);
    let table_mat = |rows: &[(usize, usize, i64); 4]| {
        let mut m = Mat::zeros(SPINOR_DIM, SPINOR_DIM);
        for &(src, dst, sign) in rows {
            m[(dst - 1, src - 1)] = &r2 * &ExactScalar::from_int(sign);
        }
        m
    };
    for row in &PHI_TABLE[..3] {
        out.push(table_mat(row));
    }
    let diag: Vec<ExactScalar> = (1..=SPINOR_DIM)
        .map(|i| ExactScalar::from_int(if E4_PLUS.contains(&i) { 1 } else { -1 }))
        .collect();
    out.push(Mat::diagonal(&diag));
    for row in &PHI_TABLE[3..] {
        out.push(table_mat(row));
    }
    out
}

/// `(e_i ± e_{i+4})/√2` for `i = 1,2,3` (plus signs first), then `e4`.
fn default_frame() -> Vec<Vector> {
    let h = ExactScalar::inv_sqrt2();
    let mut out = Vec::new();
    for sign in [1, -1] {
        for i in 0..3 {
            let mut v = Vector::zeros(VECTOR_DIM);
            v[i] = h.clone();
            v[i + 4] = &h * &ExactScalar::from_int(sign);
            out.push(v);
        }
    }
    out.push(Vector::unit(VECTOR_DIM, 3));
    out
}

impl CliffordRep {
    /// The seven matrices of the type-one representation, with both
    /// defining invariants verified.
    pub fn standard() -> Result<Self, CliffordError> {
        CliffordRep::new(standard_phi_matrices(), SymmetricForm::witt())
    }

    /// Validates the Clifford relations and that the volume element of some
    /// orthonormal frame is `+Id`; the default frame is tried first, then with
    /// its first two vectors swapped.
    pub fn new(phi: Vec<Mat>, metric: SymmetricForm) -> Result<Self, CliffordError> {
        if phi.len() != VECTOR_DIM {
            return Err(CliffordError::Dimension { expected: VECTOR_DIM, got: phi.len() });
        }
        let mut rep = CliffordRep {
            phi,
            metric,
            frame: OrthonormalFrame { vectors: vec![], order: vec![], same_orientation_as_witt: true },
            spin_basis: vec![],
        };
        if let Some(&((i, j), _)) = rep.relation_residuals().iter().find(|(_, r)| !r.is_zero()) {
            return Err(CliffordError::Relation(i + 1, j + 1));
        }
        let base = default_frame();
        let id = Mat::identity(SPINOR_DIM);
        let mut order: Vec<usize> = (0..VECTOR_DIM).collect();
        let mut vol = rep.volume_element(&base);
        if vol == -&id {
            order.swap(0, 1);
            let swapped: Vec<Vector> = order.iter().map(|&k| base[k].clone()).collect();
            vol = rep.volume_element(&swapped);
        }
        if vol != id {
            return Err(CliffordError::Volume);
        }
        let vectors: Vec<Vector> = order.iter().map(|&k| base[k].clone()).collect();
        let det = Mat::from_columns(VECTOR_DIM, &vectors).determinant();
        rep.frame = OrthonormalFrame { vectors, order, same_orientation_as_witt: det.sign().as_i8() > 0 };
        rep.spin_basis = (0..VECTOR_DIM)
            .flat_map(|i| (i + 1..VECTOR_DIM).map(move |j| (i, j)))
            .map(|(i, j)| {
                let a = rep.phi_of(&rep.frame.vectors[i]);
                let b = rep.phi_of(&rep.frame.vectors[j]);
                &a * &b
            })
            .collect();
        Ok(rep)
    }

    pub fn phi(&self, i: usize) -> &Mat {
        &self.phi[i]
    }

    pub fn matrices(&self) -> &[Mat] {
        &self.phi
    }

    pub fn metric(&self) -> &SymmetricForm {
        &self.metric
    }

    pub fn frame(&self) -> &OrthonormalFrame {
        &self.frame
    }

    /// `Φ(e_i)Φ(e_j)`, 0-based.
    pub fn product(&self, i: usize, j: usize) -> Mat {
        &self.phi[i] * &self.phi[j]
    }

    /// `Φ(v)` for a vector in Witt coordinates.
    pub fn phi_of(&self, v: &Vector) -> Mat {
        let mut m = Mat::zeros(SPINOR_DIM, SPINOR_DIM);
        for (i, c) in v.support() {
            m = &m + &self.phi[i].scale(c);
        }
        m
    }

    /// `v·ψ`
    pub fn act(&self, v: &Vector, psi: &Spinor) -> Spinor {
        let mut out = Vector::zeros(SPINOR_DIM);
        for (i, c) in v.support() {
            out.axpy(c, &self.phi[i].mul_vec(&psi.0));
        }
        Spinor(out)
    }

    /// `Φ(e_i)Φ(e_j) + Φ(e_j)Φ(e_i) + 2⟨e_i,e_j⟩Id` for all 28 pairs `i ≤ j`.
    pub fn relation_residuals(&self) -> Vec<((usize, usize), Mat)> {
        let id = Mat::identity(SPINOR_DIM);
        let mut out = Vec::new();
        for i in 0..VECTOR_DIM {
            for j in i..VECTOR_DIM {
                let anti = &self.product(i, j) + &self.product(j, i);
                let g = self.metric.entry(i, j) * &ExactScalar::from_int(2);
                out.push(((i, j), &anti + &id.scale(&g)));
            }
        }
        out
    }

    pub fn volume_element(&self, frame: &[Vector]) -> Mat {
        frame.iter().fold(Mat::identity(SPINOR_DIM), |acc, v| &acc * &self.phi_of(v))
    }

    /// The 21 products `Φ(ê_i)Φ(ê_j)`, `i < j`, in lexicographic order.
    pub fn spin_basis(&self) -> &[Mat] {
        &self.spin_basis
    }

    pub fn spin_coordinates(&self, m: &Mat) -> Option<Vector> {
        let basis: Vec<Vector> = self.spin_basis.iter().map(Mat::flatten).collect();
        coordinates(&basis, &m.flatten())
    }

    /// The matrix `A` with `[ξ, Φ(v)] = Φ(A v)`, if it exists.
    pub fn so_action(&self, xi: &Mat) -> Option<Mat> {
        let basis: Vec<Vector> = self.phi.iter().map(Mat::flatten).collect();
        let cols: Option<Vec<Vector>> = self
            .phi
            .iter()
            .map(|p| coordinates(&basis, &xi.commutator(p).flatten()))
            .collect();
        Some(Mat::from_columns(VECTOR_DIM, &cols?))
    }

    /// `Ã = ¼ Σ_j Φ(b^j) Φ(A b_j)` with `b^j` the metric-dual basis. The
    /// result is checked to satisfy `[Ã, Φ(v)] = Φ(A v)` on every basis vector.
    pub fn spin_lift(&self, a: &Mat) -> Result<SpinElement, CliffordError> {
        if a.rows() != VECTOR_DIM || a.cols() != VECTOR_DIM || !self.metric.is_skew(a) {
            return Err(CliffordError::NotSkew);
        }
        let ginv = self.metric.gram().inverse().expect("nondegenerate metric");
        let mut out = Mat::zeros(SPINOR_DIM, SPINOR_DIM);
        for j in 0..VECTOR_DIM {
            let ab = a.column(j);
            if ab.is_zero() {
                continue;
            }
            let dual = ginv.column(j);
            out = &out + &(&self.phi_of(&dual) * &self.phi_of(&ab));
        }
        let out = out.scale(&ExactScalar::from_ratio(1, 4));
        if self.so_action(&out).as_ref() != Some(a) {
            return Err(CliffordError::NotSkew);
        }
        SpinElement::new(self, out)
    }

    /// Basis of `{ξ ∈ spin : ξ·ψ = 0 for every given ψ}`; with no spinors,
    /// the whole spin algebra.
    pub fn stabilizer_algebra(&self, spinors: &[Spinor]) -> Stabilizer {
        let n = self.spin_basis.len();
        let rows = SPINOR_DIM * spinors.len();
        let mut m = Mat::zeros(rows, n);
        for (s, psi) in spinors.iter().enumerate() {
            for (k, b) in self.spin_basis.iter().enumerate() {
                let col = b.mul_vec(&psi.0);
                for r in 0..SPINOR_DIM {
                    m[(s * SPINOR_DIM + r, k)] = col[r].clone();
                }
            }
        }
        let basis: Vec<Mat> = kernel(&m)
            .into_iter()
            .map(|x| {
                let mut acc = Mat::zeros(SPINOR_DIM, SPINOR_DIM);
                for (k, c) in x.support() {
                    acc = &acc + &self.spin_basis[k].scale(c);
                }
                acc
            })
            .collect();
        let mut bracket_closed = true;
        'outer: for (i, a) in basis.iter().enumerate() {
            for b in &basis[i + 1..] {
                let c = a.commutator(b);
                if spinors.iter().any(|psi| !c.mul_vec(&psi.0).is_zero()) {
                    bracket_closed = false;
                    break 'outer;
                }
            }
        }
        Stabilizer { basis, bracket_closed }
    }

    /// The 8×7 matrix of `X ↦ X·φ`.
    pub fn clifford_map(&self, phi: &Spinor) -> Mat {
        let cols: Vec<Vector> = self.phi.iter().map(|p| p.mul_vec(&phi.0)).collect();
        Mat::from_columns(SPINOR_DIM, &cols)
    }

    /// `U_φ = {X : X·φ = 0}`. For nonzero isotropic φ the report also checks
    /// that `U_φ` is 3-dimensional and totally isotropic and that `U_φ^⊥·φ ⊆ ℝφ`.
    pub fn kernel_space(&self, phi: &Spinor) -> KernelSpace {
        let basis = kernel(&self.clifford_map(phi));
        let mut report = Report::new();
        let isotropic = SpinorForm::standard().is_isotropic(phi);
        if isotropic && !phi.is_zero() {
            report.check("dim U = 3", basis.len() == 3, || format!("dim = {}", basis.len()));
            let mut bad = Vec::new();
            for (i, u) in basis.iter().enumerate() {
                for v in &basis[i..] {
                    if !self.metric.eval(u, v).is_zero() {
                        bad.push(format!("<{u}, {v}> != 0"));
                    }
                }
            }
            report.check_all("U totally isotropic", bad);
            let lowered: Vec<Vector> = basis.iter().map(|u| self.metric.lower(u)).collect();
            let perp = if lowered.is_empty() {
                (0..VECTOR_DIM).map(|i| Vector::unit(VECTOR_DIM, i)).collect()
            } else {
                kernel(&Mat::from_fn(lowered.len(), VECTOR_DIM, |i, j| lowered[i][j].clone()))
            };
            let line = Subspace::span(SPINOR_DIM, [phi.0.clone()]);
            let bad: Vec<String> = perp
                .iter()
                .filter(|w| !line.contains(&self.act(w, phi).0))
                .map(|w| format!("{w}·φ not in Rφ"))
                .collect();
            report.check_all("U^perp·φ in Rφ", bad);
        }
        KernelSpace { basis, report }
    }

    /// For non-isotropic ψ: `X ↦ X·ψ` has rank 7 and image in `ψ^⊥`.
    pub fn nonisotropic_map_report(&self, psi: &Spinor) -> Report {
        let mut r = Report::new();
        let m = self.clifford_map(psi);
        let rk = rank(&m);
        r.check("X·ψ has rank 7", rk == VECTOR_DIM, || format!("rank = {rk}"));
        let form = SpinorForm::standard();
        let bad: Vec<String> = (0..VECTOR_DIM)
            .filter(|&k| !form.eval(&Spinor(m.column(k)), psi).is_zero())
            .map(|k| format!("<e{}·ψ, ψ> != 0", k + 1))
            .collect();
        r.check_all("image in ψ^perp", bad);
        r
    }

    /// The eight named generators of the stabilizer of `s1+s5` and `s6`.
    pub fn pair_stabilizer_generators(&self) -> Vec<(&'static str, Mat)> {
        let r2 = ExactScalar::sqrt2();
        let ee = |i: usize, j: usize| self.product(i - 1, j - 1);
        let n1 = &ee(3, 5) - &ee(2, 4).scale(&r2);
        let n2 = &ee(3, 6) + &ee(1, 4).scale(&r2);
        let n3 = &ee(1, 2) + &ee(3, 4).scale(&r2);
        vec![
            ("e1e5-e2e6", &ee(1, 5) - &ee(2, 6)),
            ("e1e6", ee(1, 6)),
            ("e2e5", ee(2, 5)),
            ("Z1", ee(1, 3)),
            ("Z2", ee(2, 3)),
            ("N1", n1),
            ("N2", n2),
            ("N3", n3),
        ]
    }

    /// Bracket relations among the named generators.
    pub fn check_pair_stabilizer_structure(&self) -> Report {
        let mut r = Report::new();
        let g = self.pair_stabilizer_generators();
        let get = |name: &str| g.iter().find(|(n, _)| *n == name).map(|(_, m)| m.clone()).unwrap();
        let (h, x, y) = (get("e1e5-e2e6"), get("e1e6"), get("e2e5"));
        let (z1, z2, n1, n2, n3) = (get("Z1"), get("Z2"), get("N1"), get("N2"), get("N3"));
        let mut expect = |name: &str, lhs: Mat, rhs: Mat| {
            let diff = &lhs - &rhs;
            r.check(name, diff.is_zero(), || format!("residual {diff:?}"));
        };
        let s = ExactScalar::from_int;
        expect("[N1,N2] = -4 N3", n1.commutator(&n2), n3.scale(&s(-4)));
        expect("[N1,N3] = 6 Z2", n1.commutator(&n3), z2.scale(&s(6)));
        expect("[N2,N3] = -6 Z1", n2.commutator(&n3), z1.scale(&s(-6)));
        expect("[Z1,Z2] = 0", z1.commutator(&z2), Mat::zeros(SPINOR_DIM, SPINOR_DIM));

        let hx = h.commutator(&x).flatten().multiple_of(&x.flatten());
        let hy = h.commutator(&y).flatten().multiple_of(&y.flatten());
        let xy = x.commutator(&y).flatten().multiple_of(&h.flatten());
        let sl2 = match (&hx, &hy, &xy) {
            (Some(a), Some(b), Some(c)) => !a.is_zero() && (a + b).is_zero() && !c.is_zero(),
            _ => false,
        };
        r.check("sl2 relations for e1e6, e2e5, e1e5-e2e6", sl2, || {
            format!("[H,X] = {hx:?} X, [H,Y] = {hy:?} Y, [X,Y] = {xy:?} H")
        });
        if let (Some(a), Some(c)) = (&hx, &xy) {
            r.quantity("[H,X]/X", a.to_string());
            r.quantity("[X,Y]/H", c.to_string());
        }

        let m_elems = [&z1, &z2, &n1, &n2, &n3];
        let bad: Vec<String> = [("Z1", &z1), ("Z2", &z2)]
            .iter()
            .flat_map(|(n, z)| {
                m_elems
                    .iter()
                    .enumerate()
                    .filter(|(_, m)| !z.commutator(m).is_zero())
                    .map(move |(k, _)| format!("[{n}, m{k}] != 0"))
            })
            .collect();
        r.check_all("Z1, Z2 central in m", bad);

        let m_span = Subspace::span(SPINOR_DIM * SPINOR_DIM, m_elems.iter().map(|m| m.flatten()));
        let bad: Vec<String> = g
            .iter()
            .flat_map(|(hn, hm)| {
                let m_span = &m_span;
                m_elems
                    .iter()
                    .enumerate()
                    .filter(move |(_, m)| !m_span.contains(&hm.commutator(m).flatten()))
                    .map(move |(k, _)| format!("[{hn}, m{k}] not in m"))
            })
            .collect();
        r.check_all("m is an ideal", bad);

        let spinors = [Spinor::from_ints(&[1, 0, 0, 0, 1, 0, 0, 0]), Spinor::basis(5)];
        let bad: Vec<String> = g
            .iter()
            .filter(|(_, m)| spinors.iter().any(|p| !m.mul_vec(&p.0).is_zero()))
            .map(|(n, _)| format!("{n} does not annihilate both spinors"))
            .collect();
        r.check_all("generators annihilate s1+s5 and s6", bad);

        let stab = self.stabilizer_algebra(&spinors);
        let stab_span = Subspace::span(SPINOR_DIM * SPINOR_DIM, stab.basis.iter().map(Mat::flatten));
        let gen_span = Subspace::span(SPINOR_DIM * SPINOR_DIM, g.iter().map(|(_, m)| m.flatten()));
        r.check("generators span the pair stabilizer", stab_span == gen_span, || {
            format!("dim stab = {}, dim span = {}", stab_span.dim(), gen_span.dim())
        });
        r
    }
}

#[derive(Debug, Clone)]
pub struct Stabilizer {
    pub basis: Vec<Mat>,
    pub bracket_closed: bool,
}

impl Stabilizer {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Debug, Clone)]
pub struct KernelSpace {
    pub basis: Vec<Vector>,
    pub report: Report,
}

/// Every invariant of the representation in one report.
pub fn spinor_audit(rep: &CliffordRep) -> Report {
    let mut r = Report::new();
    let residuals = rep.relation_residuals();
    let bad: Vec<String> = residuals
        .iter()
        .filter(|(_, m)| !m.is_zero())
        .map(|((i, j), _)| format!("(e{}, e{})", i + 1, j + 1))
        .collect();
    r.check_all(format!("Clifford relations ({} pairs)", residuals.len()), bad);

    let vol = rep.volume_element(&rep.frame.vectors);
    r.check("volume element = +Id", vol == Mat::identity(SPINOR_DIM), || format!("{vol:?}"));
    r.quantity("frame order", json!(rep.frame.order.iter().map(|k| k + 1).collect::<Vec<_>>()));
    r.quantity("frame orientation matches e1..e7", rep.frame.same_orientation_as_witt);

    let form = SpinorForm::standard();
    let (n, bad) = form.invariance_failures(rep);
    r.check_all(
        format!("spinor form invariance ({n} instances)"),
        bad.iter().map(|(k, a, b)| format!("(e{}, s{}, s{})", k + 1, a + 1, b + 1)).collect(),
    );
    let sig = form.form().signature();
    r.quantity("spinor form signature", sig.to_string());

    let mut bad = Vec::new();
    for (k, b) in rep.spin_basis().iter().enumerate() {
        match rep.so_action(b).map(|a| rep.spin_lift(&a)) {
            Some(Ok(lift)) if lift.matrix() == b => {}
            _ => bad.push(format!("spin basis element {k}")),
        }
    }
    r.check_all("spin lift round trip (21 elements)", bad);

    let z1 = rep.product(0, 2);
    let ok = rep.so_action(&z1).and_then(|a| rep.spin_lift(&a).ok()).map(|l| l.into_matrix()) == Some(z1);
    r.check("lift of the so-image of e1e3 is e1e3", ok, String::new);

    let psi = Spinor::from_ints(&[1, 0, 0, 0, 1, 0, 0, 0]);
    let s6 = Spinor::basis(5);
    for (name, spinors, expected) in
        [("stab(s1+s5)", vec![psi.clone()], 14), ("stab(s1+s5, s6)", vec![psi.clone(), s6.clone()], 8)]
    {
        let st = rep.stabilizer_algebra(&spinors);
        r.check(format!("dim {name} = {expected}"), st.dim() == expected, || format!("dim = {}", st.dim()));
        r.check(format!("{name} bracket-closed"), st.bracket_closed, String::new);
        r.quantity(format!("dim {name}"), st.dim());
    }
    r.absorb("pair stabilizer", rep.check_pair_stabilizer_structure());

    let ks = rep.kernel_space(&s6);
    let expected = Subspace::span(VECTOR_DIM, (0..3).map(|i| Vector::unit(VECTOR_DIM, i)));
    let got = Subspace::span(VECTOR_DIM, ks.basis.iter().cloned());
    r.check("U(s6) = span{e1,e2,e3}", got == expected, || format!("{:?}", ks.basis));
    r.absorb("U(s6)", ks.report);
    r.absorb("X·(s1+s5)", rep.nonisotropic_map_report(&psi));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep() -> CliffordRep {
        CliffordRep::standard().unwrap()
    }

    #[test]
    fn e4_squares_to_identity() {
        let r = rep();
        assert_eq!(r.product(3, 3), Mat::identity(8));
    }

    #[test]
    fn e1_squares_to_zero() {
        assert!(rep().product(0, 0).is_zero());
    }

    #[test]
    fn e1_e5_anticommutator() {
        let r = rep();
        let anti = &r.product(0, 4) + &r.product(4, 0);
        assert_eq!(anti, Mat::identity(8).scale(&ExactScalar::from_int(-2)));
    }

    #[test]
    fn actions() {
        let r = rep();
        let s2 = Spinor::basis(1);
        let out = r.act(&Vector::unit(7, 2), &s2);
        assert_eq!(out, Spinor::basis(0).scale(&-ExactScalar::sqrt2()));
        assert!(r.act(&Vector::zeros(7), &s2).is_zero());
        let psi = Spinor::from_ints(&[1, 0, 0, 0, 1, 0, 0, 0]);
        assert_eq!(r.act(&Vector::unit(7, 3), &psi), Spinor::from_ints(&[1, 0, 0, 0, -1, 0, 0, 0]));
    }

    #[test]
    fn frame_needs_one_swap() {
        let f = rep().frame().clone();
        assert_eq!(f.order, vec![1, 0, 2, 3, 4, 5, 6]);
        assert!(!f.same_orientation_as_witt);
    }

    #[test]
    fn corrupted_table_is_rejected() {
        let mut phi = standard_phi_matrices();
        phi[2][(0, 1)] = ExactScalar::sqrt2();
        assert!(matches!(CliffordRep::new(phi, SymmetricForm::witt()), Err(CliffordError::Relation(..))));
    }

    #[test]
    fn zero_lift() {
        assert!(rep().spin_lift(&Mat::zeros(7, 7)).unwrap().matrix().is_zero());
    }

    #[test]
    fn lift_rejects_non_skew() {
        assert_eq!(rep().spin_lift(&Mat::identity(7)), Err(CliffordError::NotSkew));
    }

    #[test]
    fn stabilizer_of_nothing_is_everything() {
        assert_eq!(rep().stabilizer_algebra(&[]).dim(), SPIN_DIM);
    }

    #[test]
    fn sl2_coefficients() {
        let r = rep().check_pair_stabilizer_structure();
        assert!(r.all_pass(), "{r}");
        assert_eq!(r.quantities["[H,X]/X"], "-4");
        assert_eq!(r.quantities["[X,Y]/H"], "-2");
    }

    #[test]
    fn kernel_spaces() {
        let r = rep();
        let psi = Spinor::from_ints(&[1, 0, 0, 0, 1, 0, 0, 0]);
        assert!(r.kernel_space(&psi).basis.is_empty());
        assert_eq!(r.kernel_space(&Spinor::zero()).basis.len(), 7);
    }

    #[test]
    fn audit_passes() {
        let r = spinor_audit(&rep());
        assert!(r.all_pass(), "{r}");
    }
}
