//! Nice 3-forms and cross products on a seven-dimensional quadratic space,
//! and the cross product attached to a non-isotropic spinor.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clifford::{CliffordRep, Spinor, SpinorForm, VECTOR_DIM};
use crate::linalg::{kernel, solve, AltForm, Mat, SymmetricForm, Vector};
use crate::report::Report;
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum G2Error {
    #[error("basis is not a Witt basis for the metric")]
    NotWitt,
    #[error("metric is degenerate")]
    DegenerateMetric,
    #[error("spinor is isotropic")]
    IsotropicSpinor,
    #[error("no unique solution for b({0}, {1})")]
    NoSolution(usize, usize),
    #[error("expected dimension {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

/// `√2 σ¹²⁷ + √2 σ³⁵⁶ + σ¹⁴⁵ + σ²⁴⁶ − σ³⁴⁷`, i.e.
/// `√2(σ¹²⁷+σ³⁵⁶) − σ⁴∧(σ¹⁵+σ²⁶−σ³⁷)` in the dual of a Witt basis.
pub fn omega0_coefficients() -> AltForm {
    let r2 = ExactScalar::sqrt2();
    let one = ExactScalar::one();
    AltForm::with_terms(
        VECTOR_DIM,
        3,
        [
            (vec![0, 1, 6], r2.clone()),
            (vec![2, 4, 5], r2),
            (vec![3, 0, 4], -&one),
            (vec![3, 1, 5], -&one),
            (vec![3, 2, 6], one),
        ],
    )
    .expect("valid indices")
}

/// A 3-form on a quadratic space, optionally with a basis in which it takes
/// the standard shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GStructure {
    pub omega: AltForm,
    pub metric: SymmetricForm,
    /// Columns `b1..b7` of a Witt basis in which ω has the standard shape.
    pub witt_witness: Option<Vec<Vector>>,
}

impl GStructure {
    /// The standard form on the standard Witt space.
    pub fn omega0() -> Self {
        GStructure {
            omega: omega0_coefficients(),
            metric: SymmetricForm::witt(),
            witt_witness: Some((0..VECTOR_DIM).map(|i| Vector::unit(VECTOR_DIM, i)).collect()),
        }
    }

    /// The form that is standard in the dual of `basis`.
    pub fn omega0_on(metric: SymmetricForm, basis: Vec<Vector>) -> Result<Self, G2Error> {
        if metric.dim() != VECTOR_DIM || basis.len() != VECTOR_DIM {
            return Err(G2Error::Dimension { expected: VECTOR_DIM, got: basis.len() });
        }
        let b = Mat::from_columns(VECTOR_DIM, &basis);
        if metric.congruent(&b) != SymmetricForm::witt() {
            return Err(G2Error::NotWitt);
        }
        let binv = b.inverse().ok_or(G2Error::NotWitt)?;
        let omega = omega0_coefficients().pullback(&binv);
        Ok(GStructure { omega, metric, witt_witness: Some(basis) })
    }

    /// `Some(true)` when the witness is a Witt basis and ω has the standard
    /// coefficients in its dual basis; `None` without a witness.
    pub fn witness_holds(&self) -> Option<bool> {
        let basis = self.witt_witness.as_ref()?;
        if basis.len() != VECTOR_DIM || self.metric.dim() != VECTOR_DIM {
            return Some(false);
        }
        let b = Mat::from_columns(VECTOR_DIM, basis);
        Some(
            self.metric.congruent(&b) == SymmetricForm::witt()
                && self.omega.pullback(&b) == omega0_coefficients(),
        )
    }

    /// Sign of the witness determinant in ambient coordinates, which fixes
    /// the orientation ω induces.
    pub fn witness_orientation(&self) -> Option<i8> {
        let basis = self.witt_witness.as_ref()?;
        Some(Mat::from_columns(basis[0].len(), basis).determinant().sign().as_i8())
    }
}

#[derive(Serialize, Deserialize)]
struct GStructureRepr {
    dim: usize,
    omega: BTreeMap<String, ExactScalar>,
    metric: Mat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witt_witness: Option<Vec<Vector>>,
}

impl Serialize for GStructure {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GStructureRepr {
            dim: self.omega.dim(),
            omega: self.omega.to_key_map(),
            metric: self.metric.gram().clone(),
            witt_witness: self.witt_witness.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GStructure {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = GStructureRepr::deserialize(deserializer)?;
        let omega = AltForm::from_key_map(r.dim, 3, &r.omega).map_err(D::Error::custom)?;
        let metric = SymmetricForm::new(r.metric).map_err(D::Error::custom)?;
        if metric.dim() != r.dim {
            return Err(D::Error::custom("metric dimension does not match form"));
        }
        Ok(GStructure { omega, metric, witt_witness: r.witt_witness })
    }
}

/// A bilinear map given by its values on basis pairs. The full table is
/// stored, so antisymmetry is a checked property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossProduct {
    table: Vec<Vec<Vector>>,
    pub metric: SymmetricForm,
}

impl CrossProduct {
    pub fn zero(metric: SymmetricForm) -> Self {
        let n = metric.dim();
        CrossProduct { table: vec![vec![Vector::zeros(n); n]; n], metric }
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    /// `b(e_i, e_j)`
    pub fn get(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    /// Set a single table entry, leaving `b(e_j, e_i)` alone.
    pub fn set_entry(&mut self, i: usize, j: usize, v: Vector) {
        self.table[i][j] = v;
    }

    /// Set `b(e_i, e_j) = v` and `b(e_j, e_i) = −v`.
    pub fn set_pair(&mut self, i: usize, j: usize, v: Vector) {
        self.table[j][i] = -&v;
        self.table[i][j] = v;
    }

    pub fn apply(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zeros(self.dim());
        for (i, a) in x.support() {
            for (j, b) in y.support() {
                out.axpy(&(a * b), &self.table[i][j]);
            }
        }
        out
    }
}

/// `b(X,Y)` is the vector with `⟨Z, b(X,Y)⟩ = ω(Z,X,Y)` for all Z.
pub fn cross_from_form(g: &GStructure) -> Result<CrossProduct, G2Error> {
    let n = g.metric.dim();
    if !g.metric.is_nondegenerate() {
        return Err(G2Error::DegenerateMetric);
    }
    let mut b = CrossProduct::zero(g.metric.clone());
    for i in 0..n {
        for j in i + 1..n {
            let cov = Vector((0..n).map(|k| g.omega.eval_basis(&[k, i, j])).collect());
            let v = g.metric.raise(&cov).ok_or(G2Error::DegenerateMetric)?;
            b.set_pair(i, j, v);
        }
    }
    Ok(b)
}

/// `ω_b(X,Y,Z) = ⟨X, b(Y,Z)⟩`.
pub fn form_from_cross(b: &CrossProduct) -> AltForm {
    let n = b.dim();
    AltForm::from_fn(n, 3, |idx| {
        b.metric.eval(&Vector::unit(n, idx[0]), b.get(idx[1], idx[2]))
    })
}

/// `b_ψ(X,Y)` is the unique Z with `Z·ψ = XY·ψ + ⟨X,Y⟩ψ`.
pub fn cross_from_spinor(rep: &CliffordRep, psi: &Spinor) -> Result<CrossProduct, G2Error> {
    if SpinorForm::standard().is_isotropic(psi) {
        return Err(G2Error::IsotropicSpinor);
    }
    let map = rep.clifford_map(psi);
    let metric = rep.metric().clone();
    let mut b = CrossProduct::zero(metric.clone());
    for i in 0..VECTOR_DIM {
        for j in 0..VECTOR_DIM {
            let mut rhs = rep.product(i, j).mul_vec(psi.coords());
            rhs.axpy(metric.entry(i, j), psi.coords());
            let z = solve(&map, &rhs)
                .ok()
                .and_then(|s| s.unique())
                .ok_or(G2Error::NoSolution(i, j))?;
            b.set_entry(i, j, z);
        }
    }
    Ok(b)
}

/// Antisymmetry, orthogonality and the double-product identity
/// `b(X,b(X,Y)) = −⟨X,X⟩Y + ⟨X,Y⟩X`. The identities quadratic in X are checked
/// on basis vectors and on all sums `e_i + e_j`, which determines them by
/// polarization.
pub fn check_cross_axioms(b: &CrossProduct) -> Report {
    let n = b.dim();
    let mut r = Report::new();
    let e = |i| Vector::unit(n, i);
    let mut firsts: Vec<(String, Vector)> = (0..n).map(|i| (format!("e{}", i + 1), e(i))).collect();
    for i in 0..n {
        for j in i + 1..n {
            firsts.push((format!("e{}+e{}", i + 1, j + 1), &e(i) + &e(j)));
        }
    }

    let mut bad = Vec::new();
    for i in 0..n {
        for j in i..n {
            let s = b.get(i, j) + b.get(j, i);
            if !s.is_zero() {
                bad.push(format!("b(e{},e{}) + b(e{},e{}) = {s}", i + 1, j + 1, j + 1, i + 1));
            }
        }
    }
    r.check_all("antisymmetry", bad);

    let mut bad = Vec::new();
    for (xn, x) in &firsts {
        for j in 0..n {
            let v = b.metric.eval(x, &b.apply(x, &e(j)));
            if !v.is_zero() {
                bad.push(format!("<{xn}, b({xn},e{})> = {v}", j + 1));
            }
        }
    }
    r.check_all("orthogonality", bad);

    let mut bad = Vec::new();
    for (xn, x) in &firsts {
        let xx = b.metric.eval(x, x);
        for j in 0..n {
            let y = e(j);
            let lhs = b.apply(x, &b.apply(x, &y));
            let mut rhs = y.scale(&-&xx);
            rhs.axpy(&b.metric.eval(x, &y), x);
            if lhs != rhs {
                bad.push(format!("b({xn}, b({xn}, e{})) - rhs = {}", j + 1, &lhs - &rhs));
            }
        }
    }
    r.check_all("double product identity", bad);

    let mut bad = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let a = b.metric.eval(b.get(i, j), &e(k));
                let c = b.metric.eval(b.get(j, k), &e(i));
                let d = b.metric.eval(b.get(i, k), &e(j));
                if a != c || a != -&d {
                    bad.push(format!("<b(e{},e{}),e{}>", i + 1, j + 1, k + 1));
                }
            }
        }
    }
    r.check_all("<b(X,Y),Z> totally antisymmetric", bad);
    r
}

#[derive(Debug, Clone)]
pub struct FormStabilizer {
    pub basis: Vec<Mat>,
}

impl FormStabilizer {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `{A ∈ so(metric) : Σ_slots ω(…, A·, …) = 0}`.
pub fn stabilizer_in_so(g: &GStructure) -> FormStabilizer {
    let n = g.metric.dim();
    let tuples = crate::linalg::increasing_tuples(n, g.omega.degree());
    let gram = g.metric.gram();
    let rows = n * n + tuples.len();
    let mut m = Mat::zeros(rows, n * n);
    for k in 0..n {
        for l in 0..n {
            let col = k * n + l;
            let mut a = Mat::zeros(n, n);
            a[(k, l)] = ExactScalar::one();
            let ga = gram * &a;
            let skew = &ga + &ga.transpose();
            for p in 0..n {
                for q in 0..n {
                    m[(p * n + q, col)] = skew[(p, q)].clone();
                }
            }
            let d = g.omega.derivation(&a);
            for (t, idx) in tuples.iter().enumerate() {
                m[(n * n + t, col)] = d.coeff(idx);
            }
        }
    }
    FormStabilizer { basis: kernel(&m).iter().map(|v| Mat::unflatten(n, n, v)).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    fn e(i: usize) -> Vector {
        Vector::unit(7, i)
    }

    #[test]
    fn omega0_coefficients_as_printed() {
        let w = GStructure::omega0().omega;
        assert_eq!(w.coeff(&[0, 1, 6]), ExactScalar::sqrt2());
        assert_eq!(w.coeff(&[3, 0, 4]), s(-1));
        assert_eq!(w.coeff(&[0, 1, 2]), s(0));
        assert_eq!(GStructure::omega0().witness_holds(), Some(true));
    }

    #[test]
    fn omega0_on_rejects_non_witt_basis() {
        let basis = (0..7).map(|i| Vector::unit(7, i).scale(&s(2))).collect();
        assert_eq!(GStructure::omega0_on(SymmetricForm::witt(), basis), Err(G2Error::NotWitt));
    }

    #[test]
    fn cross_products_of_omega0() {
        let b = cross_from_form(&GStructure::omega0()).unwrap();
        assert_eq!(b.get(0, 1), &e(2).scale(&ExactScalar::sqrt2()));
        assert!(b.get(0, 2).is_zero());
        assert!(b.get(1, 2).is_zero());
        assert_eq!(b.get(3, 2), &e(2));
        assert_eq!(b.get(2, 3), &-&e(2));
        assert_eq!(b.get(0, 3), &e(0));
        assert_eq!(b.get(1, 3), &e(1));
    }

    #[test]
    fn round_trips() {
        let g = GStructure::omega0();
        let b = cross_from_form(&g).unwrap();
        assert_eq!(form_from_cross(&b), g.omega);
        let g2 = GStructure { omega: form_from_cross(&b), ..g };
        assert_eq!(cross_from_form(&g2).unwrap(), b);
    }

    #[test]
    fn spinor_cross_product_matches_form() {
        let rep = CliffordRep::standard().unwrap();
        let psi = Spinor::from_ints(&[1, 0, 0, 0, 1, 0, 0, 0]);
        let bs = cross_from_spinor(&rep, &psi).unwrap();
        assert_eq!(form_from_cross(&bs), omega0_coefficients());
        assert_eq!(bs, cross_from_form(&GStructure::omega0()).unwrap());
        for i in 0..7 {
            assert!(bs.get(i, i).is_zero());
        }
        let doubled = cross_from_spinor(&rep, &psi.scale(&s(2))).unwrap();
        assert_eq!(doubled, bs);
    }

    #[test]
    fn isotropic_spinor_rejected() {
        let rep = CliffordRep::standard().unwrap();
        assert_eq!(cross_from_spinor(&rep, &Spinor::basis(5)), Err(G2Error::IsotropicSpinor));
    }

    #[test]
    fn axioms_hold_for_omega0() {
        let r = check_cross_axioms(&cross_from_form(&GStructure::omega0()).unwrap());
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn zero_product_fails_double_product_identity() {
        let r = check_cross_axioms(&CrossProduct::zero(SymmetricForm::witt()));
        assert_eq!(r.get("double product identity").unwrap().verdict, crate::report::Verdict::Fail);
    }

    #[test]
    fn every_single_negated_entry_is_caught() {
        let b = cross_from_form(&GStructure::omega0()).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                if b.get(i, j).is_zero() {
                    continue;
                }
                let mut m = b.clone();
                m.set_entry(i, j, -b.get(i, j));
                assert!(check_cross_axioms(&m).any_fail(), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn stabilizer_dimensions() {
        assert_eq!(stabilizer_in_so(&GStructure::omega0()).dim(), 14);
        let zero = GStructure { omega: AltForm::zero(7, 3), ..GStructure::omega0() };
        assert_eq!(stabilizer_in_so(&zero).dim(), 21);
        let mut perturbed = GStructure::omega0();
        perturbed.omega.set(&[0, 1, 6], &ExactScalar::sqrt2() * &s(2)).unwrap();
        assert_eq!(stabilizer_in_so(&perturbed).dim(), 8);
    }

    #[test]
    fn json_round_trip() {
        let g = GStructure::omega0();
        let v = serde_json::to_value(&g).unwrap();
        assert!(v["omega"]["0,1,6"].is_array());
        let back: GStructure = serde_json::from_value(v).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn transported_omega0_is_witnessed() {
        // Rescale the hyperbolic pair (e1, e5) to (2e1, e5/2).
        let mut basis: Vec<Vector> = (0..7).map(e).collect();
        basis[0] = e(0).scale(&s(2));
        basis[4] = e(4).scale(&ExactScalar::from_ratio(1, 2));
        let g = GStructure::omega0_on(SymmetricForm::witt(), basis).unwrap();
        assert_eq!(g.witness_holds(), Some(true));
        assert_eq!(g.omega.coeff(&[0, 1, 6]), &ExactScalar::sqrt2() * &ExactScalar::from_ratio(1, 2));
        assert_eq!(stabilizer_in_so(&g).dim(), 14);
    }
}
