//! The three families of solvable symmetric triples with a compatible nice
//! 3-form, as constructors, and the certification pipeline.
//!
//! Built triples use the basis order `Z1, Z2, Z3, A, L1, L2, L3` for `𝔤₋`,
//! followed by `Z_B, (A1), B` for `𝔤₊`, so that the metric on `𝔤₋` is the
//! Witt form and ω has the standard coefficients.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::g2::{check_cross_axioms, cross_from_form, form_from_cross, stabilizer_in_so, GStructure};
use crate::lie::{Indecomposability, LieAlgebra, MetricInvolutiveLie};
use crate::linalg::{kernel, Mat, Signature, Subspace, SymmetricForm, Vector};
use crate::quadext::{
    build_standard_model, standard_frame, LieWithBStructure, OrthogonalModule, QuadExtError, QuadraticCocycle,
};
use crate::report::{Report, Verdict};
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    QuadExt(#[from] QuadExtError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    F1,
    F2a,
    F2b,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::F1 => "1",
            Family::F2a => "2a",
            Family::F2b => "2b",
        })
    }
}

impl FromStr for Family {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().trim_start_matches(['F', 'f']) {
            "1" => Ok(Family::F1),
            "2a" => Ok(Family::F2a),
            "2b" => Ok(Family::F2b),
            _ => Err(CatalogError::InvalidSpec(format!("unknown family {s:?}"))),
        }
    }
}

/// Signature `(neg, pos)` of `𝔞` for the families with `dim 𝔞 = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ASignature {
    #[serde(rename = "1,1")]
    Lorentzian,
    #[serde(rename = "2,0")]
    Definite,
}

impl ASignature {
    pub fn neg_pos(self) -> (usize, usize) {
        match self {
            ASignature::Lorentzian => (1, 1),
            ASignature::Definite => (2, 0),
        }
    }
}

impl fmt::Display for ASignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, p) = self.neg_pos();
        write!(f, "{n},{p}")
    }
}

impl FromStr for ASignature {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace() && !"()".contains(*c)).collect();
        match compact.as_str() {
            "1,1" => Ok(ASignature::Lorentzian),
            "2,0" => Ok(ASignature::Definite),
            _ => Err(CatalogError::InvalidSpec(format!("unknown signature {s:?}, expected 1,1 or 2,0"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_signature: Option<ASignature>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<ExactScalar>,
}

impl FamilySpec {
    pub fn f1(a_signature: ASignature, t: ExactScalar) -> Self {
        FamilySpec { family: Family::F1, a_signature: Some(a_signature), t: Some(t) }
    }

    pub fn f2a(a_signature: ASignature) -> Self {
        FamilySpec { family: Family::F2a, a_signature: Some(a_signature), t: None }
    }

    pub fn f2b() -> Self {
        FamilySpec { family: Family::F2b, a_signature: None, t: None }
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        let bad = |m: &str| Err(CatalogError::InvalidSpec(format!("family {}: {m}", self.family)));
        match (self.family, self.a_signature.is_some(), self.t.is_some()) {
            (Family::F1, true, true) | (Family::F2a, true, false) | (Family::F2b, false, false) => Ok(()),
            (Family::F1, _, _) => bad("needs a signature and t"),
            (Family::F2a, _, _) => bad("needs a signature and no t"),
            (Family::F2b, _, _) => bad("takes no signature and no t"),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.family)?;
        if let Some(s) = self.a_signature {
            write!(f, " a=({s})")?;
        }
        if let Some(t) = &self.t {
            write!(f, " t={t}")?;
        }
        Ok(())
    }
}

/// `F1 × {(1,1), (2,0)} × {−1, 0, 1/2, 1}`, then `F2a` for both signatures,
/// then `F2b`.
pub fn sweep() -> Vec<FamilySpec> {
    let sigs = [ASignature::Lorentzian, ASignature::Definite];
    let ts = [ExactScalar::from_int(-1), ExactScalar::zero(), ExactScalar::from_ratio(1, 2), ExactScalar::one()];
    let mut out = Vec::new();
    for sig in sigs {
        for t in &ts {
            out.push(FamilySpec::f1(sig, t.clone()));
        }
    }
    out.extend(sigs.map(FamilySpec::f2a));
    out.push(FamilySpec::f2b());
    out
}

/// The input data of a family: `(𝔩, θ_𝔩, b_𝔪)`, `𝔞` and `(α, γ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyData {
    pub bst: LieWithBStructure,
    pub module: OrthogonalModule,
    pub cocycle: QuadraticCocycle,
}

pub fn family_data(spec: &FamilySpec) -> Result<FamilyData, CatalogError> {
    spec.validate()?;
    // 𝔩 basis: L1, L2, L3, B; 𝔞 basis: A, then A1 if present.
    let (l1, l2, l3, b) = (0, 1, 2, 3);
    let (neg, pos) = spec.a_signature.map_or((1, 0), ASignature::neg_pos);
    let module = OrthogonalModule::standard(neg, pos, 4);
    let na = module.dim();
    let a = Vector::unit(na, 0);
    let mut c = QuadraticCocycle::zero(4, na);
    let bst = match spec.family {
        Family::F1 => {
            c.add_alpha(b, l2, &a.scale(&-&ExactScalar::sqrt2()))?;
            c.add_alpha(l1, l3, &Vector::unit(na, 1))?;
            c.add_gamma(b, l1, l3, spec.t.as_ref().expect("validated"))?;
            LieWithBStructure::g41()
        }
        Family::F2a | Family::F2b => {
            c.add_alpha(b, l3, &a)?;
            if spec.family == Family::F2a {
                c.add_alpha(l1, l3, &Vector::unit(na, 1))?;
            }
            c.add_gamma(b, l1, l2, &ExactScalar::inv_sqrt2())?;
            LieWithBStructure::r_plus_heisenberg()
        }
    };
    Ok(FamilyData { bst, module, cocycle: c })
}

/// Where the ideal `𝔩*₋` and the vector `A` sit in `𝔤₋`, in coordinates of
/// the minus basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealMarkers {
    pub ideal_minus: Vec<Vector>,
    pub time_like: Vector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub spec: Option<FamilySpec>,
    pub triple: MetricInvolutiveLie,
    pub omega: GStructure,
    pub markers: IdealMarkers,
}

pub fn build_family(spec: &FamilySpec) -> Result<CatalogEntry, CatalogError> {
    let data = family_data(spec)?;
    build_from_data(Some(spec.clone()), &data)
}

/// Build the standard model of `data` and reorder it canonically. Expects
/// the catalog layout: `𝔪 = span{e0, e1}`, `b_𝔪(e0, e1) = √2 e2`, `A = e0`.
pub fn build_from_data(spec: Option<FamilySpec>, data: &FamilyData) -> Result<CatalogEntry, CatalogError> {
    let model = build_standard_model(&data.bst.l, &data.bst.theta, &data.module, &data.cocycle)?;
    let lay = model.layout;
    let [m1, m2] = data.bst.m();
    let frame = standard_frame(&model, &data.bst, &data.module, m1, m2)?;
    let mut perm = vec![lay.z(0), lay.z(1), lay.z(2), lay.a(0), lay.l(0), lay.l(1), lay.l(2)];
    perm.extend((0..lay.dim()).filter(|i| !perm.contains(i)).collect::<Vec<_>>());
    let triple = model.triple.permute(&perm).map_err(QuadExtError::from)?;
    let pt = crate::lie::permutation_matrix(&perm).transpose();
    let witness = frame
        .iter()
        .map(|v| triple.minus_coordinates(&pt.mul_vec(v)))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| QuadExtError::BStructure("frame leaves d-".into()))?;
    let omega = GStructure::omega0_on(triple.minus_metric(), witness.clone()).map_err(QuadExtError::from)?;
    let markers = IdealMarkers { ideal_minus: witness[..3].to_vec(), time_like: witness[3].clone() };
    Ok(CatalogEntry { spec, triple, omega, markers })
}

#[derive(Serialize, Deserialize)]
struct TripleFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    spec: Option<FamilySpec>,
    algebra: LieAlgebra,
    theta: Mat,
    metric: Mat,
    plus_basis: Vec<Vector>,
    minus_basis: Vec<Vector>,
    /// ω in coordinates of `minus_basis`.
    g2_structure: GStructure,
    markers: IdealMarkers,
}

impl Serialize for CatalogEntry {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TripleFile {
            spec: self.spec.clone(),
            algebra: self.triple.alg.clone(),
            theta: self.triple.theta.clone(),
            metric: self.triple.ip.gram().clone(),
            plus_basis: self.triple.plus().to_vec(),
            minus_basis: self.triple.minus().to_vec(),
            g2_structure: self.omega.clone(),
            markers: self.markers.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CatalogEntry {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let f = TripleFile::deserialize(deserializer)?;
        let ip = SymmetricForm::new(f.metric).map_err(D::Error::custom)?;
        let triple = MetricInvolutiveLie::new(f.algebra, f.theta, ip)
            .and_then(|t| t.with_bases(f.plus_basis, f.minus_basis))
            .map_err(D::Error::custom)?;
        Ok(CatalogEntry { spec: f.spec, triple, omega: f.g2_structure, markers: f.markers })
    }
}

/// The full pipeline; every failure is recorded rather than returned.
pub fn certify(entry: &CatalogEntry) -> Report {
    let t = &entry.triple;
    let mut r = Report::new();
    if let Some(spec) = &entry.spec {
        r.quantity("spec", spec.to_string());
    }
    r.quantity("dim", t.dim());

    r.absorb("", t.alg.jacobi_report());
    r.absorb("axioms", t.metric_invariance());

    let sig = t.minus_signature();
    r.quantity("signature of g-", sig.to_string());
    r.check("signature of g- is (4,3)", sig == Signature::new(4, 3, 0), || format!("got {sig}"));

    let g = GStructure {
        omega: entry.omega.omega.clone(),
        metric: t.minus_metric(),
        witt_witness: entry.omega.witt_witness.clone(),
    };
    let shape_ok = g.omega.dim() == 7 && g.omega.degree() == 3 && g.metric.dim() == 7;
    r.check("omega is a 3-form on g-", shape_ok, || {
        format!("degree {} on dimension {}, dim g- = {}", g.omega.degree(), g.omega.dim(), g.metric.dim())
    });
    if !shape_ok {
        return r;
    }
    r.check("witt witness", g.witness_holds() == Some(true), || match g.witness_holds() {
        None => "no witness".into(),
        Some(_) => "witness is not a Witt basis with standard coefficients".into(),
    });
    let stab = stabilizer_in_so(&g).dim();
    r.quantity("stabilizer dimension", stab);
    r.check("stabilizer dimension 14", stab == 14, || format!("got {stab}"));

    let hol = t.holonomy();
    match &hol {
        None => r.check("g+ invariance of omega", false, || "ad(g+) does not preserve g-".into()),
        Some(h) => {
            let bad = h
                .matrices
                .iter()
                .enumerate()
                .filter_map(|(k, m)| {
                    let d = g.omega.derivation(m);
                    (!d.is_zero()).then(|| format!("plus{k}: {d}"))
                })
                .collect();
            r.check_all("g+ invariance of omega", bad);
        }
    }

    let kf = t.alg.killing_form();
    r.check("killing form vanishes", kf.gram().is_zero(), || format!("{:?}", kf.gram()));
    let lcs = t.alg.lower_central_series();
    r.quantity("lower central series", serde_json::json!(lcs));
    let class = t.alg.nilpotency_class();
    if let Some(c) = class {
        r.quantity("nilpotency class", c);
    }
    r.check("nilpotent", class.is_some(), || format!("lower central series {lcs:?} stalls"));

    if let Some(h) = &hol {
        r.quantity("holonomy dimension", h.span_dim);
        r.quantity("holonomy abelian", h.abelian);
        r.check("holonomy abelian", h.abelian, || "ad(g+)|g- do not commute".into());
        let plus = t.plus().len();
        let note = if h.span_dim == 3 { String::new() } else { format!(" (differs from 3, dim g+ = {plus})") };
        r.push(
            "holonomy dimension equals dim g+",
            Verdict::from_bool(h.span_dim == plus),
            format!("span {}{note}", h.span_dim),
        );
    }

    match t.indecomposability() {
        Ok(Indecomposability::Indecomposable { commutant, quotient_dim }) => {
            r.quantity("commutant dimension", commutant.len());
            r.quantity("commutant quotient dimension", quotient_dim);
            r.push("indecomposable", Verdict::Pass, format!("dim C/rad = {quotient_dim}"));
        }
        Ok(Indecomposability::Decomposable { .. }) => {
            r.push("indecomposable", Verdict::Fail, "found an orthogonal invariant splitting")
        }
        Ok(Indecomposability::Inconclusive { commutant_dim, quotient_dim }) => {
            r.quantity("commutant dimension", commutant_dim);
            r.quantity("commutant quotient dimension", quotient_dim);
            r.push("indecomposable", Verdict::Inconclusive, format!("dim C = {commutant_dim}, dim C/rad = {quotient_dim}"))
        }
        Err(e) => r.push("indecomposable", Verdict::Fail, e.to_string()),
    }

    match cross_from_form(&g) {
        Ok(b) => {
            r.absorb("cross", check_cross_axioms(&b));
            let back = form_from_cross(&b);
            r.check("cross round trip", back == g.omega, || format!("{back} vs {}", g.omega));
        }
        Err(e) => r.push("cross", Verdict::Fail, e.to_string()),
    }
    r.absorb("ideal", ideal_structure_check(t, &g, &entry.markers));
    r
}

/// Structure of the cross product relative to the isotropic ideal `𝔦₋`:
/// `b(𝔦₋^⊥, 𝔦₋^⊥) ⊆ 𝔦₋`; `𝔫* = b(𝔦₋, 𝔦₋)` is nonzero with `b(𝔫*, 𝔦₋) = 0`
/// and `b(𝔫*, 𝔦₋^⊥) = 𝔫*`; and `b(A, U)` is a positive multiple of `U ∈ 𝔫*`.
pub fn ideal_structure_check(triple: &MetricInvolutiveLie, omega: &GStructure, markers: &IdealMarkers) -> Report {
    let mut r = Report::new();
    let metric = triple.minus_metric();
    let n = metric.dim();
    let g = GStructure { omega: omega.omega.clone(), metric: metric.clone(), witt_witness: None };
    let b = match cross_from_form(&g) {
        Ok(b) => b,
        Err(e) => {
            r.push("cross product", Verdict::Fail, e.to_string());
            return r;
        }
    };
    let ideal = &markers.ideal_minus;
    let i_sp = Subspace::span(n, ideal.iter().cloned());
    let isotropic = ideal.iter().all(|x| ideal.iter().all(|y| metric.eval(x, y).is_zero()));
    r.check("ideal isotropic", isotropic, || "<i-, i-> != 0".into());
    let rows = Mat::from_fn(ideal.len(), n, |k, j| metric.lower(&ideal[k])[j].clone());
    let perp = kernel(&rows);
    r.quantity("dim i-perp", perp.len());

    let mut bad = Vec::new();
    for (p, x) in perp.iter().enumerate() {
        for (q, y) in perp.iter().enumerate().skip(p + 1) {
            let v = b.apply(x, y);
            if !i_sp.contains(&v) {
                bad.push(format!("b(perp{p}, perp{q}) = {v}"));
            }
        }
    }
    r.check_all("(i) b(i-perp, i-perp) in i-", bad);

    let nstar = Subspace::span(n, ideal.iter().flat_map(|x| ideal.iter().map(|y| b.apply(x, y))));
    r.quantity("dim n*", nstar.dim());
    r.check("(ii) n* nonzero", !nstar.is_zero(), || "b(i-, i-) = 0".into());
    let killed = nstar.basis().iter().all(|u| ideal.iter().all(|x| b.apply(u, x).is_zero()));
    r.check("(ii) b(n*, i-) = 0", killed, || "nonzero product".into());
    let moved = Subspace::span(n, nstar.basis().iter().flat_map(|u| perp.iter().map(|x| b.apply(u, x))));
    r.check("(ii) b(n*, i-perp) = n*", moved == nstar, || format!("dim {} vs {}", moved.dim(), nstar.dim()));

    let a = &markers.time_like;
    let perp_sp = Subspace::span(n, perp.iter().cloned());
    let placed = perp_sp.contains(a) && !i_sp.contains(a);
    r.check("A in i-perp outside i-", placed, || format!("A = {a}"));
    let mut bad = Vec::new();
    for (k, u) in nstar.basis().iter().enumerate() {
        match b.apply(a, u).multiple_of(u) {
            Some(c) if c.sign().as_i8() > 0 => {}
            other => bad.push(format!("b(A, U{k}) = {} ({other:?})", b.apply(a, u))),
        }
    }
    r.check_all("A positively oriented", bad);
    r
}
