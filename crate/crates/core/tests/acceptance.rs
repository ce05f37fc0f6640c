//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::process::ExitCode;

use g2syms_core::catalog::{build_family, certify, family_data, sweep, ASignature, Family, FamilySpec};
use g2syms_core::clifford::{spinor_audit, CliffordRep, Spinor, SPIN_DIM};
use g2syms_core::g2::{check_cross_axioms, cross_from_form, cross_from_spinor, stabilizer_in_so, GStructure};
use g2syms_core::linalg::{increasing_tuples, AltForm, Mat, Signature, SymmetricForm};
use g2syms_core::quadext::{
    apply_transformation, build_equivalence_map, build_standard_model, check_cocycle_conditions, standard_omega,
    verify_equivalence, CochainTransformation,
};
use g2syms_core::report::Report;
use g2syms_core::scalar::ExactScalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passes(r: &Report, names: &[&str]) -> Result<(), String> {
    for n in names {
        match r.get(n) {
            Some(c) if c.verdict.is_pass() => {}
            Some(c) => return Err(format!("{n}: {}", c.details)),
            None => return Err(format!("{n}: missing")),
        }
    }
    Ok(())
}

fn failed_names(r: &Report) -> Vec<String> {
    r.failures().map(|c| c.name.clone()).collect()
}

fn s1_plus_s5() -> Spinor {
    Spinor::from_ints(&[1, 0, 0, 0, 1, 0, 0, 0])
}

fn clifford_audit(rep: &CliffordRep) -> Outcome {
    let r = spinor_audit(rep);
    passes(&r, &["Clifford relations (28 pairs)", "volume element = +Id", "spinor form invariance (448 instances)"])?;
    Ok("28 relations, volume +Id, 448 invariance instances".into())
}

fn stabilizers(rep: &CliffordRep) -> Outcome {
    ensure(rep.spin_basis().len() == SPIN_DIM, || format!("spin algebra has dim {}", rep.spin_basis().len()))?;
    let d1 = rep.stabilizer_algebra(&[s1_plus_s5()]).dim();
    let d2 = rep.stabilizer_algebra(&[s1_plus_s5(), Spinor::basis(5)]).dim();
    ensure(d1 == 14 && d2 == 8, || format!("dims {d1}, {d2}"))?;
    ensure(rep.pair_stabilizer_generators().len() == 8, || "expected 8 generators".into())?;
    let r = rep.check_pair_stabilizer_structure();
    passes(
        &r,
        &["[N1,N2] = -4 N3", "[N1,N3] = 6 Z2", "[N2,N3] = -6 Z1", "generators span the pair stabilizer"],
    )?;
    ensure(r.all_pass(), || format!("{:?}", failed_names(&r)))?;
    Ok(format!("dim {d1} and {d2} inside {SPIN_DIM}, generator brackets exact"))
}

fn kernel_geometry(rep: &CliffordRep) -> Outcome {
    let r = spinor_audit(rep);
    passes(
        &r,
        &[
            "U(s6) = span{e1,e2,e3}",
            "U(s6)/U totally isotropic",
            "U(s6)/U^perp·φ in Rφ",
            "X·(s1+s5)/X·ψ has rank 7",
            "X·(s1+s5)/image in ψ^perp",
        ],
    )?;
    Ok("U = span{e1,e2,e3} isotropic, rank 7 into the orthogonal complement".into())
}

fn g2_coherence(rep: &CliffordRep) -> Outcome {
    let from_form = cross_from_form(&GStructure::omega0()).map_err(|e| e.to_string())?;
    let from_spinor = cross_from_spinor(rep, &s1_plus_s5()).map_err(|e| e.to_string())?;
    for i in 0..7 {
        for j in 0..7 {
            ensure(from_form.get(i, j) == from_spinor.get(i, j), || format!("b(e{}, e{}) differs", i + 1, j + 1))?;
        }
    }
    let ax = check_cross_axioms(&from_form);
    ensure(ax.all_pass(), || format!("{:?}", failed_names(&ax)))?;
    let stab = stabilizer_in_so(&GStructure::omega0()).dim();
    ensure(stab == 14, || format!("stabilizer dim {stab}"))?;
    Ok("49 entries agree, axioms hold, stabilizer dim 14".into())
}

fn catalog_sweep() -> Outcome {
    let specs = sweep();
    for spec in &specs {
        let e = build_family(spec).map_err(|e| format!("{spec}: {e}"))?;
        let r = certify(&e);
        ensure(!r.any_fail() && !r.any_inconclusive(), || format!("{spec}: {:?}", failed_names(&r)))?;
        ensure(e.triple.minus_signature() == Signature::new(4, 3, 0), || format!("{spec}: signature"))?;
        ensure(r.quantities.get("commutant quotient dimension") == Some(&1.into()), || format!("{spec}: tier 1"))?;
    }
    Ok(format!("{} specs certified with no fail and no inconclusive verdict", specs.len()))
}

fn holonomy() -> Outcome {
    let mut notes = Vec::new();
    for spec in sweep() {
        let e = build_family(&spec).map_err(|e| e.to_string())?;
        let h = e.triple.holonomy().ok_or_else(|| format!("{spec}: ad(g+) leaves g-"))?;
        ensure(h.abelian, || format!("{spec}: not abelian"))?;
        ensure(h.span_dim == e.triple.plus().len(), || format!("{spec}: dim {} vs dim g+", h.span_dim))?;
        if spec.family == Family::F2b {
            notes.push(format!("F2b holonomy dim {} (not 3)", h.span_dim));
        } else {
            ensure(h.span_dim == 3, || format!("{spec}: dim {}", h.span_dim))?;
        }
    }
    Ok(format!("F1, F2a: dim 3 abelian; {}", notes.join(", ")))
}

fn cocycles() -> Outcome {
    for spec in [FamilySpec::f1(ASignature::Lorentzian, ExactScalar::from_ratio(1, 2)), FamilySpec::f2a(ASignature::Definite), FamilySpec::f2b()] {
        let data = family_data(&spec).map_err(|e| e.to_string())?;
        let r = check_cocycle_conditions(&data.bst, &data.module, &data.cocycle);
        passes(&r, &["(Z1) alpha(m, m) = 0", "(Z2)", "(Z3)"])?;
        if spec.family != Family::F1 {
            let v = &r.quantities["2gamma(B,m1,m2)"];
            ensure(*v == ExactScalar::sqrt2().to_string(), || format!("{spec}: 2gamma = {v}"))?;
        }
    }
    Ok("(Z1)-(Z3) hold for all three families, 2gamma(B,L1,L2) = sqrt2".into())
}

fn random_scalar(rng: &mut ChaCha8Rng) -> ExactScalar {
    ExactScalar::from_parts(rng.gen_range(-5..=5), rng.gen_range(1..=4), rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> ExactScalar {
    loop {
        let x = random_scalar(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

fn transformation_calculus() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut mutations = 0;
    for instance in 0..20 {
        let sig = if rng.gen_bool(0.5) { ASignature::Lorentzian } else { ASignature::Definite };
        let spec = if instance % 2 == 0 {
            FamilySpec::f1(sig, random_scalar(&mut rng))
        } else {
            FamilySpec::f2a(sig)
        };
        let data = family_data(&spec).map_err(|e| e.to_string())?;
        let (bst, module) = (&data.bst, &data.module);
        let (s1, s2) = (random_scalar(&mut rng), random_scalar(&mut rng));
        let mut s0 = Mat::identity(4);
        s0[(0, 2)] = s1.clone();
        s0[(1, 2)] = s2.clone();
        let mut tau = Mat::zeros(2, 4);
        tau[(0, 2)] = random_scalar(&mut rng);
        tau[(1, 3)] = random_scalar(&mut rng);
        let mut sigma = AltForm::zero(4, 2);
        sigma.set(&[0, 2], random_scalar(&mut rng)).unwrap();
        sigma.set(&[1, 2], random_scalar(&mut rng)).unwrap();
        let tr = CochainTransformation::completing_b_conditions(s0, tau, sigma, bst, module)
            .map_err(|e| e.to_string())?;

        let (c2, flags) = apply_transformation(&data.cocycle, &tr, bst, module).map_err(|e| e.to_string())?;
        ensure(flags.b1 && flags.b2, || format!("instance {instance}: flags {flags:?}"))?;
        // α′ = α − (Z2∧Z3)⊗τ(B), plus −2√2 s2 (Z_B∧Z3)⊗A for the g41 family
        let mut expected = data.cocycle.clone();
        expected.add_alpha(1, 2, &-&tr.tau.column(3)).unwrap();
        if spec.family == Family::F1 {
            let k = &(&ExactScalar::from_int(-2) * &ExactScalar::sqrt2()) * &s2;
            expected.add_alpha(3, 2, &module.a.scale(&k)).unwrap();
        }
        ensure(c2.alpha == expected.alpha, || format!("instance {instance} ({spec}): alpha' differs"))?;

        let verify = |tr: &CochainTransformation| -> Result<Report, String> {
            let (c2, _) = apply_transformation(&data.cocycle, tr, bst, module).map_err(|e| e.to_string())?;
            let target = build_standard_model(&bst.l, &bst.theta, module, &data.cocycle).map_err(|e| e.to_string())?;
            let source = build_standard_model(&bst.l, &bst.theta, module, &c2).map_err(|e| e.to_string())?;
            let ws = standard_omega(&source, bst, module).map_err(|e| e.to_string())?;
            let wt = standard_omega(&target, bst, module).map_err(|e| e.to_string())?;
            let psi = build_equivalence_map(tr, bst, module).map_err(|e| e.to_string())?;
            Ok(verify_equivalence(&psi, &source, &target, &ws, &wt))
        };
        let r = verify(&tr)?;
        ensure(r.all_pass(), || format!("instance {instance}: {:?}", failed_names(&r)))?;

        let delta = random_nonzero(&mut rng);
        let mut variants = Vec::new();
        for k in 0..2 {
            let mut m = tr.clone();
            m.tau[(0, k)] += &delta;
            variants.push((format!("tau(L{})", k + 1), m));
        }
        let mut m = tr.clone();
        m.sigma.add_term(&[0, 1], &delta).unwrap();
        variants.push(("sigma(L1,L2)".to_string(), m));
        for (name, m) in variants {
            let r = verify(&m)?;
            ensure(failed_names(&r) == ["omega"], || {
                format!("instance {instance}, mutation of {name}: failures {:?}", failed_names(&r))
            })?;
            mutations += 1;
        }
    }
    Ok(format!("20 instances reproduce alpha', maps certified, {mutations} mutations break only omega"))
}

fn mutation_robustness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let specs = sweep();
    let mut kinds = [0usize; 3];
    for trial in 0..50 {
        let spec = &specs[rng.gen_range(0..specs.len())];
        let mut e = build_family(spec).map_err(|e| e.to_string())?;
        let n = e.triple.dim();
        let delta = random_nonzero(&mut rng);
        let kind = rng.gen_range(0..3);
        kinds[kind] += 1;
        let what = match kind {
            0 => {
                let i = rng.gen_range(0..n - 1);
                let j = rng.gen_range(i + 1..n);
                let k = rng.gen_range(0..n);
                e.triple.alg.add_bracket_term(i, j, k, &delta).unwrap();
                format!("[e{i}, e{j}]_{k}")
            }
            1 => {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(i..n);
                let mut g = e.triple.ip.gram().clone();
                g[(i, j)] += &delta;
                if i != j {
                    g[(j, i)] += &delta;
                }
                e.triple.ip = SymmetricForm::new(g).unwrap();
                format!("<e{i}, e{j}>")
            }
            _ => {
                let tuples = increasing_tuples(7, 3);
                let idx = &tuples[rng.gen_range(0..tuples.len())];
                e.omega.omega.add_term(idx, &delta).unwrap();
                format!("omega{idx:?}")
            }
        };
        let r = certify(&e);
        ensure(r.any_fail(), || format!("trial {trial}: corruption {what} of {spec} passed certification"))?;
    }
    Ok(format!(
        "50 corruptions ({} constants, {} metric, {} omega) all rejected",
        kinds[0], kinds[1], kinds[2]
    ))
}

fn main() -> ExitCode {
    let rep = CliffordRep::standard().expect("standard representation");
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("Clifford audit", Box::new(|| clifford_audit(&rep))),
        ("stabilizer dimensions", Box::new(|| stabilizers(&rep))),
        ("kernel geometry", Box::new(|| kernel_geometry(&rep))),
        ("G2-structure coherence", Box::new(|| g2_coherence(&rep))),
        ("catalog sweep", Box::new(catalog_sweep)),
        ("holonomy", Box::new(holonomy)),
        ("cocycle conditions", Box::new(cocycles)),
        ("transformation calculus", Box::new(transformation_calculus)),
        ("mutation robustness", Box::new(mutation_robustness)),
    ];
    let mut ok = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(msg) => println!("criterion {} ({name}): PASS: {msg}", k + 1),
            Err(msg) => {
                ok = false;
                println!("criterion {} ({name}): FAIL: {msg}", k + 1);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
