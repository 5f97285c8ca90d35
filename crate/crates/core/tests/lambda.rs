use scf_core::algebra::{AlgebraId, GenMode};
use scf_core::classify::{submodule_generated, GradedSubspace};
use scf_core::lambda_calc::*;
use scf_core::linalg::Echelon;
use scf_core::verma::{build_module, vvec_key, HighestWeight, PBWKey, VVec};
use scf_core::{Param, Scalar};

fn k(s: &str) -> Poly3 {
    Poly3::constant(s.parse().unwrap())
}

fn assert_ok(what: &str, r: &scf_core::algebra::Report) {
    assert!(r.ok(), "{what}: {:?}", &r.mismatches[..r.mismatches.len().min(5)]);
    assert!(r.checked > 0);
}

#[test]
fn printed_products() {
    let vir = virasoro();
    let l = LambdaPoly::gen("L");
    assert_eq!(lambda_bracket(&vir, &l, &l).unwrap().render(), "(d + 2*lambda)L");
    let dl = LambdaPoly::term("L", Poly3::d());
    let got = lambda_bracket(&vir, &dl, &l).unwrap();
    let want = LambdaPoly::term("L", -(Poly3::lambda() * (Poly3::d() + k("2") * Poly3::lambda())));
    assert_eq!(got, want);

    let n2 = n2();
    let got = lambda_bracket(&n2, &LambdaPoly::gen("Gp"), &LambdaPoly::gen("Gm")).unwrap();
    assert_eq!(got.render(), "(d + 2*lambda)J + (2)L");
    // Skew-symmetry: G-_lambda G+ = -(d + 2 lambda)J + 2L.
    let back = lambda_bracket(&n2, &LambdaPoly::gen("Gm"), &LambdaPoly::gen("Gp")).unwrap();
    assert_eq!(back, LambdaPoly::term("J", -(Poly3::d() + k("2") * Poly3::lambda())) + LambdaPoly::term("L", k("2")));
    assert!(lambda_bracket(&n2, &LambdaPoly::gen("X"), &l).is_err());
}

#[test]
fn conformal_axioms() {
    for r in [virasoro(), current_sl2(), semidirect(&current_sl2()), n2()] {
        assert_ok(&r.name, &check_conformal_axioms(&r).unwrap());
    }
}

#[test]
fn broken_tables_are_caught() {
    let mut r = n2();
    r.set("J", "Gp", LambdaPoly::term("Gp", k("2")));
    assert!(!check_conformal_axioms(&r).unwrap().ok());
    let mut r = virasoro();
    r.set("L", "L", LambdaPoly::term("L", Poly3::d() + k("3") * Poly3::lambda()));
    assert!(!check_conformal_axioms(&r).unwrap().ok());
    let mut m = n2_module_rank4();
    m.set("Gm", "v+", LambdaPoly::term("v", k("2") * Poly3::d() + k("2*alpha")) - LambdaPoly::gen("v+-"));
    assert!(!check_module_axioms(&n2(), &m).unwrap().ok());
}

#[test]
fn module_axioms() {
    assert_ok("F(alpha,Delta)", &check_module_axioms(&virasoro(), &virasoro_module()).unwrap());
    for m in [n2_module_rank4(), n2_module_2d_plus_l(), n2_module_2d_minus_l()] {
        assert_ok(&m.name, &check_module_axioms(&n2(), &m).unwrap());
    }
    for r in [virasoro(), semidirect(&current_sl2()), n2()] {
        assert_ok(&r.name, &check_module_axioms(&r, &adjoint_module(&r).unwrap()).unwrap());
    }
}

#[test]
fn mode_tables_match_printed_n2_products() {
    let gen = conformal_algebra_from_modes(AlgebraId::N2).unwrap();
    let printed = n2().completed().unwrap();
    let gen = gen.completed().unwrap();
    assert_eq!(gen.gens, printed.gens);
    assert_eq!(gen.table, printed.table);
}

#[test]
fn mode_tables_satisfy_axioms() {
    for alg in [AlgebraId::N2, AlgebraId::N3, AlgebraId::small(1), AlgebraId::small(-1)] {
        let r = conformal_algebra_from_modes(alg).unwrap();
        assert_ok(&r.name, &check_conformal_axioms(&r).unwrap());
        let l = LambdaPoly::gen("L");
        assert_eq!(lambda_bracket(&r, &l, &l).unwrap().render(), "(d + 2*lambda)L");
    }
}

fn sym_module(lambda: Scalar) -> scf_core::verma::VermaModule {
    build_module(AlgebraId::N2, HighestWeight { delta: Scalar::param(Param::Delta), lambda, lambda_bar: None }).unwrap()
}

fn gm(s: &str) -> GenMode {
    s.parse().unwrap()
}

#[test]
fn n2_rank4_table_matches_pbw_model() {
    let m = sym_module(Scalar::param(Param::LambdaSym));
    let v = vvec_key(PBWKey::VACUUM);
    let vp = m.act(gm("Gp:-1/2"), &v).unwrap();
    let vm = m.act(gm("Gm:-1/2"), &v).unwrap();
    let vpm = m.act(gm("Gp:-1/2"), &vm).unwrap();
    let gens: Vec<(String, VVec)> =
        vec![("v".into(), v), ("v+".into(), vp), ("v-".into(), vm), ("v+-".into(), vpm)];
    let zero = GradedSubspace { cutoff2: 8, levels: vec![Echelon::new(); 9], seeds: vec![] };
    let got = conformal_module_from_pbw(&m, &zero, &gens, "").unwrap();
    let want = n2_module_rank4();
    assert_eq!(got.action, want.action);
    assert_ok("generated rank 4", &check_module_axioms(&n2(), &got).unwrap());
}

#[test]
fn n2_rank2_tables_match_pbw_model() {
    let two_delta: Scalar = "2*Delta".parse().unwrap();
    for (lambda, kill, keep, label, want) in [
        (-&two_delta, "Gm:-1/2", "Gp:-1/2", "v+", n2_module_2d_plus_l()),
        (two_delta.clone(), "Gp:-1/2", "Gm:-1/2", "v-", n2_module_2d_minus_l()),
    ] {
        let m = sym_module(lambda);
        let v = vvec_key(PBWKey::VACUUM);
        let sing = m.act(gm(kill), &v).unwrap();
        let n = submodule_generated(&m, &[sing], 8).unwrap();
        let gens: Vec<(String, VVec)> = vec![("v".into(), v.clone()), (label.into(), m.act(gm(keep), &v).unwrap())];
        let got = conformal_module_from_pbw(&m, &n, &gens, "").unwrap();
        assert_eq!(got.action, want.action, "{}", want.name);
    }
}

#[test]
fn generated_tables_satisfy_module_axioms() {
    let cases = [
        (AlgebraId::N2, HighestWeight::new(Scalar::ratio(1, 3), 1)),
        (AlgebraId::N3, HighestWeight::new(Scalar::ratio(1, 3), 1)),
        (AlgebraId::N3, HighestWeight::new(Scalar::ratio(-3, 4), 1)),
        (AlgebraId::N3, HighestWeight::new(Scalar::ratio(1, 2), 2)),
        (AlgebraId::small(1), HighestWeight::new(Scalar::ratio(-3, 2), 1)),
        (AlgebraId::small(1), HighestWeight::new(Scalar::from_int(1), 2)),
        (AlgebraId::small(-1), HighestWeight::new(Scalar::ratio(2, 5), 1)),
    ];
    for (alg, hw) in cases {
        let r = conformal_algebra_from_modes(alg).unwrap();
        let m = generated_module(alg, hw.clone(), 10).unwrap();
        assert_ok(&format!("{alg} {:?}", hw.delta.render()), &check_module_axioms(&r, &m).unwrap());
    }
}

#[test]
fn generated_rank_matches_classification() {
    let m = generated_module(AlgebraId::N3, HighestWeight::new(Scalar::ratio(-3, 4), 1), 12).unwrap();
    assert_eq!(m.gens.len(), 12);
    let m = generated_module(AlgebraId::small(1), HighestWeight::new(Scalar::from_int(1), 2), 12).unwrap();
    assert_eq!(m.gens.len(), 8);
}

#[test]
fn adjoint_identifications() {
    for (alg, delta, lam, h) in [
        (AlgebraId::N2, Scalar::one(), 0, "J:-1"),
        (AlgebraId::N3, Scalar::ratio(1, 2), 0, "Psi:-1/2"),
        (AlgebraId::small(1), Scalar::one(), 2, "E:-1"),
    ] {
        let rep = adjoint_identification(alg, delta, lam, gm(h), 12).unwrap();
        assert!(rep.ok(), "{rep:?}");
    }
    // A wrong weight is rejected.
    let rep = adjoint_identification(AlgebraId::N2, Scalar::one(), 1, gm("J:-1"), 8).unwrap();
    assert!(!rep.ok());
}

#[test]
fn json_round_trip() {
    for r in [n2(), conformal_algebra_from_modes(AlgebraId::N3).unwrap()] {
        assert_eq!(ConformalAlgebraSpec::from_json(&r.to_json()).unwrap(), r);
    }
    let m = n2_module_rank4();
    assert_eq!(ConformalModuleSpec::from_json(&m.to_json()).unwrap(), m);
}

#[test]
fn big_n4_is_refused() {
    assert!(conformal_algebra_from_modes(AlgebraId::BigN4).is_err());
    assert!(generated_module(AlgebraId::BigN4, HighestWeight::big(Scalar::ratio(1, 2), 1, 1), 8).is_err());
}
