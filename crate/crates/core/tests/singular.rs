use scf_core::algebra::{AlgebraId, GenMode};
use scf_core::exactfield::Param;
use scf_core::linalg::axpy;
use scf_core::singular::{
    delta_sym, e0_invariant_generators, find_singular, find_singular_reduced, is_singular, named_vector,
    parse_word, singular_locus, vacuum,
};
use scf_core::verma::{build_module, HighestWeight, VVec, VermaModule};
use scf_core::Scalar;

fn word(m: &VermaModule, w: &str) -> VVec {
    m.act_word(&parse_word(m.alg, w).unwrap(), &vacuum()).unwrap()
}

fn lin(terms: &[(Scalar, VVec)]) -> VVec {
    let mut r = VVec::new();
    for (c, v) in terms {
        axpy(&mut r, c, v);
    }
    r
}

fn symbolic_n2() -> VermaModule {
    let hw = HighestWeight { delta: delta_sym(), lambda: Scalar::param(Param::LambdaSym), lambda_bar: None };
    build_module(AlgebraId::N2, hw).unwrap()
}

fn gpgm_below(m: &VermaModule, k: i64) -> VVec {
    word(m, &format!("{}Gp Gm", "d ".repeat(k as usize - 1)))
}

#[test]
fn n2_odd_lowering_identities() {
    let m = symbolic_n2();
    let (d, l) = (delta_sym(), Scalar::param(Param::LambdaSym));
    let two = Scalar::from_int(2);
    for k in 0..4i64 {
        let dk = "d ".repeat(k as usize);
        let kk = Scalar::from_int(k);
        let lhs = word(&m, &format!("Gm:1/2 {dk}Gp"));
        let c = &(&(&two * &d) - &l) + &(&two * &kk);
        let head = (c, word(&m, &dk));
        if k == 0 {
            assert_eq!(lhs, lin(&[head]));
        } else {
            // the G+G- term enters with -k; the printed +k does not hold
            assert_eq!(lhs, lin(&[head.clone(), (-&kk, gpgm_below(&m, k))]), "k={k}");
            assert_ne!(lhs, lin(&[head, (kk.clone(), gpgm_below(&m, k))]), "k={k}");
        }
        let lhs = word(&m, &format!("Gp:1/2 {dk}Gm"));
        let mut terms = vec![(&(&two * &d) + &l, word(&m, &dk))];
        if k > 0 {
            terms.push((kk, gpgm_below(&m, k)));
        }
        assert_eq!(lhs, lin(&terms), "k={k}");
    }
}

#[test]
fn n2_level_k_family() {
    // w = alpha d^k v + beta d^(k-1) G+G- v; actions of G+-_{1/2} and J_1
    let m = symbolic_n2();
    let (d, l) = (delta_sym(), Scalar::param(Param::LambdaSym));
    let two = Scalar::from_int(2);
    for k in 1..4i64 {
        let kk = Scalar::from_int(k);
        let dk = "d ".repeat(k as usize);
        let dk1 = "d ".repeat(k as usize - 1);
        let a = |w: &str| word(&m, &format!("{w} {dk}"));
        let b = |w: &str| word(&m, &format!("{w} {dk1}Gp Gm"));
        let gp = word(&m, &format!("{dk1}Gp"));
        let gm = word(&m, &format!("{dk1}Gm"));
        assert_eq!(a("Gp:1/2"), lin(&[(kk.clone(), gp.clone())]));
        assert_eq!(b("Gp:1/2"), lin(&[(-&(&(&two * &d) + &l), gp)]));
        assert_eq!(a("Gm:1/2"), lin(&[(kk.clone(), gm.clone())]));
        assert_eq!(b("Gm:1/2"), lin(&[(&(&(&two * &d) - &l) + &(&two * &kk), gm)]));
        assert_eq!(a("J:1"), lin(&[(&l * &kk, word(&m, &dk1))]));
        let mut t = vec![(&(&two * &d) + &l, word(&m, &dk1))];
        if k > 1 {
            t.push((&Scalar::from_int(k - 1) * &l, gpgm_below(&m, k - 1)));
        }
        assert_eq!(b("J:1"), lin(&t));
    }
}

#[test]
fn n2_level_one_exceptions() {
    let m = build_module(AlgebraId::N2, HighestWeight::new(Scalar::ratio(-1, 2), 1)).unwrap();
    assert!(is_singular(&m, &word(&m, "Gp Gm")).unwrap().is_singular());
    let m = build_module(AlgebraId::N2, HighestWeight::new(Scalar::ratio(-1, 2), -1)).unwrap();
    let v = lin(&[(Scalar::from_int(-2), word(&m, "d")), (Scalar::one(), word(&m, "Gp Gm"))]);
    assert!(is_singular(&m, &v).unwrap().is_singular());
    // no other Delta gives a level-one vector of this shape
    let m = build_module(AlgebraId::N2, HighestWeight::new(Scalar::ratio(1, 2), 1)).unwrap();
    assert!(!is_singular(&m, &word(&m, "Gp Gm")).unwrap().is_singular());
}

fn roots(alg: AlgebraId, lam: u32, cutoff: u32) -> Vec<String> {
    let hw = if alg == AlgebraId::BigN4 {
        HighestWeight::big(delta_sym(), lam, lam)
    } else {
        HighestWeight::new(delta_sym(), lam as i64)
    };
    let m = build_module(alg, hw).unwrap();
    let mut r: Vec<String> = singular_locus(&m, cutoff).unwrap().into_iter().filter_map(|e| e.root).collect();
    r.sort();
    r.dedup();
    r
}

#[test]
fn loci() {
    assert_eq!(roots(AlgebraId::N2, 1, 0), vec!["-1/2", "1/2"]);
    assert_eq!(roots(AlgebraId::N3, 2, 1), vec!["-1", "1/2"]);
    assert_eq!(roots(AlgebraId::N3, 1, 1), vec!["-3/4", "1/4"]);
    assert_eq!(roots(AlgebraId::small(1), 2, 1), vec!["-2", "1"]);
    assert_eq!(roots(AlgebraId::BigN4, 1, 1), vec!["-3/2", "1/2"]);
}

#[test]
fn n2_locus_conditions() {
    let hw = HighestWeight::new(delta_sym(), 1);
    let m = build_module(AlgebraId::N2, hw).unwrap();
    let conds: Vec<String> = singular_locus(&m, 0).unwrap().iter().map(|e| e.condition.to_string()).collect();
    assert_eq!(conds.len(), 2, "{conds:?}");
}

#[test]
fn invariant_generator_counts() {
    let count = |alg, lam| e0_invariant_generators(&build_module(alg, HighestWeight::new(Scalar::ratio(1, 3), lam)).unwrap(), 10).unwrap();
    assert_eq!(count(AlgebraId::N3, 0), 4);
    assert_eq!(count(AlgebraId::N3, 2), 8);
    assert_eq!(count(AlgebraId::small(1), 0), 10);
    assert_eq!(count(AlgebraId::small(1), 1), 15);
    assert_eq!(count(AlgebraId::small(1), 2), 16);
}

#[test]
fn reduced_conditions_suffice() {
    let mut pts = vec![];
    for l in 0..=3i64 {
        pts.push((AlgebraId::N3, Scalar::ratio(l, 4), l));
        pts.push((AlgebraId::N3, Scalar::ratio(-(l + 2), 4), l));
        pts.push((AlgebraId::small(1), Scalar::ratio(l, 2), l));
        pts.push((AlgebraId::small(1), Scalar::ratio(-(l + 2), 2), l));
    }
    for (alg, d, l) in pts {
        let m = build_module(alg, HighestWeight::new(d.clone(), l)).unwrap();
        let full: Vec<_> = find_singular(&m, 2).unwrap().iter().map(|r| (r.weight, r.basis.len())).collect();
        let red: Vec<_> = find_singular_reduced(&m, 2).unwrap().iter().map(|r| (r.weight, r.basis.len())).collect();
        assert_eq!(full, red, "{alg} {d} {l}");
    }
}

#[test]
fn reports_carry_certificates() {
    let m = build_module(AlgebraId::N3, HighestWeight::new(Scalar::ratio(1, 2), 2)).unwrap();
    let r = find_singular(&m, 2).unwrap();
    assert_eq!(r.len(), 1);
    for v in &r[0].basis {
        for &g in &r[0].certificate {
            assert!(m.act(g, v).unwrap().is_empty());
        }
    }
    assert!(r[0].certificate.contains(&GenMode::new(scf_core::algebra::Gen::E, 0)));
    assert_eq!(named_vector(&m, "a2").unwrap().len(), 1);
}
