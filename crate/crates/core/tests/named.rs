use scf_core::algebra::AlgebraId;
use scf_core::regression::{run_group, GROUPS};
use scf_core::singular::{named, named_vector, raising};
use scf_core::verma::{build_module, HighestWeight};
use scf_core::Scalar;

#[test]
fn named_vectors_are_invariant_weight_vectors() {
    for alg in [AlgebraId::N3, AlgebraId::small(1), AlgebraId::BigN4] {
        for lam in 0..=3u32 {
            let hw = if alg == AlgebraId::BigN4 {
                HighestWeight::big(Scalar::ratio(1, 3), lam, lam)
            } else {
                HighestWeight::new(Scalar::ratio(1, 3), lam as i64)
            };
            let m = build_module(alg, hw).unwrap();
            for (name, _) in named::table(alg) {
                let v = named_vector(&m, name).unwrap();
                if v.is_empty() {
                    continue;
                }
                assert!(m.weight_of(&v).is_some(), "{alg} L={lam} {name}");
                for g in raising(alg) {
                    assert!(m.act(g, &v).unwrap().is_empty(), "{alg} L={lam} {name}: {g}");
                }
            }
        }
    }
}

#[test]
fn vanishing_at_small_lambda() {
    let zero = |alg, lam, names: &[&str]| {
        let m = build_module(alg, HighestWeight::new(Scalar::ratio(1, 3), lam)).unwrap();
        for n in names {
            assert!(named_vector(&m, n).unwrap().is_empty(), "{alg} L={lam} {n}");
        }
    };
    zero(AlgebraId::small(1), 1, &["a11"]);
    zero(AlgebraId::small(1), 0, &["a4", "a5", "a10", "a11", "a14", "a15"]);
}

#[test]
fn regression_catalog_passes() {
    for g in GROUPS {
        for o in run_group(g).unwrap() {
            assert!(o.ok(), "{} L={} {}: {}", o.group, o.lambda, o.line, o.note);
        }
    }
}
