use scf_core::algebra::AlgebraId;
use scf_core::classify::{classification_row, quotient_dims, submodule_generated, torsion_closure, DEFAULT_CUTOFF2};
use scf_core::regression::singular_list_matches;
use scf_core::singular::{find_singular, named_vector};
use scf_core::verma::{build_module, HighestWeight};
use scf_core::Scalar;

fn q(s: &str) -> Scalar {
    s.parse().unwrap()
}

fn frac(p: i64, d: i64) -> Scalar {
    &Scalar::from_int(p) / &Scalar::from_int(d)
}

fn expected_rank(alg: AlgebraId, case: &str, l: i64, lb: i64) -> i64 {
    match (alg, case) {
        (_, "trivial") => 0,
        (AlgebraId::N2, "generic") => 4,
        (AlgebraId::N2, _) => 2,
        (AlgebraId::N3, "generic") => 8 * l + 8,
        (AlgebraId::N3, "4D-L=0") => 4 * l,
        (AlgebraId::N3, _) => 4 * l + 8,
        (AlgebraId::BigN4, "generic") => 16 * (l + 1) * (lb + 1),
        (AlgebraId::BigN4, "2D-L=0") => 8 * l * (l + 1),
        (AlgebraId::BigN4, _) => 8 * (l + 1) * (l + 2),
        (_, "generic") => 16 * l + 16,
        (_, "2D-L=0") => 4 * l,
        _ => 4 * l + 8,
    }
}

fn check(alg: AlgebraId, delta: Scalar, l: i64, lb: Option<i64>) {
    let row = classification_row(alg, delta.clone(), l, lb, DEFAULT_CUTOFF2).unwrap();
    let want = expected_rank(alg, &row.case, l, lb.unwrap_or(l));
    assert_eq!(row.rank as i64, want, "{alg} {delta} {l} {lb:?}: {row:?}");
    assert!(row.reachable && row.quotient_clean, "{row:?}");
    if alg != AlgebraId::N2 {
        assert_eq!(row.rank_even, row.rank_odd, "{row:?}");
    }
}

#[test]
fn n2_rows() {
    assert_eq!(classification_row(AlgebraId::N2, frac(1, 2), 1, None, 12).unwrap().case, "2D-L=0");
    for l in 0..=3 {
        for d in [frac(l, 2), frac(-l, 2), frac(-1, 2), frac(2, 7)] {
            check(AlgebraId::N2, d, l, None);
        }
    }
}

#[test]
fn n3_rows() {
    for l in 0..=4 {
        for d in [frac(l, 4), frac(-(l + 2), 4), frac(1, 3)] {
            check(AlgebraId::N3, d, l, None);
        }
    }
    let row = classification_row(AlgebraId::N3, q("-1"), 2, None, 12).unwrap();
    assert_eq!(row.torsion, vec!["a7".to_string()]);
    let row = classification_row(AlgebraId::N3, q("0"), 0, None, 12).unwrap();
    assert_eq!((row.case.as_str(), row.rank), ("trivial", 0));
}

#[test]
fn small_n4_rows() {
    for l in 0..=3 {
        for d in [frac(l, 2), frac(-(l + 2), 2), frac(1, 3)] {
            check(AlgebraId::small(1), d, l, None);
        }
    }
}

#[test]
fn big_n4_rows() {
    for l in 0..=2 {
        for lb in 0..=2 {
            for d in [frac(l, 2), frac(-(l + 2), 2), frac(1, 3)] {
                check(AlgebraId::BigN4, d, l, Some(lb));
            }
        }
    }
    let row = classification_row(AlgebraId::BigN4, frac(-3, 2), 1, Some(1), 12).unwrap();
    assert_eq!(row.torsion, vec!["b15".to_string()]);
    let row = classification_row(AlgebraId::BigN4, frac(1, 3), 1, Some(2), 12).unwrap();
    assert_eq!((row.case.as_str(), row.rank), ("generic", 96));
}

#[test]
fn singular_lists() {
    let mut pts: Vec<(AlgebraId, Scalar, i64, Option<i64>)> = vec![(AlgebraId::N2, frac(-1, 2), -1, None)];
    for l in 0..=3 {
        for d in [frac(l, 2), frac(-l, 2), frac(-1, 2), frac(3, 5)] {
            pts.push((AlgebraId::N2, d, l, None));
        }
        for d in [frac(l, 4), frac(-(l + 2), 4), frac(1, 3)] {
            pts.push((AlgebraId::N3, d, l, None));
        }
        for d in [frac(l, 2), frac(-(l + 2), 2), frac(1, 3)] {
            pts.push((AlgebraId::small(1), d, l, None));
        }
    }
    for (l, lb) in [(1, 1), (2, 2), (1, 2), (0, 1)] {
        for d in [frac(l, 2), frac(-(l + 2), 2), frac(lb, 2)] {
            pts.push((AlgebraId::BigN4, d, l, Some(lb)));
        }
    }
    for (alg, d, l, lb) in pts {
        let hw = match lb {
            Some(b) => HighestWeight::big(d.clone(), l as u32, b as u32),
            None => HighestWeight::new(d.clone(), l),
        };
        let m = build_module(alg, hw).unwrap();
        let (ok, found, want) = singular_list_matches(&m, 3).unwrap();
        assert!(ok, "{alg} {d} {l} {lb:?}: found {found}, expected {want}");
    }
}

#[test]
fn n2_generators_of_n() {
    let m = build_module(AlgebraId::N2, HighestWeight::new(frac(-1, 2), 1)).unwrap();
    let seed = named_vector(&m, "Gm_v").unwrap();
    let n = submodule_generated(&m, &[seed], 8).unwrap();
    // C[d] Gm v + C[d] Gp Gm v: one dimension per level from 1/2 on
    for l in 1..=8 {
        assert_eq!(n.dim(l), 1, "level {l}/2");
    }
}

#[test]
fn trivial_quotient_is_one_dimensional() {
    let m = build_module(AlgebraId::N2, HighestWeight::new(Scalar::zero(), 0)).unwrap();
    let seeds: Vec<_> = find_singular(&m, 3).unwrap().into_iter().flat_map(|r| r.basis).collect();
    let n = submodule_generated(&m, &seeds, 10).unwrap();
    assert!(n.contains(&m.act(scf_core::algebra::GenMode::DEL, &named_vector(&m, "v").unwrap()).unwrap()));
    let (n, _) = torsion_closure(&m, &n).unwrap();
    let dims = quotient_dims(&m, &n);
    assert_eq!(dims.iter().sum::<usize>(), 0);
    let n0 = submodule_generated(&m, &seeds, 10).unwrap();
    let dims0 = quotient_dims(&m, &n0);
    assert_eq!(dims0[0], 1);
    assert!(dims0[1..].iter().all(|&d| d == 0));
}
