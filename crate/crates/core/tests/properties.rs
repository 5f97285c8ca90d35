use proptest::prelude::*;
use scf_core::grassmann::{contact_bracket, BasisKind, GElement};
use scf_core::{Param, Scalar};

fn scalar() -> impl Strategy<Value = Scalar> {
    // a + b i + c sqrt2 + d Delta + e LambdaSym, over a small rational denominator
    (-6i64..=6, -3i64..=3, -3i64..=3, -2i64..=2, -2i64..=2, 1i64..=4).prop_map(|(a, b, c, d, e, q)| {
        Scalar::ratio(a, q)
            + Scalar::ratio(b, q) * Scalar::i()
            + Scalar::from_int(c) * Scalar::sqrt2()
            + Scalar::from_int(d) * Scalar::param(Param::Delta)
            + Scalar::from_int(e) * Scalar::param(Param::LambdaSym)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!((&x + &y) + &z, &x + (&y + &z));
        prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
        prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
        prop_assert!((&x - &x).is_zero());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
            prop_assert_eq!((&y * &x).checked_div(&x).unwrap(), y.clone());
        } else {
            prop_assert!(x.inv().is_err());
        }
    }

    #[test]
    fn render_parses_back(x in scalar()) {
        let back: Scalar = x.render().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn contact_bracket_jacobi(
        n in 2u8..=4,
        split in any::<bool>(),
        ms in prop::collection::vec((-2i64..=3, 0u8..16), 3),
    ) {
        let kind = if split { BasisKind::Split } else { BasisKind::Standard };
        let mk = |(t, bits): (i64, u8)| {
            let idx: Vec<u8> = (0..n).filter(|i| bits & (1 << i) != 0).collect();
            GElement::term(n, kind, Scalar::one(), t, &idx)
        };
        let (f, g, h) = (mk(ms[0]), mk(ms[1]), mk(ms[2]));
        let lhs = contact_bracket(&f, &contact_bracket(&g, &h).unwrap()).unwrap();
        let a = contact_bracket(&contact_bracket(&f, &g).unwrap(), &h).unwrap();
        let b = contact_bracket(&g, &contact_bracket(&f, &h).unwrap()).unwrap();
        let s = if f.parity() == Some(1) && g.parity() == Some(1) { -1 } else { 1 };
        let d = lhs.sub(&a).unwrap().sub(&b.scale(&Scalar::from_int(s))).unwrap();
        prop_assert!(d.is_zero(), "({}, {}, {}) leaves {}", f, g, h, d);
    }

    #[test]
    fn contact_bracket_is_skew(n in 2u8..=4, t1 in -2i64..=3, b1 in 0u8..16, t2 in -2i64..=3, b2 in 0u8..16) {
        let mk = |t: i64, bits: u8| {
            let idx: Vec<u8> = (0..n).filter(|i| bits & (1 << i) != 0).collect();
            GElement::term(n, BasisKind::Standard, Scalar::one(), t, &idx)
        };
        let (f, g) = (mk(t1, b1), mk(t2, b2));
        let s = if f.parity() == Some(1) && g.parity() == Some(1) { 1 } else { -1 };
        let fg = contact_bracket(&f, &g).unwrap();
        let gf = contact_bracket(&g, &f).unwrap();
        prop_assert!(fg.sub(&gf.scale(&Scalar::from_int(s))).unwrap().is_zero());
    }
}
