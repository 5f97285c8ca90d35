//! Named module vectors as data: each is a sum of `coefficient * word`
//! applied to a target (the highest weight vector for `a_i`, `b_i`).
//!
//! Coefficients are strings in `L` (Lambda) and `Lb` (Lambda bar). Words are
//! space-separated and applied right to left: `d` is `L_{-1}`, `F0`/`Fb0` are
//! `F_0`/`Fbar_0`, a bare odd token is that generator at mode -1/2, and
//! `NAME:mode` is any generator.

use crate::algebra::AlgebraId;

pub type Def = &'static [(&'static str, &'static str)];

const N2: [(&str, Def); 5] = [
    ("v", &[("1", "")]),
    ("Gp_v", &[("1", "Gp")]),
    ("Gm_v", &[("1", "Gm")]),
    ("GpGm_v", &[("1", "Gp Gm")]),
    ("GmGp_v", &[("1", "Gm Gp")]),
];

const N3: [(&str, Def); 8] = [
    ("a1", &[("1", "")]),
    ("a2", &[("1", "e")]),
    ("a3", &[("L", "h"), ("2", "e F0")]),
    ("a4", &[("L*(L-1)", "f"), ("-(L-1)", "h F0"), ("-1", "e F0 F0")]),
    ("a5", &[("1", "e h")]),
    ("a6", &[("L", "e f"), ("-1", "e h F0")]),
    ("a7", &[("L*(L-1)", "h f"), ("4*(L-1)", "d F0"), ("2*(L-1)", "e f F0"), ("-1", "e h F0 F0")]),
    ("a8", &[("1", "e h f"), ("-2", "d h")]),
];

const SN4: [(&str, Def); 16] = [
    ("a1", &[("1", "")]),
    ("a2", &[("1", "Gpp")]),
    ("a3", &[("1", "Gpm")]),
    ("a4", &[("L", "Gmp"), ("-1", "Gpp F0")]),
    ("a5", &[("-L", "Gmm"), ("1", "Gpm F0")]),
    ("a6", &[("1", "Gmp Gpp")]),
    ("a7", &[("1", "Gpm Gmm")]),
    ("a8", &[("1", "Gpp Gpm")]),
    ("a9", &[("1", "Gmp Gpm"), ("-1", "Gpp Gmm")]),
    ("a10", &[("-L", "Gpp Gmm"), ("1", "Gpp Gpm F0")]),
    (
        "a11",
        &[("-(L-1)*L", "Gmp Gmm"), ("L-1", "Gmp Gpm F0"), ("L-1", "Gpp Gmm F0"), ("-1", "Gpp Gpm F0 F0")],
    ),
    ("a12", &[("1", "Gmp Gpp Gpm")]),
    ("a13", &[("1", "Gpp Gpm Gmm")]),
    ("a14", &[("-L", "Gmp Gpp Gmm"), ("1", "Gmp Gpp Gpm F0")]),
    ("a15", &[("-L", "Gmp Gpm Gmm"), ("1", "Gpp Gpm Gmm F0")]),
    ("a16", &[("1", "Gmp Gpp Gpm Gmm")]),
];

const BN4: [(&str, Def); 16] = [
    ("b1", &[("1", "")]),
    ("b2", &[("1", "Gpp")]),
    ("b3", &[("L", "Gmp"), ("-1", "Gpp F0")]),
    ("b4", &[("Lb", "Gpm"), ("-1", "Gpp Fb0")]),
    ("b5", &[("L*Lb", "Gmm"), ("-Lb", "Gpm F0"), ("-L", "Gmp Fb0"), ("1", "Gpp F0 Fb0")]),
    ("b6", &[("1", "Gpp Gpm")]),
    ("b7", &[("L", "Gmp Gpm"), ("L", "Gpp Gmm"), ("-2", "Gpp Gpm F0")]),
    (
        "b8",
        &[("-(L-1)*L", "Gmp Gmm"), ("L-1", "Gmp Gpm F0"), ("L-1", "Gpp Gmm F0"), ("-1", "Gpp Gpm F0 F0")],
    ),
    ("b9", &[("1", "Gpp Gmp")]),
    ("b10", &[("Lb", "Gpp Gmm"), ("-Lb", "Gmp Gpm"), ("-2", "Gpp Gmp Fb0")]),
    (
        "b11",
        &[
            ("-(Lb-1)*Lb", "Gpm Gmm"),
            ("Lb-1", "Gpm Gmp Fb0"),
            ("Lb-1", "Gpp Gmm Fb0"),
            ("-1", "Gpp Gmp Fb0 Fb0"),
        ],
    ),
    ("b12", &[("1", "Gpp Gpm Gmp")]),
    ("b13", &[("L", "Gpp Gmp Gmm"), ("-1", "Gpp Gmp Gpm F0")]),
    ("b14", &[("Lb", "Gpp Gpm Gmm"), ("-1", "Gpp Gpm Gmp Fb0")]),
    (
        "b15",
        &[
            ("L*Lb", "Gmp Gmm Gpm"),
            ("-L", "Gmp Gmm Gpp Fb0"),
            ("Lb", "Gpp Gpm Gmm F0"),
            ("-1", "Gpp Gpm Gmp F0 Fb0"),
        ],
    ),
    ("b16", &[("1", "Gpp Gpm Gmp Gmm"), ("-1", "d Gmp Gpm"), ("-1", "d Gpp Gmm")]),
];

/// The table for `alg`; the small N=4 formulas are written for beta = 1, so
/// beta = -1 has none.
pub fn table(alg: AlgebraId) -> &'static [(&'static str, Def)] {
    match alg {
        AlgebraId::N2 => &N2,
        AlgebraId::N3 => &N3,
        AlgebraId::SmallN4 { beta: 1 } => &SN4,
        AlgebraId::SmallN4 { .. } => &[],
        AlgebraId::BigN4 => &BN4,
    }
}

pub fn lookup(alg: AlgebraId, name: &str) -> Option<Def> {
    table(alg).iter().find(|(n, _)| *n == name).map(|(_, d)| *d)
}

/// Names of the `u_i` family (`a1..`, `b1..`); empty for N2.
pub fn u_prefix(alg: AlgebraId) -> Option<&'static str> {
    match alg {
        AlgebraId::N2 => None,
        AlgebraId::BigN4 => Some("b"),
        _ => Some("a"),
    }
}
