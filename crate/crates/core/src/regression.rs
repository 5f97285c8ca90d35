//! Catalog of explicit identities among named vectors, checked by direct
//! computation at concrete Lambda.
//!
//! A line is `op . target = rhs`, where `op` is either a `u_i^{L'}` operator
//! or a word of positive generators. Coefficients and Delta are expressions
//! in `L` (Lambda); for big N=4 Lambda bar equals Lambda throughout.
//! Lines marked `expect: false` are printed forms that do not hold; each sits
//! next to the corrected line.

use serde::Serialize;

use crate::algebra::AlgebraId;
use crate::error::Result;
use crate::linalg::axpy;
use crate::singular::{apply_u, combo, eval_coef, parse_word, Combo};
use crate::verma::{build_module, HighestWeight, VVec, VermaModule};
use crate::Scalar;

#[derive(Clone, Copy, Debug)]
pub enum Op {
    /// `u_i^{L'}` with `L'` an expression in `L`.
    U(usize, &'static str),
    /// A word of generators such as `Psi:1/2` or `F:2 d`.
    Word(&'static str),
}

#[derive(Clone, Copy, Debug)]
pub struct Line {
    pub op: Op,
    pub target: Combo<'static>,
    pub rhs: Combo<'static>,
    pub expect: bool,
    pub note: &'static str,
}

#[derive(Clone, Copy, Debug)]
pub struct Group {
    pub name: &'static str,
    pub alg: AlgebraId,
    pub delta: &'static str,
    pub lambdas: &'static [i64],
    pub lines: &'static [Line],
}

const fn u(i: usize, lp: &'static str, target: Combo<'static>, rhs: Combo<'static>) -> Line {
    Line { op: Op::U(i, lp), target, rhs, expect: true, note: "" }
}

const fn w(word: &'static str, target: Combo<'static>, rhs: Combo<'static>) -> Line {
    Line { op: Op::Word(word), target, rhs, expect: true, note: "" }
}

const PRINTED: &str = "printed coefficient contradicted by recomputation";

const fn fixed(l: Line) -> Line {
    Line { note: "recomputed", ..l }
}

const fn bad(l: Line, note: &'static str) -> Line {
    Line { expect: false, note, ..l }
}

const A2: Combo = &[("1", "", "a2")];
const A3: Combo = &[("1", "", "a3")];
const A4: Combo = &[("1", "", "a4")];
const A5: Combo = &[("1", "", "a5")];
const A6: Combo = &[("1", "", "a6")];
const A7: Combo = &[("1", "", "a7")];
const A9D: Combo = &[("1", "", "a9"), ("-2", "d", "a1")];
const B2: Combo = &[("1", "", "b2")];
const B5: Combo = &[("1", "", "b5")];
const Z: Combo = &[];

const fn one(n: &'static str) -> [(&'static str, &'static str, &'static str); 1] {
    [("1", "", n)]
}

const N3_PLUS: &[Line] = &[
    u(1, "L+2", A2, &one("a2")),
    u(2, "L+2", A2, Z),
    u(3, "L+2", A2, &[("-(L+4)", "", "a5")]),
    u(4, "L+2", A2, &[("-(L+3)", "", "a6"), ("-4*(L+1)*(L+3)", "d", "a1")]),
    u(5, "L+2", A2, Z),
    u(6, "L+2", A2, &[("-4*(L+3)", "d", "a2")]),
    bad(u(7, "L+2", A2, &[("(L+3)*(L+2)", "", "a8"), ("2*(L+3)", "d", "a3")]), PRINTED),
    fixed(u(7, "L+2", A2, &[("(L+3)*(L+2)", "", "a8"), ("-2*(L+3)", "d", "a3")])),
    u(8, "L+2", A2, &[("-2", "d", "a5")]),
    w("Psi:1/2", A3, &[("-L*(L+2)", "", "a1")]),
    w("f:1/2", A4, &[("2*L+2", "F0 F0", "a1")]),
    w("E:1", A7, &[("2*L*(L-1)*(2*L+2)", "", "a1")]),
];

const N3_MINUS: &[Line] = &[
    u(1, "L-2", A4, &one("a4")),
    u(2, "L-2", A4, &[("L-1", "", "a6")]),
    u(3, "L-2", A4, &[("L-2", "", "a7")]),
    u(4, "L-2", A4, Z),
    u(5, "L-2", A4, &[("L*(L-1)", "", "a8"), ("2*(L-1)", "d", "a3")]),
    u(6, "L-2", A4, Z),
    u(7, "L-2", A4, Z),
    u(8, "L-2", A4, &[("-2", "d", "a7")]),
    w("f:1/2", A2, &[("2*(L+1)", "", "a1")]),
    w("Psi:1/2", A3, &[("-L*(L+2)", "", "a1")]),
    w("F:1", A5, &[("-4*(L+1)", "", "a1")]),
];

const N3_ONE: &[Line] = &[
    u(1, "L", A6, &one("a6")),
    u(2, "L", A6, Z),
    u(3, "L", A6, &[("-3", "", "a8"), ("-6", "d", "a3")]),
    u(5, "L", A6, Z),
    u(6, "L", A6, &[("-8", "d", "a6")]),
    u(8, "L", A6, &[("-2", "d", "a8"), ("-4", "d d", "a3")]),
];

const N3_TWO: &[Line] = &[
    bad(w("F:2", &[("1", "d", "a1")], &[("-24", "", "a1")]), "degree mismatch: F_2 d a1 lies below level 0"),
    Line { note: "corrected form of F_2 d a1 = -24 a1", ..w("F:2", &[("1", "d", "a5")], &[("-24", "", "a1")]) },
];

const SN4_PLUS: &[Line] = &[
    u(1, "L+1", A2, &one("a2")),
    u(2, "L+1", A2, Z),
    u(3, "L+1", A2, &[("-1", "", "a8")]),
    u(4, "L+1", A2, &[("L+2", "", "a6")]),
    u(5, "L+1", A2, &[("-1", "", "a9"), ("-1", "", "a10"), ("2*(L+2)", "d", "a1")]),
    u(6, "L+1", A2, Z),
    u(7, "L+1", A2, &[("1", "", "a13"), ("-2", "d", "a3")]),
    u(8, "L+1", A2, Z),
    u(9, "L+1", A2, &[("-1", "", "a12"), ("2", "d", "a2")]),
    u(10, "L+1", A2, &[("1", "", "a12"), ("2*(L+2)", "d", "a2")]),
    u(11, "L+1", A2, &[("2*(L+2)", "d", "a4"), ("-(L+2)", "", "a14")]),
    u(12, "L+1", A2, Z),
    u(13, "L+1", A2, &[("-2", "d", "a8")]),
    u(14, "L+1", A2, &[("2*(L+2)", "d", "a6")]),
    u(15, "L+1", A2, &[("-(L+2)", "", "a16"), ("2*(L+1)", "d", "a9"), ("-2", "d", "a10")]),
    u(16, "L+1", A2, &[("-2", "d", "a12")]),
    u(1, "L+1", A3, &one("a3")),
    u(2, "L+1", A3, &one("a8")),
    u(3, "L+1", A3, Z),
    u(4, "L+1", A3, &[("L+1", "", "a9"), ("-1", "", "a10")]),
    u(5, "L+1", A3, &[("L+2", "", "a7")]),
    u(6, "L+1", A3, &one("a12")),
    u(7, "L+1", A3, Z),
    u(8, "L+1", A3, Z),
    u(9, "L+1", A3, &one("a13")),
    u(10, "L+1", A3, &[("L+2", "", "a13")]),
    u(11, "L+1", A3, &[("-(L+2)", "", "a15")]),
    bad(u(12, "L+1", A3, &[("-1", "", "a16")]), PRINTED),
    fixed(u(12, "L+1", A3, Z)),
    u(13, "L+1", A3, Z),
    u(14, "L+1", A3, &[("L+2", "", "a16")]),
    u(15, "L+1", A3, Z),
    u(16, "L+1", A3, Z),
    w("Gpp:1/2", A4, Z),
    w("Gpp:1/2", A5, &[("L*(2*L+2)", "", "a1")]),
    w("Gmm:1/2", A4, &[("2*L+2", "F0", "a1")]),
    w("E:1", &[("1", "", "a11")], &[("L*(L-1)*(2*L+2)", "", "a1")]),
];

const SN4_MINUS: &[Line] = &[
    u(1, "L-1", A4, &one("a4")),
    u(2, "L-1", A4, &[("-L", "", "a6")]),
    u(3, "L-1", A4, &[("2*L", "d", "a1"), ("-L", "", "a9"), ("1", "", "a10")]),
    u(4, "L-1", A4, Z),
    u(5, "L-1", A4, &[("-1", "", "a11")]),
    u(6, "L-1", A4, Z),
    u(7, "L-1", A4, &[("-1", "", "a15"), ("2", "d", "a5")]),
    u(8, "L-1", A4, &[("2*L", "d", "a2"), ("L", "", "a12")]),
    u(9, "L-1", A4, &[("1", "", "a14"), ("2", "d", "a4")]),
    u(10, "L-1", A4, &[("L-1", "", "a14")]),
    u(11, "L-1", A4, Z),
    u(12, "L-1", A4, &[("2*L", "d", "a6")]),
    u(13, "L-1", A4, &[("-L", "", "a16"), ("2", "d", "a10")]),
    u(14, "L-1", A4, Z),
    u(15, "L-1", A4, &[("-2", "d", "a11")]),
    u(16, "L-1", A4, &[("2", "d", "a14")]),
    u(1, "L-1", A5, &one("a5")),
    u(2, "L-1", A5, &one("a10")),
    bad(u(3, "L-1", A5, &[("-1", "", "a7")]), PRINTED),
    fixed(u(3, "L-1", A5, &[("-L", "", "a7")])),
    u(4, "L-1", A5, &one("a11")),
    u(5, "L-1", A5, Z),
    u(6, "L-1", A5, &one("a14")),
    u(7, "L-1", A5, Z),
    u(8, "L-1", A5, &[("-L", "", "a13")]),
    u(9, "L-1", A5, &one("a15")),
    u(10, "L-1", A5, Z),
    u(11, "L-1", A5, Z),
    bad(u(12, "L-1", A5, &[("-1", "", "a16")]), PRINTED),
    fixed(u(12, "L-1", A5, &[("-L", "", "a16")])),
    u(13, "L-1", A5, Z),
    u(14, "L-1", A5, Z),
    u(15, "L-1", A5, Z),
    u(16, "L-1", A5, Z),
    w("Gmm:1/2", A2, &[("2*(L+1)", "", "a1")]),
    w("Gmm:1/2", A3, Z),
    w("Gmp:1/2", A3, &[("-2*(L+1)", "", "a1")]),
    w("F:1", &[("1", "", "a8")], &[("-2*(L+1)", "", "a1")]),
];

const SN4_ZERO: &[Line] = &[
    u(1, "L", A6, &one("a6")),
    u(2, "L", A6, Z),
    u(3, "L", A6, &[("2", "d", "a2"), ("1", "", "a12")]),
    u(6, "L", A6, Z),
    u(7, "L", A6, &[("4", "d d", "a1"), ("-2", "d", "a9"), ("1", "", "a16")]),
    u(8, "L", A6, Z),
    u(9, "L", A6, &[("4", "d", "a6")]),
    u(12, "L", A6, Z),
    u(13, "L", A6, &[("4", "d d", "a2"), ("2", "d", "a12")]),
    u(16, "L", A6, &[("4", "d d", "a6")]),
    u(1, "L", A7, &one("a7")),
    u(2, "L", A7, &one("a13")),
    u(3, "L", A7, Z),
    u(6, "L", A7, &one("a16")),
    u(7, "L", A7, Z),
    u(8, "L", A7, Z),
    u(9, "L", A7, Z),
    u(12, "L", A7, Z),
    u(13, "L", A7, Z),
    u(16, "L", A7, Z),
    u(1, "L", A9D, A9D),
    u(2, "L", A9D, &[("-1", "", "a12"), ("-2", "d", "a2")]),
    u(3, "L", A9D, &one("a13")),
    u(6, "L", A9D, &[("-2", "d", "a6")]),
    u(7, "L", A9D, &[("2", "d", "a7")]),
    u(8, "L", A9D, Z),
    u(9, "L", A9D, &[("2", "", "a16")]),
    u(12, "L", A9D, Z),
    u(13, "L", A9D, &[("2", "d", "a13")]),
    u(16, "L", A9D, &[("2", "d", "a16")]),
    w("F:2", &[("1", "d", "a8")], &[("-4*(L+1)", "", "a1")]),
];

const BN4_PLUS: &[Line] = &[
    u(1, "L+1", B2, &one("b2")),
    u(2, "L+1", B2, Z),
    u(3, "L+1", B2, &[("-(L+2)", "", "b9")]),
    u(4, "L+1", B2, &[("-(L+2)", "", "b6")]),
    u(5, "L+1", B2, &[("-(L+2)/2", "", "b7"), ("-(L+2)/2", "", "b10"), ("-2*(L+2)*(L+1)", "d", "b1")]),
    u(6, "L+1", B2, Z),
    u(7, "L+1", B2, &[("-(L+3)", "", "b12")]),
    u(8, "L+1", B2, &[("-(L+2)", "", "b13"), ("2*(L+2)", "d", "b3")]),
    u(9, "L+1", B2, Z),
    bad(u(10, "L+1", B2, &[("L+3", "", "b12"), ("-4*(L+1)", "d", "b2")]), PRINTED),
    fixed(u(10, "L+1", B2, &[("L+3", "", "b12"), ("-4*(L+2)", "d", "b2")])),
    u(11, "L+1", B2, &[("-(L+2)", "", "b14"), ("2*(L+2)", "d", "b4")]),
    u(12, "L+1", B2, Z),
    u(13, "L+1", B2, &[("-2*(L+2)", "d", "b9")]),
    u(14, "L+1", B2, &[("-2*(L+2)", "d", "b6")]),
    bad(u(15, "L+1", B2, &[("-4*(L+1)", "d d", "b1"), ("-(L+2)^2", "", "b16"), ("L+2", "d", "b7")]), PRINTED),
    fixed(u(15, "L+1", B2, &[("-(L+2)^2", "", "b16"), ("L+2", "d", "b7")])),
    bad(u(16, "L+1", B2, &[("-4", "d", "b12")]), PRINTED),
    fixed(u(16, "L+1", B2, &[("-1", "d", "b12")])),
    w("Gmm:1/2", &one("b3"), &[("2*(L+1)", "F0", "b1")]),
    w("Gmm_bar:1/2", &one("b4"), &[("2*(L+1)", "Fb0", "b1")]),
    w("Gpp:1/2", &one("b5"), &[("-2*L^2*(L+1)", "", "b1")]),
    w("E:1", &one("b8"), &[("2*L*(L-1)*(L+1)", "", "b1")]),
    w("F_bar:1", &[("1", "", "b10"), ("2*L", "d", "b1")], &[("-2*(L+2)", "Fb0", "b1")]),
    w("E_bar:1", &one("b11"), &[("2*L*(L-1)*(L+1)", "", "b1")]),
    bad(w("Gpp_bar:3/2", &one("b15"), &[("-2*L^2*(L+1)", "", "b1")]), "printed value; b15 is taken with the E_0, Ebar_0-invariant reading"),
    fixed(w("Gpp_bar:3/2", &one("b15"), &[("8*L^2*(L+1)", "", "b1")])),
];

const BN4_MINUS: &[Line] = &[
    u(1, "L-1", B5, &one("b5")),
    bad(u(2, "L-1", B5, &[("1/2", "", "b7"), ("1/2", "", "b10")]), PRINTED),
    fixed(u(2, "L-1", B5, &[("L/2", "", "b7"), ("L/2", "", "b10")])),
    u(3, "L-1", B5, &[("-L", "", "b8")]),
    u(4, "L-1", B5, &[("-L", "", "b11")]),
    u(5, "L-1", B5, Z),
    u(6, "L-1", B5, &[("L", "", "b14")]),
    u(7, "L-1", B5, &[("-(L-1)", "", "b15")]),
    u(8, "L-1", B5, Z),
    u(9, "L-1", B5, &[("L", "", "b13")]),
    u(10, "L-1", B5, &[("L-1", "", "b15")]),
    u(11, "L-1", B5, Z),
    u(12, "L-1", B5, &[("L^2", "", "b16"), ("L", "d", "b7")]),
    u(13, "L-1", B5, Z),
    u(14, "L-1", B5, Z),
    u(15, "L-1", B5, Z),
    u(16, "L-1", B5, &[("1", "d", "b15")]),
    w("Gmm:1/2", B2, &[("2*(L+1)", "", "b1")]),
    w("Gpm_bar:1/2", &one("b3"), &[("-2*L*(L+1)", "", "b1")]),
    w("Gmp:1/2", &one("b4"), &[("-2*L*(L+1)", "", "b1")]),
    w("F:1", &one("b6"), &[("-2*(L+1)", "", "b1")]),
    w("F_bar:1", &one("b9"), &[("-2*(L+1)", "", "b1")]),
    w("F_bar:1", &[("1", "", "b10"), ("2*L", "d", "b1")], &[("2*L", "Fb0", "b1")]),
    w("Gmm_bar:3/2", &one("b12"), &[("8*(L+1)", "", "b1")]),
];

const BN4_ONE: &[Line] = &[
    bad(
        w("Gmm_bar:5/2", &[("1", "d", "b12")], &[("24*(L+1)", "d", "b1")]),
        "degree mismatch: the image lies at level 0, d b1 at level 1",
    ),
    Line { note: "corrected form", ..w("Gmm_bar:5/2", &[("1", "d", "b12")], &[("24*(L+1)", "", "b1")]) },
];

pub const GROUPS: &[Group] = &[
    Group { name: "n3/4D-L=0", alg: AlgebraId::N3, delta: "L/4", lambdas: &[2, 3, 4, 5], lines: N3_PLUS },
    Group { name: "n3/4D+L+2=0", alg: AlgebraId::N3, delta: "-(L+2)/4", lambdas: &[4, 5, 6, 7], lines: N3_MINUS },
    Group { name: "n3/L=1", alg: AlgebraId::N3, delta: "-3/4", lambdas: &[1], lines: N3_ONE },
    Group { name: "n3/L=2", alg: AlgebraId::N3, delta: "-1", lambdas: &[2], lines: N3_TWO },
    Group { name: "sn4/2D-L=0", alg: AlgebraId::SmallN4 { beta: 1 }, delta: "L/2", lambdas: &[2, 3, 4], lines: SN4_PLUS },
    Group {
        name: "sn4/2D+L+2=0",
        alg: AlgebraId::SmallN4 { beta: 1 },
        delta: "-(L+2)/2",
        lambdas: &[2, 3, 4],
        lines: SN4_MINUS,
    },
    Group { name: "sn4/L=0", alg: AlgebraId::SmallN4 { beta: 1 }, delta: "-1", lambdas: &[0], lines: SN4_ZERO },
    Group { name: "bn4/2D-L=0", alg: AlgebraId::BigN4, delta: "L/2", lambdas: &[2, 3], lines: BN4_PLUS },
    Group { name: "bn4/2D+L+2=0", alg: AlgebraId::BigN4, delta: "-(L+2)/2", lambdas: &[2, 3], lines: BN4_MINUS },
    Group { name: "bn4/L=1", alg: AlgebraId::BigN4, delta: "-3/2", lambdas: &[1], lines: BN4_ONE },
];

/// Result of one line at one Lambda.
#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub group: &'static str,
    pub line: String,
    pub lambda: i64,
    pub holds: bool,
    pub expected: bool,
    pub note: &'static str,
    /// `lhs - rhs` when the identity fails.
    pub residual: Option<String>,
}

impl Outcome {
    pub fn ok(&self) -> bool {
        self.holds == self.expected
    }
}

fn render_combo(c: Combo) -> String {
    if c.is_empty() {
        return "0".into();
    }
    c.iter()
        .map(|(k, w, n)| {
            let w = if w.is_empty() { String::new() } else { format!("{w} ") };
            format!("({k}) {w}{n}")
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn render_line(l: &Line) -> String {
    let op = match l.op {
        Op::U(i, lp) => format!("u{i}^{{{lp}}}"),
        Op::Word(w) => w.to_string(),
    };
    format!("{op} [{}] = {}", render_combo(l.target), render_combo(l.rhs))
}

pub fn module_for(g: &Group, lam: i64) -> Result<VermaModule> {
    let delta = eval_coef(g.delta, lam, lam)?;
    let hw = if g.alg == AlgebraId::BigN4 {
        HighestWeight::big(delta, lam as u32, lam as u32)
    } else {
        HighestWeight::new(delta, lam)
    };
    build_module(g.alg, hw)
}

/// `lhs - rhs` for a line in a module at Lambda `lam`.
pub fn residual(m: &VermaModule, l: &Line, lam: i64) -> Result<VVec> {
    let target = combo(m, l.target, lam, lam)?;
    let mut lhs = match l.op {
        Op::U(i, lp) => {
            let lp = eval_coef(lp, lam, lam)?.to_i64().unwrap_or(-1);
            apply_u(m, i, lp, &target)?
        }
        Op::Word(w) => m.act_word(&parse_word(m.alg, w)?, &target)?,
    };
    axpy(&mut lhs, &Scalar::from_int(-1), &combo(m, l.rhs, lam, lam)?);
    Ok(lhs)
}

pub fn run_group(g: &Group) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    for &lam in g.lambdas {
        let m = module_for(g, lam)?;
        for l in g.lines {
            let r = residual(&m, l, lam)?;
            out.push(Outcome {
                group: g.name,
                line: render_line(l),
                lambda: lam,
                holds: r.is_empty(),
                expected: l.expect,
                note: l.note,
                residual: if r.is_empty() { None } else { Some(m.render(&r)) },
            });
        }
    }
    Ok(out)
}

pub fn groups_matching(filter: &str) -> Vec<&'static Group> {
    GROUPS.iter().filter(|g| filter == "all" || g.name.starts_with(filter)).collect()
}

/// Writes `v` as a combination of `d^k x` over named vectors `x`, `k <= 2`.
pub fn decompose(m: &VermaModule, v: &VVec, lam: i64) -> Result<Option<String>> {
    use crate::singular::{named, named_vector};
    let mut cols = Vec::new();
    let mut labels = Vec::new();
    let mut span = crate::linalg::Echelon::new();
    for (name, _) in named::table(m.alg) {
        let x = named_vector(m, name)?;
        let mut y = x;
        for k in 0..3 {
            if !y.is_empty() && span.insert(&y) {
                cols.push(y.clone());
                labels.push(format!("{}{name}", "d".repeat(k)));
            }
            y = m.act(crate::algebra::GenMode::DEL, &y)?;
        }
    }
    let _ = lam;
    Ok(crate::linalg::solve_columns(&cols, v).map(|x| {
        x.iter()
            .zip(&labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| format!("{}*{l}", c.render()))
            .collect::<Vec<_>>()
            .join(" + ")
    }))
}

/// The complete list of proper singular vectors of `M(delta, lam[, lam_bar])`
/// as spanning combinations of named vectors; empty when the module is irreducible.
pub fn expected_singular(alg: AlgebraId, delta: &Scalar, lam: i64, lam_bar: Option<i64>) -> Vec<Combo<'static>> {
    let d = |k: i64| delta * &Scalar::from_int(k);
    let l = Scalar::from_int(lam);
    let zero = |s: Scalar| s.is_zero();
    let minus = |k: i64| zero(&(&d(k) + &l) + &Scalar::from_int(2));
    let mut out: Vec<Combo<'static>> = Vec::new();
    match alg {
        AlgebraId::N2 => {
            let half = Scalar::from_rational(num_rational::BigRational::new((-1).into(), 2.into()));
            if zero(&d(2) - &l) {
                out.push(&[("1", "", "Gp_v")]);
                if *delta == half && lam == -1 {
                    out.push(&[("1", "", "GmGp_v")]);
                }
            }
            if zero(&d(2) + &l) {
                out.push(&[("1", "", "Gm_v")]);
                if *delta == half && lam == 1 {
                    out.push(&[("1", "", "GpGm_v")]);
                }
            }
        }
        AlgebraId::N3 => {
            if zero(&d(4) - &l) {
                out.push(A2);
            } else if minus(4) && lam >= 2 {
                out.push(A4);
            } else if minus(4) && lam == 1 {
                out.push(A6);
            }
        }
        AlgebraId::SmallN4 { .. } => {
            if zero(&d(2) - &l) {
                out.extend([A2, A3, &[("1", "", "a8")] as Combo]);
            } else if minus(2) && lam >= 2 {
                out.extend([A4, A5, &[("1", "", "a11")] as Combo]);
            } else if minus(2) && lam == 1 {
                out.extend([
                    A4,
                    A5,
                    &[("1", "", "a14")] as Combo,
                    &[("1", "", "a15"), ("-2", "d", "a5")],
                    &[("1", "", "a16"), ("-2", "d", "a10")],
                ]);
            } else if minus(2) && lam == 0 {
                out.extend([
                    A6,
                    A7,
                    A9D,
                    &[("1", "", "a13")] as Combo,
                    &[("1", "", "a12"), ("2", "d", "a2")],
                ]);
            }
        }
        AlgebraId::BigN4 => {
            if lam_bar == Some(lam) {
                if zero(&d(2) - &l) {
                    out.push(B2);
                } else if minus(2) && lam >= 1 {
                    out.push(B5);
                }
            }
        }
    }
    out
}

/// Compares `find_singular` with [`expected_singular`]; returns
/// `(matches, found dimension, expected dimension)`.
pub fn singular_list_matches(m: &VermaModule, dpow_cutoff: u32) -> Result<(bool, usize, usize)> {
    let lam = if m.alg == AlgebraId::N2 { n2_lambda(m)? } else { m.lambda_int() as i64 };
    let lam_bar = m.hw.lambda_bar.map(|b| b as i64);
    let found: Vec<VVec> =
        crate::singular::find_singular(m, dpow_cutoff)?.into_iter().flat_map(|r| r.basis).collect();
    let mut expected = Vec::new();
    for c in expected_singular(m.alg, &m.hw.delta, lam, lam_bar) {
        expected.push(combo(m, c, lam, lam_bar.unwrap_or(lam))?);
    }
    Ok((crate::singular::same_span(&found, &expected), found.len(), expected.len()))
}

fn n2_lambda(m: &VermaModule) -> Result<i64> {
    m.hw.lambda.to_i64().ok_or_else(|| crate::ScfError::InvalidArgument("N2 Lambda must be an integer here".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog() {
        let mut bad = Vec::new();
        for g in GROUPS {
            for o in run_group(g).unwrap() {
                if !o.ok() {
                    bad.push(format!("{} L={} {} :: {:?}", o.group, o.lambda, o.line, o.residual));
                }
            }
        }
        assert!(bad.is_empty(), "{}", bad.join("\n"));
    }
}
