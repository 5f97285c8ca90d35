//! Structure constants for N=2, N=3 and the small N=4 algebra.

use super::gens::{AlgElement, AlgebraId, Gen, GenMode};
use crate::exactfield::Scalar;

fn half(x2: i32) -> Scalar {
    Scalar::ratio(x2 as i64, 2)
}

fn int(x: i64) -> Scalar {
    Scalar::from_int(x)
}

fn one(g: Gen, m2: i32) -> AlgElement {
    AlgElement::gen(GenMode::new(g, m2))
}

fn sum(parts: &[(Scalar, Gen)], m2: i32) -> AlgElement {
    let mut e = AlgElement::zero();
    for (c, g) in parts {
        e.add_term(c.clone(), GenMode::new(*g, m2));
    }
    e
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Sl {
    H,
    E,
    F,
}

fn sl_bracket(a: Sl, b: Sl) -> Vec<(i64, Sl)> {
    use Sl::*;
    match (a, b) {
        (H, E) => vec![(2, E)],
        (E, H) => vec![(-2, E)],
        (H, F) => vec![(-2, F)],
        (F, H) => vec![(2, F)],
        (E, F) => vec![(1, H)],
        (F, E) => vec![(-1, H)],
        _ => vec![],
    }
}

fn sl_form(a: Sl, b: Sl) -> i64 {
    use Sl::*;
    match (a, b) {
        (H, H) => 2,
        (E, F) | (F, E) => 1,
        _ => 0,
    }
}

/// Bracket from the stored table; `alg` must not be `BigN4`.
pub(crate) fn table_bracket(alg: AlgebraId, x: GenMode, y: GenMode) -> AlgElement {
    let f = match alg {
        AlgebraId::N2 => n2,
        AlgebraId::N3 => n3,
        AlgebraId::SmallN4 { beta } => {
            return oriented(x, y, |a, b| small_n4(beta as i64, a, b));
        }
        AlgebraId::BigN4 => unreachable!("big N=4 brackets come from the realization"),
    };
    oriented(x, y, f)
}

/// Applies `f` to `(x, y)` or, if it has no rule for that order, to `(y, x)`
/// with the super-antisymmetry sign.
fn oriented(x: GenMode, y: GenMode, f: impl Fn(GenMode, GenMode) -> Option<AlgElement>) -> AlgElement {
    if let Some(r) = f(x, y) {
        return r;
    }
    if let Some(r) = f(y, x) {
        let s = if x.parity() * y.parity() == 1 { 1 } else { -1 };
        return r.scale(&int(s));
    }
    AlgElement::zero()
}

fn n2(x: GenMode, y: GenMode) -> Option<AlgElement> {
    use Gen::*;
    let (m, n) = (x.mode2, y.mode2);
    let s = m + n;
    Some(match (x.gen, y.gen) {
        (L, L) => one(L, s).scale(&half(m - n)),
        (L, J) => one(J, s).scale(&half(-n)),
        (L, Gp) | (L, Gm) => one(y.gen, s).scale(&Scalar::ratio((m - 2 * n) as i64, 4)),
        (J, Gp) => one(Gp, s),
        (J, Gm) => one(Gm, s).scale(&int(-1)),
        (Gp, Gm) => sum(&[(int(2), L), (half(m - n), J)], s),
        (J, J) | (Gp, Gp) | (Gm, Gm) => AlgElement::zero(),
        _ => return None,
    })
}

fn n3_even(g: Gen) -> Option<Sl> {
    match g {
        Gen::H => Some(Sl::H),
        Gen::E => Some(Sl::E),
        Gen::F => Some(Sl::F),
        _ => None,
    }
}

fn n3_odd(g: Gen) -> Option<Sl> {
    match g {
        Gen::SH => Some(Sl::H),
        Gen::SE => Some(Sl::E),
        Gen::SF => Some(Sl::F),
        _ => None,
    }
}

fn even_gen(s: Sl) -> Gen {
    match s {
        Sl::H => Gen::H,
        Sl::E => Gen::E,
        Sl::F => Gen::F,
    }
}

fn odd_gen(s: Sl) -> Gen {
    match s {
        Sl::H => Gen::SH,
        Sl::E => Gen::SE,
        Sl::F => Gen::SF,
    }
}

fn sl_image(b: Vec<(i64, Sl)>, to: fn(Sl) -> Gen, coef: &Scalar, m2: i32) -> AlgElement {
    let parts: Vec<(Scalar, Gen)> = b.into_iter().map(|(c, s)| (coef * &int(c), to(s))).collect();
    sum(&parts, m2)
}

fn n3(x: GenMode, y: GenMode) -> Option<AlgElement> {
    use Gen::*;
    let (m, n) = (x.mode2, y.mode2);
    let s = m + n;
    match (x.gen, y.gen) {
        (L, L) => return Some(one(L, s).scale(&half(m - n))),
        (L, Psi) => return Some(one(Psi, s).scale(&Scalar::ratio((-m - 2 * n) as i64, 4))),
        (L, g) if n3_even(g).is_some() => return Some(one(g, s).scale(&half(-n))),
        (L, g) if n3_odd(g).is_some() => return Some(one(g, s).scale(&Scalar::ratio((m - 2 * n) as i64, 4))),
        (Psi, Psi) => return Some(AlgElement::zero()),
        _ => {}
    }
    if let (Some(a), Some(b)) = (n3_even(x.gen), n3_even(y.gen)) {
        return Some(sl_image(sl_bracket(a, b), even_gen, &Scalar::one(), s));
    }
    if n3_even(x.gen).is_some() && y.gen == Psi {
        return Some(AlgElement::zero());
    }
    if let (Some(a), Some(b)) = (n3_even(x.gen), n3_odd(y.gen)) {
        let mut r = sl_image(sl_bracket(a, b), odd_gen, &Scalar::one(), s);
        r.add_term(&half(m) * &int(2 * sl_form(a, b)), GenMode::new(Psi, s));
        return Some(r);
    }
    if let (Some(a), Psi) = (n3_odd(x.gen), y.gen) {
        return Some(one(even_gen(a), s).scale(&int(-1)));
    }
    if let (Some(a), Some(b)) = (n3_odd(x.gen), n3_odd(y.gen)) {
        let mut r = sl_image(sl_bracket(a, b), even_gen, &-&half(m - n), s);
        r.add_term(int(-4 * sl_form(a, b)), GenMode::new(L, s));
        return Some(r);
    }
    None
}

/// `(doublet, is_up)` for the small N=4 odd generators under the sl2 action.
/// For `beta = -1` the roles of `G+-` and `G-+` are exchanged.
fn doublet(beta: i64, g: Gen) -> Option<(u8, bool)> {
    let (gmp, gpm) = if beta == 1 { (Gen::Gmp, Gen::Gpm) } else { (Gen::Gpm, Gen::Gmp) };
    match g {
        Gen::Gpp => Some((0, true)),
        Gen::Gmm => Some((1, false)),
        g if g == gmp => Some((0, false)),
        g if g == gpm => Some((1, true)),
        _ => None,
    }
}

fn doublet_gen(beta: i64, d: u8, up: bool) -> Gen {
    let (gmp, gpm) = if beta == 1 { (Gen::Gmp, Gen::Gpm) } else { (Gen::Gpm, Gen::Gmp) };
    match (d, up) {
        (0, true) => Gen::Gpp,
        (0, false) => gmp,
        (1, true) => gpm,
        _ => Gen::Gmm,
    }
}

fn small_n4(beta: i64, x: GenMode, y: GenMode) -> Option<AlgElement> {
    use Gen::*;
    let (m, n) = (x.mode2, y.mode2);
    let s = m + n;
    match (x.gen, y.gen) {
        (L, L) => return Some(one(L, s).scale(&half(m - n))),
        (L, g) if n3_even(g).is_some() => return Some(one(g, s).scale(&half(-n))),
        (L, g) if doublet(beta, g).is_some() => return Some(one(g, s).scale(&Scalar::ratio((m - 2 * n) as i64, 4))),
        _ => {}
    }
    if let (Some(a), Some(b)) = (n3_even(x.gen), n3_even(y.gen)) {
        return Some(sl_image(sl_bracket(a, b), even_gen, &Scalar::one(), s));
    }
    if let (Some(a), Some((d, up))) = (n3_even(x.gen), doublet(beta, y.gen)) {
        return Some(match (a, up) {
            (Sl::H, true) => one(y.gen, s),
            (Sl::H, false) => one(y.gen, s).scale(&int(-1)),
            (Sl::E, false) => one(doublet_gen(beta, d, true), s),
            (Sl::F, true) => one(doublet_gen(beta, d, false), s),
            _ => AlgElement::zero(),
        });
    }
    let rs = half(m - n);
    let b = int(beta);
    Some(match (x.gen, y.gen) {
        (a, c) if a == c && doublet(beta, a).is_some() => AlgElement::zero(),
        (Gpp, Gpm) => one(E, s).scale(&(&rs * &int(1 + beta))),
        (Gpp, Gmp) => one(E, s).scale(&(&rs * &int(1 - beta))),
        (Gpp, Gmm) => sum(&[(-&rs, H), (int(-2), L)], s),
        (Gpm, Gmp) => sum(&[(&rs * &b, H), (int(2), L)], s),
        (Gpm, Gmm) => one(F, s).scale(&(&-&rs * &int(1 - beta))),
        (Gmp, Gmm) => one(F, s).scale(&(&-&rs * &int(1 + beta))),
        _ => return None,
    })
}
