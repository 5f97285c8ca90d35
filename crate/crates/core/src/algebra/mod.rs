//! The N=2, N=3, small N=4 and big N=4 superconformal algebras as
//! mode-indexed Lie superalgebras.

mod gens;
mod realize;
mod tables;

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

pub use gens::{grade_parity, AlgElement, AlgebraId, Gen, GenMode};
pub use realize::{basis_at, expand, realize};

use crate::error::Result;
use crate::exactfield::Scalar;
use crate::grassmann::contact_bracket;
use crate::linalg::Echelon;

type BracketCache = RwLock<HashMap<(GenMode, GenMode), AlgElement>>;

fn big_cache() -> &'static BracketCache {
    static C: OnceLock<BracketCache> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Contact bracket of the realizations, re-expanded in the generator basis.
pub fn realized_bracket(alg: AlgebraId, x: GenMode, y: GenMode) -> Result<AlgElement> {
    let f = realize(alg, x)?;
    let g = realize(alg, y)?;
    expand(alg, &contact_bracket(&f, &g)?)
}

/// Bracket of two generators.
pub fn bracket(alg: AlgebraId, x: GenMode, y: GenMode) -> Result<AlgElement> {
    x.validate(alg)?;
    y.validate(alg)?;
    let (x, y) = (x.canonical(), y.canonical());
    if alg != AlgebraId::BigN4 {
        return Ok(tables::table_bracket(alg, x, y));
    }
    if let Some(r) = big_cache().read().unwrap().get(&(x, y)) {
        return Ok(r.clone());
    }
    let r = realized_bracket(alg, x, y)?;
    big_cache().write().unwrap().insert((x, y), r.clone());
    Ok(r)
}

/// Bilinear extension of [`bracket`]; both arguments must be parity-homogeneous.
pub fn bracket_elements(alg: AlgebraId, a: &AlgElement, b: &AlgElement) -> Result<AlgElement> {
    let mut r = AlgElement::zero();
    for (x, c) in a.iter() {
        for (y, d) in b.iter() {
            r.axpy(&(c * d), &bracket(alg, *x, *y)?);
        }
    }
    Ok(r)
}

/// All canonical generators with `lo <= mode2 <= hi`.
pub fn genmodes(alg: AlgebraId, lo: i32, hi: i32) -> Vec<GenMode> {
    (lo..=hi).flat_map(|d| basis_at(alg, d)).collect()
}

/// Annihilation-subalgebra generators with `mode2 <= hi`.
pub fn annihilation_genmodes(alg: AlgebraId, hi: i32) -> Vec<GenMode> {
    genmodes(alg, -2, hi).into_iter().filter(|g| g.in_annihilation()).collect()
}

/// Outcome of a consistency check.
#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct Report {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub(crate) fn fail(&mut self, s: String) {
        if self.mismatches.len() < 50 {
            self.mismatches.push(s);
        }
    }
}

/// Table brackets against realized contact brackets for `|mode2| <= 2*bound`.
pub fn check_tables(alg: AlgebraId, mode_bound: i32) -> Report {
    let b = 2 * mode_bound;
    let gs = genmodes(alg, -b, b);
    let mut rep = Report::default();
    for &x in &gs {
        for &y in &gs {
            rep.checked += 1;
            let t = bracket(alg, x, y);
            let r = realized_bracket(alg, x, y);
            match (t, r) {
                (Ok(t), Ok(r)) if t == r => {}
                (Ok(t), Ok(r)) => rep.fail(format!("[{x}, {y}]: table {t}, realization {r}")),
                (t, r) => rep.fail(format!("[{x}, {y}]: {t:?} / {r:?}")),
            }
        }
    }
    rep
}

fn sign(p: u8) -> Scalar {
    if p.is_multiple_of(2) {
        Scalar::one()
    } else {
        Scalar::from_int(-1)
    }
}

/// Super-Jacobi identity on all generator triples in `gs`.
pub fn check_jacobi(alg: AlgebraId, gs: &[GenMode]) -> Report {
    let mut rep = Report::default();
    for &x in gs {
        for &y in gs {
            let xy = match bracket(alg, x, y) {
                Ok(v) => v,
                Err(e) => {
                    rep.fail(format!("[{x}, {y}]: {e}"));
                    continue;
                }
            };
            for &z in gs {
                rep.checked += 1;
                let run = || -> Result<AlgElement> {
                    let ex = AlgElement::gen(x);
                    let ey = AlgElement::gen(y);
                    let ez = AlgElement::gen(z);
                    let lhs = bracket_elements(alg, &ex, &bracket_elements(alg, &ey, &ez)?)?;
                    let mut rhs = bracket_elements(alg, &xy, &ez)?;
                    let t = bracket_elements(alg, &ey, &bracket_elements(alg, &ex, &ez)?)?;
                    rhs.axpy(&sign(x.parity() * y.parity()), &t);
                    let mut d = lhs;
                    d.axpy(&Scalar::from_int(-1), &rhs);
                    Ok(d)
                };
                match run() {
                    Ok(d) if d.is_zero() => {}
                    Ok(d) => rep.fail(format!("Jacobi({x}, {y}, {z}) = {d}")),
                    Err(e) => rep.fail(format!("Jacobi({x}, {y}, {z}): {e}")),
                }
            }
        }
    }
    rep
}

/// The map from the unbarred to the barred small N=4 copy inside big N=4,
/// exchanging the roles of `G+-` and `G-+`.
pub fn phi(g: GenMode) -> GenMode {
    let gen = match g.gen {
        Gen::Gpm => Gen::GmpB,
        Gen::Gmp => Gen::GpmB,
        other => other.bar(),
    };
    GenMode::new(gen, g.mode2).canonical()
}

fn phi_element(a: &AlgElement) -> AlgElement {
    let mut r = AlgElement::zero();
    for (g, c) in a.iter() {
        r.add_term(c.clone(), phi(*g));
    }
    r
}

/// Checks `phi([x, y]) = [phi x, phi y]` for unbarred annihilation generators up to `hi`.
pub fn check_phi(hi: i32) -> Report {
    let alg = AlgebraId::BigN4;
    let gs: Vec<GenMode> = annihilation_genmodes(alg, hi).into_iter().filter(|g| !g.gen.is_barred()).collect();
    let mut rep = Report::default();
    for &x in &gs {
        for &y in &gs {
            rep.checked += 1;
            let lhs = bracket(alg, x, y).map(|v| phi_element(&v));
            let rhs = bracket(alg, phi(x), phi(y));
            match (lhs, rhs) {
                (Ok(a), Ok(b)) if a == b => {}
                (a, b) => rep.fail(format!("phi[{x}, {y}]: {a:?} vs {b:?}")),
            }
        }
    }
    rep
}

/// Dimension of the degree-`d` part generated by degree 1/2 and 1, against
/// the full dimension, for `1 <= d <= hi`.
pub fn positive_generation(alg: AlgebraId, hi: i32) -> Result<Vec<(i32, usize, usize)>> {
    let mut spans: Vec<Echelon<GenMode>> = vec![Echelon::new(); (hi + 1) as usize];
    let gens: Vec<GenMode> = genmodes(alg, 1, 2);
    for g in &gens {
        spans[g.mode2 as usize].insert(&AlgElement::gen(*g).terms);
    }
    for d in 2..=hi {
        for g in &gens {
            let k = d - g.mode2;
            if k < 1 {
                continue;
            }
            let prev: Vec<AlgElement> =
                spans[k as usize].basis().map(|v| AlgElement { terms: v.clone() }).collect();
            for v in prev {
                let b = bracket_elements(alg, &AlgElement::gen(*g), &v)?;
                spans[d as usize].insert(&b.terms);
            }
        }
    }
    Ok((1..=hi).map(|d| (d, spans[d as usize].dim(), basis_at(alg, d).len())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gm(s: &str) -> GenMode {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        let r = bracket(AlgebraId::N2, gm("J:1"), gm("Gp:-1/2")).unwrap();
        assert_eq!(r.render(), "Gp:1/2");
        let r = bracket(AlgebraId::N3, gm("h:1/2"), gm("Psi:1/2")).unwrap();
        assert_eq!(r.render(), "-H:1");
        let r = bracket(AlgebraId::small(1), gm("Gpp:1/2"), gm("Gmm:-1/2")).unwrap();
        assert_eq!(r, {
            let mut e = AlgElement::term(Scalar::from_int(-2), gm("L:0"));
            e.add_term(Scalar::from_int(-1), gm("H:0"));
            e
        });
    }

    #[test]
    fn tables_match_realizations() {
        for alg in [AlgebraId::N2, AlgebraId::N3, AlgebraId::small(1), AlgebraId::small(-1)] {
            let rep = check_tables(alg, 2);
            assert!(rep.ok(), "{alg}: {:?}", rep.mismatches);
        }
    }

    #[test]
    fn big_n4_closes() {
        let gs = annihilation_genmodes(AlgebraId::BigN4, 3);
        for &x in &gs {
            for &y in &gs {
                bracket(AlgebraId::BigN4, x, y).unwrap();
            }
        }
    }

    #[test]
    fn generated_by_low_degrees() {
        for alg in [AlgebraId::N2, AlgebraId::N3, AlgebraId::small(1), AlgebraId::BigN4] {
            for (d, got, full) in positive_generation(alg, 6).unwrap() {
                assert_eq!(got, full, "{alg} degree {d}");
            }
        }
    }
}
