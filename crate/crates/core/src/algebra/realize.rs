//! Generators as elements of the Grassmann superalgebra, and re-expansion of
//! Grassmann elements in the generator basis.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::gens::{AlgElement, AlgebraId, Gen, GenMode};
use crate::error::{Result, ScfError};
use crate::exactfield::Scalar;
use crate::grassmann::{hodge_dual, BasisKind, GElement, GMonomial};
use crate::linalg::{solve_columns, SparseVec};

fn int(x: i64) -> Scalar {
    Scalar::from_int(x)
}

fn lin(n: u8, kind: BasisKind, tpow: i64, parts: &[(Scalar, &[u8])]) -> GElement {
    let mut e = GElement::zero(n, kind);
    for (c, idx) in parts {
        e = e.add(&GElement::term(n, kind, c.clone(), tpow, idx)).unwrap();
    }
    e
}

/// Grassmann realization of a generator.
pub fn realize(alg: AlgebraId, g: GenMode) -> Result<GElement> {
    g.validate(alg)?;
    let g = g.canonical();
    match alg {
        AlgebraId::N2 => Ok(realize_n2(g)),
        AlgebraId::N3 => Ok(realize_n3(g)),
        AlgebraId::SmallN4 { beta } => Ok(realize_small_n4(beta as i64, g)),
        AlgebraId::BigN4 => {
            let beta = if g.gen.is_barred() { -1 } else { 1 };
            Ok(realize_small_n4(beta, GenMode::new(g.gen.unbar(), g.mode2)))
        }
    }
}

fn realize_n2(g: GenMode) -> GElement {
    let k = BasisKind::Split;
    let (m2, i) = (g.mode2 as i64, Scalar::one());
    match g.gen {
        Gen::L => GElement::term(2, k, Scalar::ratio(-1, 2), m2 / 2 + 1, &[]),
        Gen::J => GElement::term(2, k, i, m2 / 2, &[1, 0]),
        Gen::Gp => GElement::term(2, k, i, (m2 + 1) / 2, &[0]),
        Gen::Gm => GElement::term(2, k, i, (m2 + 1) / 2, &[1]),
        _ => unreachable!(),
    }
}

fn realize_n3(g: GenMode) -> GElement {
    let k = BasisKind::Standard;
    let m2 = g.mode2 as i64;
    let i = Scalar::i();
    let one = Scalar::one();
    let n = m2 / 2;
    let r = (m2 + 1) / 2;
    match g.gen {
        Gen::L => GElement::term(3, k, Scalar::ratio(-1, 2), n + 1, &[]),
        Gen::H => GElement::term(3, k, &i * &int(2), n, &[0, 1]),
        Gen::E => lin(3, k, n, &[(int(-1), &[0, 2]), (-&i, &[1, 2])]),
        Gen::F => lin(3, k, n, &[(int(1), &[0, 2]), (-&i, &[1, 2])]),
        Gen::Psi => GElement::term(3, k, int(-1), (m2 - 1) / 2, &[0, 1, 2]),
        Gen::SH => GElement::term(3, k, &i * &int(-2), r, &[2]),
        Gen::SE => lin(3, k, r, &[(i, &[0]), (-&one, &[1])]),
        Gen::SF => lin(3, k, r, &[(i, &[0]), (one, &[1])]),
        _ => unreachable!(),
    }
}

/// Small N=4 generators for a given `beta`; `g` is unbarred.
fn realize_small_n4(beta: i64, g: GenMode) -> GElement {
    let k = BasisKind::Standard;
    let m2 = g.mode2 as i64;
    let i = Scalar::i();
    let b = int(beta);
    let ib = &i * &b;
    let half = Scalar::ratio(1, 2);
    let n = m2 / 2;
    match g.gen {
        Gen::L => {
            let e = lin(4, k, n + 1, &[(int(1), &[])]);
            let e = e.add(&lin(4, k, n - 1, &[(&b * &int(n * (n + 1)), &[0, 1, 2, 3])])).unwrap();
            e.scale(&Scalar::ratio(-1, 2))
        }
        Gen::H => lin(4, k, n, &[(i.clone(), &[0, 1]), (-&ib, &[2, 3])]),
        Gen::E => lin(4, k, n, &[(int(-1), &[0, 2]), (-&b, &[1, 3]), (-&i, &[1, 2]), (ib.clone(), &[0, 3])])
            .scale(&half),
        Gen::F => lin(4, k, n, &[(int(1), &[0, 2]), (b.clone(), &[1, 3]), (-&i, &[1, 2]), (ib.clone(), &[0, 3])])
            .scale(&half),
        Gen::Gpp | Gen::Gmp | Gen::Gpm | Gen::Gmm => {
            let form: [(Scalar, u8); 2] = match g.gen {
                Gen::Gpp => [(int(1), 0), (i.clone(), 1)],
                Gen::Gmp => [(int(1), 2), (i.clone(), 3)],
                Gen::Gpm => [(int(1), 2), (-&i, 3)],
                _ => [(int(-1), 0), (i.clone(), 1)],
            };
            // r + 1/2
            let p = (m2 + 1) / 2;
            let mut e = GElement::zero(4, k);
            for (c, idx) in &form {
                e = e.add(&GElement::term(4, k, c.clone(), p, &[*idx])).unwrap();
                let dual = hodge_dual(4, &GMonomial::new(p - 1, 1 << idx)).unwrap();
                e = e.add(&dual.scale(&(c * &(&b * &int(-p))))).unwrap();
            }
            e.scale(&(&Scalar::one() / &Scalar::sqrt2()))
        }
        _ => unreachable!(),
    }
}

/// Canonical generators of doubled degree `d` for the algebra.
pub fn basis_at(alg: AlgebraId, d: i32) -> Vec<GenMode> {
    let mut out: Vec<GenMode> = Vec::new();
    for &g in alg.gens() {
        let gm = GenMode::new(g, d);
        if gm.validate(alg).is_ok() {
            let c = gm.canonical();
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out
}

fn to_vec(e: &GElement) -> SparseVec<GMonomial> {
    e.terms().map(|(m, c)| (*m, c.clone())).collect()
}

type ExpandCache = Mutex<HashMap<(AlgebraId, i32), Vec<SparseVec<GMonomial>>>>;

fn expand_cache() -> &'static ExpandCache {
    static C: OnceLock<ExpandCache> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Writes a homogeneous Grassmann element in the generator basis of its degree.
pub fn expand(alg: AlgebraId, e: &GElement) -> Result<AlgElement> {
    if e.is_zero() {
        return Ok(AlgElement::zero());
    }
    let d = e.degree2().ok_or(ScfError::NotHomogeneous)? as i32;
    let basis = basis_at(alg, d);
    let cols = {
        let mut c = expand_cache().lock().unwrap();
        c.entry((alg, d))
            .or_insert_with(|| basis.iter().map(|g| to_vec(&realize(alg, *g).unwrap())).collect())
            .clone()
    };
    let x = solve_columns(&cols, &to_vec(e))
        .ok_or_else(|| ScfError::NotExpressible(format!("{} in {alg}", e.render())))?;
    let mut r = AlgElement::zero();
    for (c, g) in x.into_iter().zip(basis) {
        if !c.is_zero() {
            r.add_term(c, g);
        }
    }
    Ok(r)
}
