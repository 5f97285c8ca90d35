//! Named vectors, E_0-invariants, the `u_i` operators, and singular vectors.

mod locus;
pub mod named;

use serde::Serialize;

use crate::algebra::{genmodes, AlgebraId, Gen, GenMode};
use crate::error::{Result, ScfError};
use crate::exactfield::{Param, Scalar};
use crate::linalg::{axpy, nullspace};
use crate::verma::{vvec_key, PBWKey, VVec, VermaModule};

pub use locus::{singular_locus, LocusEntry};

/// Evaluates a coefficient string in `L` and `Lb`.
pub fn eval_coef(expr: &str, lam: i64, lam_bar: i64) -> Result<Scalar> {
    let mut s = String::new();
    let mut it = expr.chars().peekable();
    while let Some(c) = it.next() {
        if c == 'L' {
            if it.peek() == Some(&'b') {
                it.next();
                s.push_str(&format!("({lam_bar})"));
            } else {
                s.push_str(&format!("({lam})"));
            }
        } else {
            s.push(c);
        }
    }
    s.parse()
}

/// Parses a word of the named-vector language into generators, leftmost first.
pub fn parse_word(alg: AlgebraId, word: &str) -> Result<Vec<GenMode>> {
    word.split_whitespace()
        .map(|t| {
            let g = match t {
                "d" => GenMode::DEL,
                "F0" => GenMode::new(Gen::F, 0),
                "Fb0" => GenMode::new(Gen::FB, 0),
                t if t.contains(':') => t.parse()?,
                t => GenMode::new(Gen::from_token(t)?, -1),
            };
            g.validate(alg)?;
            Ok(g)
        })
        .collect()
}

/// `sum coef * word . target` with coefficients evaluated at `(lam, lam_bar)`.
pub fn apply_def(m: &VermaModule, def: named::Def, lam: i64, lam_bar: i64, target: &VVec) -> Result<VVec> {
    let mut r = VVec::new();
    for (coef, word) in def {
        let c = eval_coef(coef, lam, lam_bar)?;
        if c.is_zero() {
            continue;
        }
        let w = parse_word(m.alg, word)?;
        let t = m.act_word(&w, target)?;
        axpy(&mut r, &c, &t);
    }
    Ok(r)
}

pub fn vacuum() -> VVec {
    vvec_key(PBWKey::VACUUM)
}

/// A named vector of the module, in PBW normal form.
pub fn named_vector(m: &VermaModule, name: &str) -> Result<VVec> {
    let def = named::lookup(m.alg, name)
        .ok_or_else(|| ScfError::InvalidArgument(format!("no vector named {name} for {}", m.alg)))?;
    apply_def(m, def, m.lambda_int() as i64, m.lambda_bar_int() as i64, &vacuum())
}

/// `u_i^{lam_prime}` applied to `target` (for big N=4, `u_i^{lam', lam'}`).
pub fn apply_u(m: &VermaModule, i: usize, lam_prime: i64, target: &VVec) -> Result<VVec> {
    let prefix = named::u_prefix(m.alg).ok_or_else(|| ScfError::InvalidArgument(format!("no u_i for {}", m.alg)))?;
    let def = named::lookup(m.alg, &format!("{prefix}{i}"))
        .ok_or_else(|| ScfError::InvalidArgument(format!("u index {i} out of range for {}", m.alg)))?;
    apply_def(m, def, lam_prime, lam_prime, target)
}

/// The raising operators of g_0: `E_0`, and `Ebar_0` for big N=4.
pub fn raising(alg: AlgebraId) -> Vec<GenMode> {
    match alg {
        AlgebraId::N2 => vec![],
        AlgebraId::BigN4 => vec![GenMode::new(Gen::E, 0), GenMode::new(Gen::EB, 0)],
        _ => vec![GenMode::new(Gen::E, 0)],
    }
}

/// Every generator of degree 1/2 and 1.
pub fn positive_conditions(alg: AlgebraId) -> Vec<GenMode> {
    genmodes(alg, 1, 2)
}

/// The smaller sufficient sets: lowest sl2-weight generators of degree 1/2,
/// plus `F_1` for small N=4.
pub fn reduced_conditions(alg: AlgebraId) -> Vec<GenMode> {
    let g = |x: Gen, m2| GenMode::new(x, m2);
    match alg {
        AlgebraId::N3 => vec![g(Gen::SF, 1), g(Gen::Psi, 1)],
        AlgebraId::SmallN4 { beta } => {
            let low = if beta == 1 { Gen::Gmp } else { Gen::Gpm };
            vec![g(Gen::F, 2), g(low, 1), g(Gen::Gmm, 1)]
        }
        _ => positive_conditions(alg),
    }
}

/// Outcome of [`is_singular`].
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Singular,
    NotWeightVector,
    /// A generator with a nonzero image.
    Fails(GenMode, VVec),
}

impl Verdict {
    pub fn is_singular(&self) -> bool {
        matches!(self, Verdict::Singular)
    }
}

fn check_with(m: &VermaModule, v: &VVec, conds: &[GenMode]) -> Result<Verdict> {
    if v.is_empty() {
        return Err(ScfError::InvalidArgument("the zero vector".into()));
    }
    if m.weight_of(v).is_none() {
        return Ok(Verdict::NotWeightVector);
    }
    for &g in raising(m.alg).iter().chain(conds) {
        let r = m.act(g, v)?;
        if !r.is_empty() {
            return Ok(Verdict::Fails(g, r));
        }
    }
    Ok(Verdict::Singular)
}

/// Weight vector, E_0-invariant, killed by all of degree 1/2 and 1.
pub fn is_singular(m: &VermaModule, v: &VVec) -> Result<Verdict> {
    check_with(m, v, &positive_conditions(m.alg))
}

/// Same test with [`reduced_conditions`].
pub fn is_singular_reduced(m: &VermaModule, v: &VVec) -> Result<Verdict> {
    check_with(m, v, &reduced_conditions(m.alg))
}

/// Stacked matrix of `x . key` for `x` in `ops` and `key` in `cols`.
pub(crate) fn condition_matrix(m: &VermaModule, ops: &[GenMode], cols: &[PBWKey]) -> Result<Vec<Vec<Scalar>>> {
    let mut rows: std::collections::BTreeMap<(usize, PBWKey), Vec<Scalar>> = Default::default();
    for (j, k) in cols.iter().enumerate() {
        for (i, &x) in ops.iter().enumerate() {
            for (out, c) in m.act(x, &vvec_key(*k))? {
                rows.entry((i, out)).or_insert_with(|| vec![Scalar::zero(); cols.len()])[j] = c;
            }
        }
    }
    Ok(rows.into_values().collect())
}

pub(crate) fn from_coords(cols: &[PBWKey], x: &[Scalar]) -> VVec {
    cols.iter().zip(x).filter(|(_, c)| !c.is_zero()).map(|(k, c)| (*k, c.clone())).collect()
}

/// Kernel of `ops` on one weight space.
fn kernel_on(m: &VermaModule, ops: &[GenMode], w: (i32, i32, i32)) -> Result<Vec<VVec>> {
    let cols = m.weight_space(w);
    let a = condition_matrix(m, ops, &cols)?;
    Ok(nullspace(&a, cols.len()).iter().map(|x| from_coords(&cols, x)).collect())
}

/// Basis of the E_0 (and Ebar_0) invariants, level by level up to `level_cutoff2`.
pub fn e0_invariants(m: &VermaModule, level_cutoff2: i32) -> Result<Vec<(i32, Vec<VVec>)>> {
    let ops = raising(m.alg);
    let mut out = Vec::new();
    for l2 in 0..=level_cutoff2 {
        let mut basis = Vec::new();
        for w in m.weights_at_level(l2) {
            basis.extend(kernel_on(m, &ops, w)?);
        }
        out.push((l2, basis));
    }
    Ok(out)
}

/// Number of free C[d]-generators of the invariants, i.e. the sum over levels
/// of `dim inv_l - dim inv_{l-2}`.
pub fn e0_invariant_generators(m: &VermaModule, level_cutoff2: i32) -> Result<usize> {
    let inv = e0_invariants(m, level_cutoff2)?;
    let dims: Vec<usize> = inv.iter().map(|(_, b)| b.len()).collect();
    Ok((0..dims.len()).map(|l| dims[l] - if l >= 2 { dims[l - 2] } else { 0 }).sum())
}

/// Singular subspace at one weight.
#[derive(Clone, Debug, Serialize)]
pub struct SingularReport {
    pub level2: i32,
    /// Offsets of the H_0 (J_0) and Hbar_0 eigenvalues from the highest weight.
    pub weight: (i32, i32, i32),
    #[serde(skip)]
    pub basis: Vec<VVec>,
    /// Generators checked to annihilate every basis vector.
    pub certificate: Vec<GenMode>,
}

/// All proper singular vectors in weight spaces of level `<= 2*dpow_cutoff + 1`.
pub fn find_singular(m: &VermaModule, dpow_cutoff: u32) -> Result<Vec<SingularReport>> {
    find_with(m, dpow_cutoff, &positive_conditions(m.alg))
}

/// [`find_singular`] with [`reduced_conditions`] in place of the full set.
pub fn find_singular_reduced(m: &VermaModule, dpow_cutoff: u32) -> Result<Vec<SingularReport>> {
    find_with(m, dpow_cutoff, &reduced_conditions(m.alg))
}

fn find_with(m: &VermaModule, dpow_cutoff: u32, conds: &[GenMode]) -> Result<Vec<SingularReport>> {
    let mut ops = raising(m.alg);
    ops.extend(conds.iter().copied());
    let mut out = Vec::new();
    for l2 in 1..=(2 * dpow_cutoff as i32 + 1) {
        for w in m.weights_at_level(l2) {
            let basis = kernel_on(m, &ops, w)?;
            if !basis.is_empty() {
                out.push(SingularReport { level2: l2, weight: w, basis, certificate: ops.clone() });
            }
        }
    }
    Ok(out)
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[VVec], v: &VVec) -> bool {
    let mut e = crate::linalg::Echelon::new();
    for b in basis {
        e.insert(b);
    }
    e.contains(v)
}

/// Whether the spans of `a` and `b` coincide.
pub fn same_span(a: &[VVec], b: &[VVec]) -> bool {
    let dim = |s: &[VVec]| {
        let mut e = crate::linalg::Echelon::new();
        s.iter().filter(|v| e.insert(v)).count()
    };
    let both: Vec<VVec> = a.iter().chain(b).cloned().collect();
    let d = dim(&both);
    d == dim(a) && d == dim(b)
}

/// A linear combination of named vectors: `(coefficient, word, name)`.
pub type Combo<'a> = &'a [(&'a str, &'a str, &'a str)];

/// Evaluates a [`Combo`] at `(lam, lam_bar)`.
pub fn combo(m: &VermaModule, terms: Combo, lam: i64, lam_bar: i64) -> Result<VVec> {
    let mut r = VVec::new();
    for (coef, word, name) in terms {
        let c = eval_coef(coef, lam, lam_bar)?;
        if c.is_zero() {
            continue;
        }
        let t = m.act_word(&parse_word(m.alg, word)?, &named_vector(m, name)?)?;
        axpy(&mut r, &c, &t);
    }
    Ok(r)
}

/// Names of the named vectors that lie in the span of `basis`.
pub fn names_in(m: &VermaModule, basis: &[VVec]) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (name, _) in named::table(m.alg) {
        let v = named_vector(m, name)?;
        if !v.is_empty() && in_span(basis, &v) {
            out.push(name.to_string());
        }
    }
    Ok(out)
}

/// Symbolic `Delta`, the only symbol the modules take.
pub fn delta_sym() -> Scalar {
    Scalar::param(Param::Delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verma::{build_module, HighestWeight};

    fn n3(delta: Scalar, lam: i64) -> VermaModule {
        build_module(AlgebraId::N3, HighestWeight::new(delta, lam)).unwrap()
    }

    #[test]
    fn vanishing_cases() {
        let m = n3(Scalar::ratio(1, 3), 1);
        assert!(named_vector(&m, "a4").unwrap().is_empty());
        assert!(named_vector(&m, "a7").unwrap().is_empty());
        let m = n3(Scalar::ratio(1, 3), 0);
        for n in ["a3", "a4", "a6", "a7"] {
            assert!(named_vector(&m, n).unwrap().is_empty(), "{n}");
        }
        assert!(!named_vector(&m, "a8").unwrap().is_empty());
    }

    #[test]
    fn n3_a6_singular() {
        let m = n3(Scalar::ratio(-3, 4), 1);
        assert!(is_singular(&m, &named_vector(&m, "a6").unwrap()).unwrap().is_singular());
    }

    #[test]
    fn generic_n3_has_none() {
        let m = n3(Scalar::ratio(1, 3), 2);
        assert!(find_singular(&m, 3).unwrap().is_empty());
    }
}
