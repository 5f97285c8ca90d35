//! Named groups of checks: bracket tables, Jacobi fuzzing, singular lists,
//! ranks, the identity catalog, lambda-bracket axioms and the representation
//! property. Each group returns a [`Check`] with its failures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{annihilation_genmodes, check_phi, check_tables, AlgebraId, GenMode, Report};
use crate::classify::{
    classification_row, quotient_dims, submodule_generated, ClassRow, DEFAULT_CUTOFF2,
};
use crate::error::Result;
use crate::exactfield::{Param, Scalar};
use crate::grassmann::{contact_bracket, BasisKind, GElement};
use crate::lambda_calc as lc;
use crate::linalg::axpy;
use crate::regression::{groups_matching, run_group, singular_list_matches};
use crate::singular::{delta_sym, find_singular, parse_word, vacuum};
use crate::verma::{build_module, check_representation, vvec_key, HighestWeight, VVec, VermaModule};

/// Outcome of one named group.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check { name: name.into(), checked: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }

    pub fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }

    fn absorb(&mut self, label: &str, r: &Report) {
        self.checked += r.checked;
        for m in r.mismatches.iter().take(5) {
            self.failures.push(format!("{label}: {m}"));
        }
    }

    fn result<T>(&mut self, what: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(x) => Some(x),
            Err(e) => {
                self.expect(false, || format!("{what}: {e}"));
                None
            }
        }
    }
}

fn frac(p: i64, q: i64) -> Scalar {
    Scalar::ratio(p, q)
}

fn random_rationals(rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| frac(rng.gen_range(-40..=40), rng.gen_range(1..=13))).collect()
}

/// Table brackets against realized contact brackets, `|mode2| <= 6`, and the
/// small-to-big N=4 map.
pub fn bracket_tables() -> Check {
    let mut c = Check::new("bracket tables");
    for alg in [AlgebraId::N2, AlgebraId::N3, AlgebraId::small(1), AlgebraId::small(-1)] {
        c.absorb(alg.token(), &check_tables(alg, 3));
    }
    c
}

/// The phi embedding of the small N=4 brackets into the barred copy.
pub fn phi_embedding() -> Check {
    let mut c = Check::new("phi embedding");
    c.absorb("phi", &check_phi(4));
    c
}

fn random_monomial(rng: &mut ChaCha8Rng, n: u8, kind: BasisKind) -> GElement {
    let tpow = rng.gen_range(-3..=3);
    let mask: u8 = rng.gen_range(0..(1u16 << n)) as u8;
    let idx: Vec<u8> = (0..n).filter(|k| mask & (1 << k) != 0).collect();
    let mut coef = rng.gen_range(-5..=5);
    if coef == 0 {
        coef = 1;
    }
    GElement::term(n, kind, Scalar::from_int(coef), tpow, &idx)
}

/// Super-Jacobi for the contact bracket on random monomial triples.
pub fn jacobi_fuzz(triples: usize, seed: u64) -> Check {
    let mut c = Check::new("Jacobi fuzz");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 2..=4u8 {
        for kind in [BasisKind::Standard, BasisKind::Split] {
            let mut nontrivial = 0;
            for _ in 0..triples {
                let (f, g, h) =
                    (random_monomial(&mut rng, n, kind), random_monomial(&mut rng, n, kind), random_monomial(&mut rng, n, kind));
                let mut run = || -> Result<GElement> {
                    let lhs = contact_bracket(&f, &contact_bracket(&g, &h)?)?;
                    nontrivial += usize::from(!lhs.is_zero());
                    let a = contact_bracket(&contact_bracket(&f, &g)?, &h)?;
                    let b = contact_bracket(&g, &contact_bracket(&f, &h)?)?;
                    let s = if f.parity() == Some(1) && g.parity() == Some(1) { -1 } else { 1 };
                    lhs.sub(&a)?.sub(&b.scale(&Scalar::from_int(s)))
                };
                match run() {
                    Ok(d) => c.expect(d.is_zero(), || format!("N={n} {kind:?}: ({f}, {g}, {h}) leaves {d}")),
                    Err(e) => c.expect(false, || format!("N={n} {kind:?}: {e}")),
                }
            }
            // guards against a generator that only produces commuting triples
            c.expect(4 * nontrivial >= triples, || format!("N={n} {kind:?}: only {nontrivial} nonzero double brackets"));
        }
    }
    c
}

fn module(alg: AlgebraId, delta: &Scalar, lam: i64, lam_bar: Option<i64>) -> Result<VermaModule> {
    match lam_bar {
        Some(b) => build_module(alg, HighestWeight::big(delta.clone(), lam as u32, b as u32)),
        None => build_module(alg, HighestWeight::new(delta.clone(), lam)),
    }
}

fn list_check(c: &mut Check, alg: AlgebraId, delta: &Scalar, lam: i64, lam_bar: Option<i64>) {
    let what = format!("{alg} ({delta}, {lam}{})", lam_bar.map_or(String::new(), |b| format!(", {b}")));
    let r = module(alg, delta, lam, lam_bar).and_then(|m| singular_list_matches(&m, 3));
    if let Some((ok, found, want)) = c.result(&what, r) {
        c.expect(ok, || format!("{what}: found {found} singular vectors, expected {want}"));
    }
}

fn n2_grid(randoms: usize, seed: u64) -> Vec<(Scalar, i64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = vec![(frac(-1, 2), -1)];
    for l in 0..=3 {
        let mut ds = vec![frac(l, 2), frac(-l, 2), frac(-1, 2)];
        ds.extend(random_rationals(&mut rng, randoms));
        ds.dedup();
        pts.extend(ds.into_iter().map(|d| (d, l)));
    }
    pts
}

/// N=2 singular lists at `dpow <= 3` on the case lines and random Delta.
pub fn n2_singular(randoms: usize, seed: u64) -> Check {
    let mut c = Check::new("N=2 singular lists");
    for (d, l) in n2_grid(randoms, seed) {
        list_check(&mut c, AlgebraId::N2, &d, l, None);
    }
    c
}

fn row_check(c: &mut Check, alg: AlgebraId, delta: &Scalar, lam: i64, lam_bar: Option<i64>, want: usize) -> Option<ClassRow> {
    let what = format!("{alg} ({delta}, {lam}{})", lam_bar.map_or(String::new(), |b| format!(", {b}")));
    let row = c.result(&what, classification_row(alg, delta.clone(), lam, lam_bar, DEFAULT_CUTOFF2))?;
    c.expect(row.rank == want, || format!("{what}: rank {}, expected {want}", row.rank));
    if alg != AlgebraId::N2 {
        c.expect(row.rank_even == row.rank_odd, || format!("{what}: even {} odd {}", row.rank_even, row.rank_odd));
    }
    c.expect(row.reachable && row.quotient_clean, || format!("{what}: quotient not irreducible: {row:?}"));
    Some(row)
}

fn is(d: &Scalar, p: i64, q: i64) -> bool {
    *d == frac(p, q)
}

/// N=2 ranks 4 / 2 / 0 and the one-dimensional trivial quotient.
pub fn n2_ranks(randoms: usize, seed: u64) -> Check {
    let mut c = Check::new("N=2 ranks");
    for (d, l) in n2_grid(randoms, seed) {
        let want = if l == 0 && d.is_zero() {
            0
        } else if is(&d, l, 2) || is(&d, -l, 2) {
            2
        } else {
            4
        };
        row_check(&mut c, AlgebraId::N2, &d, l, None, want);
    }
    let r = (|| -> Result<Vec<usize>> {
        let m = build_module(AlgebraId::N2, HighestWeight::new(Scalar::zero(), 0))?;
        let seeds: Vec<VVec> = find_singular(&m, 3)?.into_iter().flat_map(|r| r.basis).collect();
        Ok(quotient_dims(&m, &submodule_generated(&m, &seeds, 10)?))
    })();
    if let Some(dims) = c.result("N=2 (0, 0) quotient", r) {
        c.expect(dims.iter().sum::<usize>() == 1 && dims[0] == 1, || format!("(0, 0) quotient dims {dims:?}"));
    }
    c
}

/// The odd lowering identities for N=2 with symbolic Delta and Lambda. The
/// `G-_{1/2} d^k G+ v` identity holds with `-k` in front of
/// `d^{k-1} G+ G- v`; the `+k` form is checked to fail.
pub fn n2_identities() -> Check {
    let mut c = Check::new("N=2 lowering identities");
    let hw = HighestWeight { delta: delta_sym(), lambda: Scalar::param(Param::LambdaSym), lambda_bar: None };
    let Some(m) = c.result("symbolic module", build_module(AlgebraId::N2, hw)) else { return c };
    let word = |w: &str| -> Result<VVec> { m.act_word(&parse_word(m.alg, w)?, &vacuum()) };
    let (d, l, two) = (delta_sym(), Scalar::param(Param::LambdaSym), Scalar::from_int(2));
    for k in 0..4i64 {
        let dk = "d ".repeat(k as usize);
        let kk = Scalar::from_int(k);
        let r = (|| -> Result<Vec<(bool, String)>> {
            let mut out = Vec::new();
            let below = if k > 0 { word(&format!("{}Gp Gm", "d ".repeat(k as usize - 1)))? } else { VVec::new() };
            let base = word(&dk)?;
            let lin = |c1: &Scalar, c2: &Scalar| {
                let mut v = VVec::new();
                axpy(&mut v, c1, &base);
                axpy(&mut v, c2, &below);
                v
            };
            let lhs = word(&format!("Gm:1/2 {dk}Gp"))?;
            let head = &(&(&two * &d) - &l) + &(&two * &kk);
            out.push((lhs == lin(&head, &-&kk), format!("Gm:1/2 d^{k} Gp v (-k form)")));
            if k > 0 {
                out.push((lhs != lin(&head, &kk), format!("Gm:1/2 d^{k} Gp v (+k form must fail)")));
            }
            let lhs = word(&format!("Gp:1/2 {dk}Gm"))?;
            out.push((lhs == lin(&(&(&two * &d) + &l), &kk), format!("Gp:1/2 d^{k} Gm v")));
            Ok(out)
        })();
        if let Some(rs) = c.result(&format!("k={k}"), r) {
            for (ok, what) in rs {
                c.expect(ok, || what);
            }
        }
    }
    c
}

/// Every line of the identity catalog whose group name starts with `prefix`.
pub fn catalog(prefix: &str) -> Check {
    let mut c = Check::new(format!("identity catalog {prefix}"));
    for g in groups_matching(prefix) {
        if let Some(outs) = c.result(g.name, run_group(g)) {
            for o in outs {
                c.expect(o.ok(), || {
                    format!("{} L={} {} (holds={}, expected={}) {:?}", o.group, o.lambda, o.line, o.holds, o.expected, o.residual)
                });
            }
        }
    }
    c
}

/// N=3 singular lists and ranks 4L / 4L+8 / 8L+8 for `L <= lam_max`, with
/// the torsion vector a7 at `(-1, 2)`.
pub fn n3_ranks(lam_max: i64) -> Check {
    let mut c = Check::new("N=3 ranks");
    for l in 0..=lam_max {
        for (d, want) in [
            (frac(l, 4), if l == 0 { 0 } else { 4 * l }),
            (frac(-(l + 2), 4), if l == 0 { 8 } else { 4 * l + 8 }),
            (frac(1, 3), 8 * l + 8),
        ] {
            list_check(&mut c, AlgebraId::N3, &d, l, None);
            row_check(&mut c, AlgebraId::N3, &d, l, None, want as usize);
        }
    }
    if let Some(row) = row_check(&mut c, AlgebraId::N3, &frac(-1, 1), 2, None, 16) {
        c.expect(row.torsion == ["a7"], || format!("N=3 (-1, 2) torsion {:?}", row.torsion));
    }
    c
}

/// Small N=4 singular lists (all four cases) and ranks 4L / 4L+8 / 16L+16.
pub fn small_n4_ranks(lam_max: i64) -> Check {
    let mut c = Check::new("small N=4 ranks");
    let alg = AlgebraId::small(1);
    for l in 0..=lam_max {
        for (d, want) in [
            (frac(l, 2), if l == 0 { 0 } else { 4 * l }),
            (frac(-(l + 2), 2), 4 * l + 8),
            (frac(1, 3), 16 * l + 16),
        ] {
            list_check(&mut c, alg, &d, l, None);
            row_check(&mut c, alg, &d, l, None, want as usize);
        }
    }
    c
}

/// Big N=4: irreducibility for Lambda != Lambda bar, singular lists, ranks
/// 8L(L+1) / 8(L+1)(L+2) / 16(L+1)(Lb+1), and the torsion vector b15.
pub fn big_n4_ranks(lam_max: i64) -> Check {
    let mut c = Check::new("big N=4 ranks");
    let alg = AlgebraId::BigN4;
    for (l, lb) in [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)] {
        for d in [frac(l, 2), frac(-(l + 2), 2)] {
            list_check(&mut c, alg, &d, l, Some(lb));
            let r = module(alg, &d, l, Some(lb)).and_then(|m| find_singular(&m, 3));
            if let Some(reps) = c.result("mixed point", r) {
                c.expect(reps.is_empty(), || format!("big N=4 ({d}, {l}, {lb}) has singular vectors"));
            }
        }
    }
    for l in 0..=lam_max {
        for lb in 0..=lam_max {
            let generic = (16 * (l + 1) * (lb + 1)) as usize;
            let pts = if l == lb {
                vec![
                    (frac(l, 2), if l == 0 { 0 } else { (8 * l * (l + 1)) as usize }),
                    (frac(-(l + 2), 2), if l == 0 { generic } else { (8 * (l + 1) * (l + 2)) as usize }),
                    (frac(1, 3), generic),
                ]
            } else {
                vec![(frac(l, 2), generic), (frac(1, 3), generic)]
            };
            for (d, want) in pts {
                if l == lb {
                    list_check(&mut c, alg, &d, l, Some(lb));
                }
                row_check(&mut c, alg, &d, l, Some(lb), want);
            }
        }
    }
    if let Some(row) = row_check(&mut c, alg, &frac(-3, 2), 1, Some(1), 48) {
        c.expect(row.torsion == ["b15"], || format!("big N=4 (-3/2, 1, 1) torsion {:?}", row.torsion));
    }
    c
}

/// Conformal axioms, module axioms with symbolic parameters, the generated
/// tables, and the three adjoint identifications.
pub fn lambda_axioms() -> Check {
    let mut c = Check::new("lambda axioms");
    for r in [lc::virasoro(), lc::current_sl2(), lc::semidirect(&lc::current_sl2()), lc::n2()] {
        if let Some(rep) = c.result(&r.name, lc::check_conformal_axioms(&r)) {
            c.absorb(&r.name, &rep);
        }
    }
    let vir = lc::virasoro();
    if let Some(rep) = c.result("F(alpha,Delta)", lc::check_module_axioms(&vir, &lc::virasoro_module())) {
        c.absorb("F(alpha,Delta)", &rep);
    }
    let n2 = lc::n2();
    for m in [lc::n2_module_rank4(), lc::n2_module_2d_plus_l(), lc::n2_module_2d_minus_l()] {
        if let Some(rep) = c.result(&m.name, lc::check_module_axioms(&n2, &m)) {
            c.absorb(&m.name, &rep);
        }
    }
    if let Some(g) = c.result("N=2 from modes", lc::conformal_algebra_from_modes(AlgebraId::N2)) {
        let same = g.completed().map(|g| g.table) == n2.completed().map(|p| p.table);
        c.expect(same, || "N=2 products from modes differ from the printed products".into());
    }
    for (alg, d, l, h) in [
        (AlgebraId::N2, Scalar::one(), 0, "J:-1"),
        (AlgebraId::N3, frac(1, 2), 0, "Psi:-1/2"),
        (AlgebraId::small(1), Scalar::one(), 2, "E:-1"),
    ] {
        let h: GenMode = h.parse().expect("valid mode");
        if let Some(rep) = c.result(&format!("adjoint {alg}"), lc::adjoint_identification(alg, d, l, h, DEFAULT_CUTOFF2)) {
            c.expect(rep.ok(), || format!("adjoint {alg}: {rep:?}"));
        }
    }
    c
}

/// The generated N=3 and small N=4 tables: conformal axioms for the algebra
/// and module axioms for quotients at several parameter points.
pub fn generated_tables() -> Check {
    let mut c = Check::new("generated lambda tables");
    for alg in [AlgebraId::N3, AlgebraId::small(1)] {
        let Some(r) = c.result(alg.token(), lc::conformal_algebra_from_modes(alg)) else { continue };
        if let Some(rep) = c.result(alg.token(), lc::check_conformal_axioms(&r)) {
            c.absorb(alg.token(), &rep);
        }
        for (d, l) in [(frac(-3, 4), 1), (frac(1, 2), 2), (frac(1, 3), 1), (frac(-3, 2), 1), (Scalar::one(), 2)] {
            let what = format!("{alg} ({d}, {l})");
            let m = lc::generated_module(alg, HighestWeight::new(d, l), 10);
            if let Some(rep) = c.result(&what, m.and_then(|m| lc::check_module_axioms(&r, &m))) {
                c.absorb(&what, &rep);
            }
        }
    }
    c
}

fn random_vector(rng: &mut ChaCha8Rng, m: &VermaModule, max_l2: i32) -> VVec {
    let mut v = VVec::new();
    for _ in 0..3 {
        let l = rng.gen_range(0..=max_l2);
        let keys = m.keys_at_level(l);
        if keys.is_empty() {
            continue;
        }
        let k = keys[rng.gen_range(0..keys.len())];
        axpy(&mut v, &Scalar::from_int(rng.gen_range(1..=7)), &vvec_key(k));
    }
    v
}

/// `x(yv) - (-1)^{p(x)p(y)} y(xv) = [x, y] v` for annihilation generators of
/// `mode2` in `[-2, 4]` on random vectors, every algebra, `Lambda <= 2`.
pub fn representation(seed: u64) -> Check {
    let mut c = Check::new("representation property");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let algs = [AlgebraId::N2, AlgebraId::N3, AlgebraId::small(1), AlgebraId::small(-1), AlgebraId::BigN4];
    for alg in algs {
        let gens = annihilation_genmodes(alg, 4);
        for l in 0..=2 {
            let lbs: Vec<Option<i64>> = if alg == AlgebraId::BigN4 { vec![Some(l), Some((l + 1) % 3)] } else { vec![None] };
            for lb in lbs {
                let d = frac(rng.gen_range(-9..=9), rng.gen_range(1..=5));
                let what = format!("{alg} ({d}, {l}{})", lb.map_or(String::new(), |b| format!(", {b}")));
                let Some(m) = c.result(&what, module(alg, &d, l, lb)) else { continue };
                let vs: Vec<VVec> = (0..2).map(|_| random_vector(&mut rng, &m, 4)).collect();
                if let Some(bad) = c.result(&what, check_representation(&m, &gens, &vs)) {
                    c.checked += gens.len() * gens.len() * vs.len();
                    for b in bad.into_iter().take(5) {
                        c.failures.push(format!("{what}: {b}"));
                    }
                }
            }
        }
    }
    c
}

/// Suite names accepted by [`suite`].
pub const SUITES: &[&str] = &["algebra", "n2", "n3", "sn4", "bn4", "lambda", "all"];

/// Runs a named suite; `all` runs every group.
pub fn suite(name: &str) -> Option<Vec<Check>> {
    let parts: Vec<&str> = if name == "all" { SUITES[..SUITES.len() - 1].to_vec() } else { vec![name] };
    let mut out = Vec::new();
    for p in parts {
        match p {
            "algebra" => out.extend([bracket_tables(), phi_embedding(), jacobi_fuzz(500, 1), representation(3)]),
            "n2" => out.extend([n2_identities(), n2_singular(20, 2), n2_ranks(20, 2)]),
            "n3" => out.extend([catalog("n3"), n3_ranks(4)]),
            "sn4" => out.extend([catalog("sn4"), small_n4_ranks(3)]),
            "bn4" => out.extend([catalog("bn4"), big_n4_ranks(2)]),
            "lambda" => out.extend([lambda_axioms(), generated_tables()]),
            _ => return None,
        }
    }
    Some(out)
}
