//! Submodules generated by singular vectors, their d-torsion closure, and the
//! C[d]-rank of the quotient.

use std::collections::VecDeque;

use serde::Serialize;

use crate::algebra::{genmodes, AlgebraId, Gen, GenMode};
use crate::error::{Result, ScfError};
use crate::exactfield::Scalar;
use crate::linalg::{nullspace, Echelon};
use crate::singular::{find_singular, names_in};
use crate::verma::{build_module, HighestWeight, PBWKey, VVec, VermaModule};

/// Default doubled-level cutoff; `SCF_CUTOFF2` overrides it.
pub const DEFAULT_CUTOFF2: i32 = 12;

pub fn cutoff_from_env() -> i32 {
    std::env::var("SCF_CUTOFF2").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_CUTOFF2)
}

/// Level-by-level bases of a subspace stable under the negative part and g_0.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    pub cutoff2: i32,
    pub levels: Vec<Echelon<PBWKey>>,
    pub seeds: Vec<VVec>,
}

impl GradedSubspace {
    pub fn dim(&self, l2: i32) -> usize {
        self.levels.get(l2 as usize).map_or(0, |e| e.dim())
    }

    pub fn contains(&self, v: &VVec) -> bool {
        split_levels(v).iter().all(|(l, c)| (*l as usize) < self.levels.len() && self.levels[*l as usize].contains(c))
    }
}

fn split_levels(v: &VVec) -> Vec<(i32, VVec)> {
    let mut out: std::collections::BTreeMap<i32, VVec> = Default::default();
    for (k, c) in v {
        out.entry(k.level2()).or_default().insert(*k, c.clone());
    }
    out.into_iter().collect()
}

/// The degree-0 operators used to close a seed set: `L_0`, the Cartan and
/// sl2 generators (both copies for big N=4).
pub fn degree_zero_ops(alg: AlgebraId) -> Vec<GenMode> {
    let gs: &[Gen] = match alg {
        AlgebraId::N2 => &[Gen::L, Gen::J],
        AlgebraId::BigN4 => &[Gen::L, Gen::H, Gen::E, Gen::F, Gen::HB, Gen::EB, Gen::FB],
        _ => &[Gen::L, Gen::H, Gen::E, Gen::F],
    };
    gs.iter().map(|&g| GenMode::new(g, 0)).collect()
}

fn negative_ops(m: &VermaModule) -> Vec<GenMode> {
    let mut v = vec![GenMode::DEL];
    v.extend(m.odd_gens().iter().copied());
    v
}

/// `U(g_-) U(g_{>=0}) seeds`, level by level up to `cutoff2`.
pub fn submodule_generated(m: &VermaModule, seeds: &[VVec], cutoff2: i32) -> Result<GradedSubspace> {
    let n = (cutoff2 + 1) as usize;
    let mut p: Vec<Echelon<PBWKey>> = vec![Echelon::new(); n];
    let mut ops = degree_zero_ops(m.alg);
    ops.extend(genmodes(m.alg, 1, 2));
    let mut queue = VecDeque::new();
    for s in seeds {
        for (l, c) in split_levels(s) {
            if l <= cutoff2 && p[l as usize].insert(&c) {
                queue.push_back((l, c));
            }
        }
    }
    while let Some((_, v)) = queue.pop_front() {
        for &x in &ops {
            for (l, c) in split_levels(&m.act(x, &v)?) {
                if l <= cutoff2 && p[l as usize].insert(&c) {
                    queue.push_back((l, c));
                }
            }
        }
    }
    let neg = negative_ops(m);
    let mut levels: Vec<Echelon<PBWKey>> = Vec::with_capacity(n);
    for l in 0..n {
        let mut e = p[l].clone();
        for &x in &neg {
            // d raises the doubled level by 2, an odd generator by 1
            let src = l as i32 - if x == GenMode::DEL { 2 } else { 1 };
            if src < 0 {
                continue;
            }
            let basis: Vec<VVec> = levels[src as usize].basis().cloned().collect();
            for b in basis {
                e.insert(&m.act(x, &b)?);
            }
        }
        levels.push(e);
    }
    Ok(GradedSubspace { cutoff2, levels, seeds: seeds.to_vec() })
}

/// Vectors `w` outside `n` with `d w` inside, at levels `<= cutoff2 - 2`.
pub fn torsion_vectors(n: &GradedSubspace) -> Vec<VVec> {
    let mut out = Vec::new();
    for l in 0..=(n.cutoff2 - 2) {
        let basis: Vec<VVec> = n.levels[(l + 2) as usize].basis().cloned().collect();
        if basis.is_empty() {
            continue;
        }
        // combinations of the basis with no dpow-0 component lie in d M_l
        let mut keys: Vec<PBWKey> =
            basis.iter().flat_map(|b| b.keys().filter(|k| k.dpow == 0).copied()).collect();
        keys.sort();
        keys.dedup();
        let rows: Vec<Vec<Scalar>> =
            keys.iter().map(|k| basis.iter().map(|b| b.get(k).cloned().unwrap_or_else(Scalar::zero)).collect()).collect();
        let mut found = n.levels[l as usize].clone();
        for x in nullspace(&rows, basis.len()) {
            let mut v = VVec::new();
            for (c, b) in x.iter().zip(&basis) {
                crate::linalg::axpy(&mut v, c, b);
            }
            let w: VVec = v.into_iter().map(|(k, c)| (PBWKey { dpow: k.dpow - 1, ..k }, c)).collect();
            if found.insert(&w) {
                out.push(w);
            }
        }
    }
    out
}

/// Adjoins d-torsion until none is left; returns the closed subspace and the
/// adjoined vectors.
pub fn torsion_closure(m: &VermaModule, n: &GradedSubspace) -> Result<(GradedSubspace, Vec<VVec>)> {
    let mut cur = n.clone();
    let mut added = Vec::new();
    loop {
        let t = torsion_vectors(&cur);
        if t.is_empty() {
            return Ok((cur, added));
        }
        added.extend(t.iter().cloned());
        let mut seeds = cur.seeds.clone();
        seeds.extend(t);
        cur = submodule_generated(m, &seeds, cur.cutoff2)?;
    }
}

/// `dim (M/N)_l` for `l = 0..=cutoff2`.
pub fn quotient_dims(m: &VermaModule, n: &GradedSubspace) -> Vec<usize> {
    (0..=n.cutoff2).map(|l| m.keys_at_level(l).len() - n.dim(l)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Rank {
    pub rank: usize,
    pub even: usize,
    pub odd: usize,
}

/// Rank from the stabilized window `q_l + q_{l+1}` over the last three windows.
pub fn rank_of(dims: &[usize]) -> Result<Rank> {
    let c = dims.len() as i32 - 1;
    let w = |l: i32| dims[l as usize] + dims[l as usize + 1];
    if c < 4 || w(c - 1) != w(c - 2) || w(c - 2) != w(c - 3) {
        return Err(ScfError::NotStabilized(c));
    }
    let (a, b) = (dims[(c - 1) as usize], dims[c as usize]);
    let (even, odd) = if (c - 1) % 2 == 0 { (a, b) } else { (b, a) };
    Ok(Rank { rank: a + b, even, odd })
}

/// Witness that a quotient generator reaches level 0.
#[derive(Clone, Debug, Serialize)]
pub struct Reach {
    pub level2: i32,
    pub chain: Vec<GenMode>,
    pub reached: bool,
}

/// Representatives of `M_l / (N_l + d M_{l-2})` for each level.
pub fn quotient_generators(m: &VermaModule, n: &GradedSubspace) -> Vec<(i32, VVec)> {
    let mut out = Vec::new();
    for l in 0..=n.cutoff2 {
        let mut e = n.levels[l as usize].clone();
        for k in m.keys_at_level(l).into_iter().filter(|k| k.dpow > 0) {
            e.insert(&crate::verma::vvec_key(k));
        }
        for k in m.keys_at_level(l) {
            let v = crate::verma::vvec_key(k);
            if e.insert(&v) {
                out.push((l, v));
            }
        }
    }
    out
}

/// Breadth-first search from each quotient generator through positive
/// generators of degree up to 2 and the degree-0 operators, modulo `n`.
pub fn reachability(m: &VermaModule, n: &GradedSubspace) -> Result<Vec<Reach>> {
    let mut ops = genmodes(m.alg, 1, 4);
    ops.extend(degree_zero_ops(m.alg).into_iter().filter(|g| matches!(g.gen, Gen::E | Gen::F | Gen::EB | Gen::FB)));
    let reduce = |v: &VVec| -> VVec {
        let mut r = VVec::new();
        for (l, c) in split_levels(v) {
            r.extend(n.levels[l as usize].reduce(&c));
        }
        r
    };
    let mut out = Vec::new();
    for (l, g) in quotient_generators(m, n) {
        let mut seen: Vec<Echelon<PBWKey>> = vec![Echelon::new(); (n.cutoff2 + 1) as usize];
        let mut queue = VecDeque::from([(reduce(&g), Vec::<GenMode>::new())]);
        let mut hit = None;
        'bfs: while let Some((v, chain)) = queue.pop_front() {
            if v.keys().any(|k| k.level2() == 0) {
                hit = Some(chain);
                break;
            }
            for &x in &ops {
                let r = reduce(&m.act(x, &v)?);
                if r.is_empty() {
                    continue;
                }
                let lv = r.keys().next().unwrap().level2();
                if seen[lv as usize].insert(&r) {
                    let mut c = chain.clone();
                    c.insert(0, x);
                    if lv == 0 {
                        hit = Some(c);
                        break 'bfs;
                    }
                    queue.push_back((r, c));
                }
            }
        }
        out.push(Reach { level2: l, reached: hit.is_some(), chain: hit.unwrap_or_default() });
    }
    Ok(out)
}

/// Dimensions of the singular vectors of `M/N` per weight space, levels `0..=max_l2`.
pub fn quotient_singular(m: &VermaModule, n: &GradedSubspace, max_l2: i32) -> Result<Vec<((i32, i32, i32), usize)>> {
    let mut ops = crate::singular::raising(m.alg);
    ops.extend(crate::singular::positive_conditions(m.alg));
    let mut out = Vec::new();
    for l in 0..=max_l2.min(n.cutoff2) {
        let nl = &n.levels[l as usize];
        let pivots: std::collections::BTreeSet<PBWKey> = nl.pivots().copied().collect();
        for w in m.weights_at_level(l) {
            let cols: Vec<PBWKey> = m.weight_space(w).into_iter().filter(|k| !pivots.contains(k)).collect();
            if cols.is_empty() {
                continue;
            }
            let mut rows: std::collections::BTreeMap<(usize, PBWKey), Vec<Scalar>> = Default::default();
            for (j, k) in cols.iter().enumerate() {
                for (i, &x) in ops.iter().enumerate() {
                    let img = m.act(x, &crate::verma::vvec_key(*k))?;
                    for (lo, c) in split_levels(&img) {
                        for (key, a) in n.levels[lo as usize].reduce(&c) {
                            rows.entry((i, key)).or_insert_with(|| vec![Scalar::zero(); cols.len()])[j] = a;
                        }
                    }
                }
            }
            let rows: Vec<Vec<Scalar>> = rows.into_values().collect();
            let dim = nullspace(&rows, cols.len()).len();
            if dim > 0 {
                out.push((w, dim));
            }
        }
    }
    Ok(out)
}

/// One row of a classification table.
#[derive(Clone, Debug, Serialize)]
pub struct ClassRow {
    pub algebra: String,
    pub delta: String,
    pub lambda: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_bar: Option<i64>,
    pub case: String,
    pub singular: Vec<String>,
    pub torsion: Vec<String>,
    pub rank: usize,
    pub rank_even: usize,
    pub rank_odd: usize,
    pub reachable: bool,
    /// The quotient has no singular vectors besides the image of the highest weight vector.
    pub quotient_clean: bool,
}

/// Case label of `(delta, lam, lam_bar)` from the reducibility conditions.
pub fn case_label(alg: AlgebraId, delta: &Scalar, lam: i64, lam_bar: Option<i64>) -> &'static str {
    let two_d = delta * &Scalar::from_int(2);
    let four_d = delta * &Scalar::from_int(4);
    let is = |s: Scalar| s.is_zero();
    let l = Scalar::from_int(lam);
    if delta.is_zero() && lam == 0 && lam_bar.unwrap_or(0) == 0 {
        return "trivial";
    }
    match alg {
        AlgebraId::N2 => {
            if is(&two_d - &l) {
                "2D-L=0"
            } else if is(&two_d + &l) {
                "2D+L=0"
            } else {
                "generic"
            }
        }
        AlgebraId::N3 => {
            if is(&four_d - &l) {
                "4D-L=0"
            } else if lam >= 1 && is(&(&four_d + &l) + &Scalar::from_int(2)) {
                "4D+L+2=0"
            } else {
                "generic"
            }
        }
        _ => {
            if alg == AlgebraId::BigN4 && lam_bar != Some(lam) {
                return "generic";
            }
            let min = if alg == AlgebraId::BigN4 { 1 } else { 0 };
            if is(&two_d - &l) {
                "2D-L=0"
            } else if lam >= min && is(&(&two_d + &l) + &Scalar::from_int(2)) {
                "2D+L+2=0"
            } else {
                "generic"
            }
        }
    }
}

fn describe(m: &VermaModule, vs: &[VVec], level: i32) -> Result<Vec<String>> {
    let names = names_in(m, vs)?;
    let mut out = names.clone();
    // anything not accounted for by named vectors is listed by level
    let mut e = Echelon::new();
    for n in &names {
        e.insert(&crate::singular::named_vector(m, n)?);
    }
    for v in vs {
        if e.insert(v) {
            out.push(format!("[level {}/2] {}", level, m.render(v)));
        }
    }
    Ok(out)
}

/// Names of the vectors adjoined in passing from `base` to `closed`; an
/// adjoined vector not accounted for by named ones is rendered as is.
fn describe_modulo(m: &VermaModule, added: &[VVec], base: &GradedSubspace, closed: &GradedSubspace) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut span = base.clone();
    for (name, _) in crate::singular::named::table(m.alg) {
        let v = crate::singular::named_vector(m, name)?;
        if !v.is_empty() && closed.contains(&v) && !base.contains(&v) {
            out.push(name.to_string());
            for (l, c) in split_levels(&v) {
                span.levels[l as usize].insert(&c);
            }
        }
    }
    for t in added {
        if !span.contains(t) {
            let l = t.keys().next().map_or(0, |k| k.level2());
            out.push(format!("[level {}/2] {}", l, m.render(t)));
        }
    }
    Ok(out)
}

/// The submodule generated by the singular vectors found up to `dpow <= 3`,
/// closed under d-torsion; the quotient by it is the irreducible module.
pub fn maximal_submodule(m: &VermaModule, cutoff2: i32) -> Result<GradedSubspace> {
    let seeds: Vec<VVec> = find_singular(m, 3)?.into_iter().flat_map(|r| r.basis).collect();
    let n = submodule_generated(m, &seeds, cutoff2)?;
    Ok(torsion_closure(m, &n)?.0)
}

/// Full pipeline for one parameter point.
pub fn classification_row(
    alg: AlgebraId,
    delta: Scalar,
    lam: i64,
    lam_bar: Option<i64>,
    cutoff2: i32,
) -> Result<ClassRow> {
    let hw = match (alg, lam_bar) {
        (AlgebraId::BigN4, Some(b)) => HighestWeight::big(delta.clone(), lam as u32, b as u32),
        (AlgebraId::BigN4, None) => return Err(ScfError::InvalidArgument("big N=4 needs Lambda_bar".into())),
        _ => HighestWeight::new(delta.clone(), lam),
    };
    let m = build_module(alg, hw)?;
    let reports = find_singular(&m, 3)?;
    let seeds: Vec<VVec> = reports.iter().flat_map(|r| r.basis.iter().cloned()).collect();
    let n = submodule_generated(&m, &seeds, cutoff2)?;
    let (closed, torsion) = torsion_closure(&m, &n)?;
    let torsion_names = describe_modulo(&m, &torsion, &n, &closed)?;
    let n = closed;
    let rank = rank_of(&quotient_dims(&m, &n))?;
    let reach = reachability(&m, &n)?;
    let qs = quotient_singular(&m, &n, cutoff2 - 2)?;
    let quotient_clean = if rank.rank == 0 {
        qs.is_empty()
    } else {
        qs.len() == 1 && qs[0].1 == 1 && qs[0].0 .0 == 0
    };
    let mut singular = Vec::new();
    for r in &reports {
        singular.extend(describe(&m, &r.basis, r.level2)?);
    }
    Ok(ClassRow {
        algebra: alg.token().to_string(),
        delta: delta.render(),
        lambda: lam,
        lambda_bar: lam_bar,
        case: if rank.rank == 0 { "trivial".into() } else { case_label(alg, &delta, lam, lam_bar).into() },
        singular,
        torsion: torsion_names,
        rank: rank.rank,
        rank_even: rank.even,
        rank_odd: rank.odd,
        reachable: reach.iter().all(|r| r.reached),
        quotient_clean,
    })
}

/// Markdown table of rows.
pub fn rows_markdown(rows: &[ClassRow]) -> String {
    let mut s = String::from("| algebra | Delta | Lambda | Lambda_bar | case | rank | even | odd | singular | torsion |\n");
    s.push_str("|---|---|---|---|---|---|---|---|---|---|\n");
    for r in rows {
        s.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
            r.algebra,
            r.delta,
            r.lambda,
            r.lambda_bar.map_or("-".into(), |b| b.to_string()),
            r.case,
            r.rank,
            r.rank_even,
            r.rank_odd,
            r.singular.join(", "),
            r.torsion.join(", ")
        ));
    }
    s
}
