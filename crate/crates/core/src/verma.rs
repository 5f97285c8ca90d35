//! Induced (Verma-type) modules over the annihilation subalgebra and the
//! normal-ordering action on their PBW basis.
//!
//! A basis vector is `d^k theta_S F_0^j (Fbar_0^l) v`, with `theta_S` an
//! increasing product of the negative odd generators.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::algebra::{bracket, AlgElement, AlgebraId, Gen, GenMode};
use crate::error::{Result, ScfError};
use crate::exactfield::Scalar;
use crate::linalg::{axpy, scale_vec, SparseVec};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct PBWKey {
    pub dpow: u32,
    /// Bit `k` set when the `k`-th negative odd generator (PBW order) is present.
    pub odd: u8,
    /// `F_0` power and, for big N=4, `Fbar_0` power.
    pub wt: (u16, u16),
}

impl PBWKey {
    pub const VACUUM: PBWKey = PBWKey { dpow: 0, odd: 0, wt: (0, 0) };

    pub fn new(dpow: u32, odd: u8, wt: (u16, u16)) -> Self {
        PBWKey { dpow, odd, wt }
    }

    /// Twice the level, i.e. the L_0-eigenvalue minus Delta, doubled.
    pub fn level2(&self) -> i32 {
        2 * self.dpow as i32 + self.odd.count_ones() as i32
    }

    pub fn parity(&self) -> u8 {
        (self.odd.count_ones() % 2) as u8
    }
}

/// A module element: PBW key to coefficient.
pub type VVec = SparseVec<PBWKey>;

pub fn vvec_key(k: PBWKey) -> VVec {
    let mut v = VVec::new();
    v.insert(k, Scalar::one());
    v
}

#[derive(Clone, Debug)]
pub struct HighestWeight {
    pub delta: Scalar,
    /// Integer for the algebras with an sl2 in degree 0; any scalar for N2.
    pub lambda: Scalar,
    pub lambda_bar: Option<u32>,
}

impl HighestWeight {
    pub fn new(delta: Scalar, lambda: i64) -> Self {
        HighestWeight { delta, lambda: Scalar::from_int(lambda), lambda_bar: None }
    }

    pub fn big(delta: Scalar, lambda: u32, lambda_bar: u32) -> Self {
        HighestWeight { delta, lambda: Scalar::from_int(lambda as i64), lambda_bar: Some(lambda_bar) }
    }
}

type Memo = RwLock<HashMap<(GenMode, PBWKey), Arc<VVec>>>;

pub struct VermaModule {
    pub alg: AlgebraId,
    pub hw: HighestWeight,
    lam: u16,
    lam_bar: u16,
    odd: Vec<GenMode>,
    /// `[H_0, theta_k]` (or `[J_0, theta_k]`) and `[Hbar_0, theta_k]` eigenvalues.
    odd_weights: Vec<(i32, i32)>,
    /// `[theta_a, theta_b] = c_ab d`.
    odd_pairing: Vec<Vec<Scalar>>,
    memo: Memo,
}

impl fmt::Debug for VermaModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VermaModule({}, Delta={}, Lambda={}", self.alg, self.hw.delta, self.hw.lambda)?;
        if let Some(b) = self.hw.lambda_bar {
            write!(f, ", Lambda_bar={b}")?;
        }
        write!(f, ")")
    }
}

fn sl2_weight(alg: AlgebraId, x: GenMode, h: Gen) -> Result<i32> {
    let b = bracket(alg, GenMode::new(h, 0), x)?;
    if b.is_zero() {
        return Ok(0);
    }
    let c = b.terms.get(&x).ok_or_else(|| ScfError::InvalidArgument(format!("{x} is not a weight vector")))?;
    c.to_i64().map(|v| v as i32).ok_or_else(|| ScfError::InvalidArgument(format!("weight of {x}")))
}

pub fn build_module(alg: AlgebraId, hw: HighestWeight) -> Result<VermaModule> {
    if hw.lambda_bar.is_some() != (alg == AlgebraId::BigN4) {
        return Err(ScfError::InvalidArgument("Lambda_bar is required for big N=4 and only there".into()));
    }
    let lam = if alg.has_sl2() {
        match hw.lambda.to_i64() {
            Some(l) if (0..=u16::MAX as i64).contains(&l) => l as u16,
            _ => return Err(ScfError::InvalidArgument("Lambda must be a nonnegative integer".into())),
        }
    } else {
        0
    };
    let odd = alg.negative_odd();
    let h = if alg.has_sl2() { Gen::H } else { Gen::J };
    let mut odd_weights = Vec::new();
    for &t in &odd {
        let hb = if alg == AlgebraId::BigN4 { sl2_weight(alg, t, Gen::HB)? } else { 0 };
        odd_weights.push((sl2_weight(alg, t, h)?, hb));
    }
    let mut odd_pairing = Vec::new();
    for &a in &odd {
        let mut row = Vec::new();
        for &b in &odd {
            let br = bracket(alg, a, b)?;
            let c = br.terms.get(&GenMode::DEL).cloned().unwrap_or_default();
            if br.terms.len() > usize::from(!c.is_zero()) {
                return Err(ScfError::InvalidArgument(format!("[{a}, {b}] is not a multiple of d")));
            }
            row.push(c);
        }
        odd_pairing.push(row);
    }
    Ok(VermaModule {
        alg,
        lam,
        lam_bar: hw.lambda_bar.unwrap_or(0) as u16,
        hw,
        odd,
        odd_weights,
        odd_pairing,
        memo: RwLock::new(HashMap::new()),
    })
}

fn shift_d(v: &VVec, by: u32) -> VVec {
    v.iter()
        .map(|(k, c)| (PBWKey { dpow: k.dpow + by, ..*k }, c.clone()))
        .collect()
}

impl VermaModule {
    pub fn odd_gens(&self) -> &[GenMode] {
        &self.odd
    }

    pub fn lambda_int(&self) -> u16 {
        self.lam
    }

    pub fn lambda_bar_int(&self) -> u16 {
        self.lam_bar
    }

    /// Dimension of the degree-0 module U.
    pub fn dim_u(&self) -> usize {
        match self.alg {
            AlgebraId::N2 => 1,
            AlgebraId::BigN4 => (self.lam as usize + 1) * (self.lam_bar as usize + 1),
            _ => self.lam as usize + 1,
        }
    }

    /// Weight indices of U.
    pub fn wts(&self) -> Vec<(u16, u16)> {
        match self.alg {
            AlgebraId::N2 => vec![(0, 0)],
            AlgebraId::BigN4 => (0..=self.lam).flat_map(|j| (0..=self.lam_bar).map(move |k| (j, k))).collect(),
            _ => (0..=self.lam).map(|j| (j, 0)).collect(),
        }
    }

    /// Keys with a given `dpow`.
    pub fn keys_with_dpow(&self, d: u32) -> Vec<PBWKey> {
        let mut out = Vec::new();
        for m in 0..(1u8 << self.odd.len()) {
            for w in self.wts() {
                out.push(PBWKey::new(d, m, w));
            }
        }
        out.sort();
        out
    }

    /// Keys at doubled level `l2`.
    pub fn keys_at_level(&self, l2: i32) -> Vec<PBWKey> {
        let mut out = Vec::new();
        if l2 < 0 {
            return out;
        }
        for m in 0..(1u8 << self.odd.len()) {
            let k = l2 - m.count_ones() as i32;
            if k < 0 || k % 2 != 0 {
                continue;
            }
            for w in self.wts() {
                out.push(PBWKey::new((k / 2) as u32, m, w));
            }
        }
        out.sort();
        out
    }

    /// `(level2, H offset, Hbar offset)`; the H_0 (J_0) eigenvalue is `Lambda + offset`.
    pub fn key_weight(&self, k: &PBWKey) -> (i32, i32, i32) {
        let (mut h, mut hb) = (-2 * k.wt.0 as i32, -2 * k.wt.1 as i32);
        for (i, w) in self.odd_weights.iter().enumerate() {
            if k.odd & (1 << i) != 0 {
                h += w.0;
                hb += w.1;
            }
        }
        (k.level2(), h, hb)
    }

    pub fn odd_weight(&self, i: usize) -> (i32, i32) {
        self.odd_weights[i]
    }

    /// Keys of a weight space.
    pub fn weight_space(&self, w: (i32, i32, i32)) -> Vec<PBWKey> {
        self.keys_at_level(w.0).into_iter().filter(|k| self.key_weight(k) == w).collect()
    }

    /// Distinct weights at a level, sorted.
    pub fn weights_at_level(&self, l2: i32) -> Vec<(i32, i32, i32)> {
        let mut w: Vec<_> = self.keys_at_level(l2).iter().map(|k| self.key_weight(k)).collect();
        w.sort();
        w.dedup();
        w
    }

    fn odd_index(&self, g: GenMode) -> Option<usize> {
        self.odd.iter().position(|&o| o == g)
    }

    /// `x . v`.
    pub fn act(&self, x: GenMode, v: &VVec) -> Result<VVec> {
        x.validate(self.alg)?;
        let x = x.canonical();
        if !x.in_annihilation() {
            return Err(ScfError::InvalidGenerator(format!("{x} is not in the annihilation subalgebra")));
        }
        let mut r = VVec::new();
        for (k, c) in v {
            let t = self.act_key(x, *k)?;
            axpy(&mut r, c, &t);
        }
        Ok(r)
    }

    pub fn act_element(&self, a: &AlgElement, v: &VVec) -> Result<VVec> {
        let mut r = VVec::new();
        for (g, c) in a.iter() {
            let t = self.act(*g, v)?;
            axpy(&mut r, c, &t);
        }
        Ok(r)
    }

    /// Applies a word of generators right to left: `word[0]` acts last.
    pub fn act_word(&self, word: &[GenMode], v: &VVec) -> Result<VVec> {
        let mut r = v.clone();
        for g in word.iter().rev() {
            r = self.act(*g, &r)?;
        }
        Ok(r)
    }

    fn act_key(&self, x: GenMode, k: PBWKey) -> Result<Arc<VVec>> {
        if let Some(r) = self.memo.read().unwrap().get(&(x, k)) {
            return Ok(r.clone());
        }
        let r = Arc::new(self.compute(x, k)?);
        self.memo.write().unwrap().insert((x, k), r.clone());
        Ok(r)
    }

    fn compute(&self, x: GenMode, k: PBWKey) -> Result<VVec> {
        if x == GenMode::DEL {
            return Ok(vvec_key(PBWKey { dpow: k.dpow + 1, ..k }));
        }
        if let Some(b) = self.odd_index(x) {
            return self.left_mul_odd(b, k);
        }
        if k.dpow > 0 {
            // x d w = [x, d] w + d (x w)
            let rest = vvec_key(PBWKey { dpow: k.dpow - 1, ..k });
            let mut r = self.act_element(&bracket(self.alg, x, GenMode::DEL)?, &rest)?;
            let t = self.act(x, &rest)?;
            axpy(&mut r, &Scalar::one(), &shift_d(&t, 1));
            return Ok(r);
        }
        if k.odd != 0 {
            // x theta_a w = [x, theta_a] w + (-1)^{p(x)} theta_a (x w)
            let a = k.odd.trailing_zeros() as usize;
            let rest = vvec_key(PBWKey { odd: k.odd & !(1 << a), ..k });
            let mut r = self.act_element(&bracket(self.alg, x, self.odd[a])?, &rest)?;
            let t = self.act(x, &rest)?;
            let s = if x.parity() == 1 { Scalar::from_int(-1) } else { Scalar::one() };
            axpy(&mut r, &s, &self.act(self.odd[a], &t)?);
            return Ok(r);
        }
        Ok(self.act_vacuum(x, k.wt))
    }

    /// `theta_b . key`, using that `theta`s commute with `d` and
    /// `theta_b theta_a = -theta_a theta_b + c_ba d`.
    fn left_mul_odd(&self, b: usize, k: PBWKey) -> Result<VVec> {
        if k.odd == 0 || b < k.odd.trailing_zeros() as usize {
            return Ok(vvec_key(PBWKey { odd: k.odd | (1 << b), ..k }));
        }
        let a = k.odd.trailing_zeros() as usize;
        let rest = PBWKey { odd: k.odd & !(1 << a), ..k };
        if a == b {
            let c = &self.odd_pairing[a][a] * &Scalar::ratio(1, 2);
            return Ok(scale_vec(&vvec_key(PBWKey { dpow: rest.dpow + 1, ..rest }), &c));
        }
        let inner = self.left_mul_odd(b, rest)?;
        let mut r = VVec::new();
        for (key, c) in &inner {
            // every key of `inner` has bits above `a` only
            r.insert(PBWKey { odd: key.odd | (1 << a), ..*key }, -c);
        }
        let c = &self.odd_pairing[b][a];
        axpy(&mut r, c, &vvec_key(PBWKey { dpow: rest.dpow + 1, ..rest }));
        Ok(r)
    }

    fn act_vacuum(&self, x: GenMode, (j, l): (u16, u16)) -> VVec {
        if x.mode2 != 0 {
            return VVec::new();
        }
        let key = |j: u16, l: u16| PBWKey::new(0, 0, (j, l));
        let one = |s: Scalar, k: PBWKey| if s.is_zero() { VVec::new() } else { scale_vec(&vvec_key(k), &s) };
        let int = |v: i64| Scalar::from_int(v);
        let (lam, lb) = (self.lam as i64, self.lam_bar as i64);
        let (ji, li) = (j as i64, l as i64);
        match x.gen {
            Gen::L => one(self.hw.delta.clone(), key(j, l)),
            Gen::J => one(self.hw.lambda.clone(), key(j, l)),
            Gen::H => one(int(lam - 2 * ji), key(j, l)),
            Gen::E if j > 0 => one(int(ji * (lam - ji + 1)), key(j - 1, l)),
            Gen::F if (j as i64) < lam => one(int(1), key(j + 1, l)),
            Gen::HB => one(int(lb - 2 * li), key(j, l)),
            Gen::EB if l > 0 => one(int(li * (lb - li + 1)), key(j, l - 1)),
            Gen::FB if (l as i64) < lb => one(int(1), key(j, l + 1)),
            _ => VVec::new(),
        }
    }

    /// `(L_0 eigenvalue, H_0 (J_0) eigenvalue, Hbar_0 eigenvalue)`, or `None`
    /// for an inhomogeneous or zero vector.
    pub fn weight_of(&self, v: &VVec) -> Option<(Scalar, Scalar, i64)> {
        let mut ws = v.keys().map(|k| self.key_weight(k));
        let w = ws.next()?;
        if ws.any(|o| o != w) {
            return None;
        }
        let l0 = &self.hw.delta + &Scalar::ratio(w.0 as i64, 2);
        let h0 = &self.hw.lambda + &Scalar::from_int(w.1 as i64);
        let hb = self.lam_bar as i64 + w.2 as i64;
        // cross-check against the action
        let h = if self.alg.has_sl2() { Gen::H } else { Gen::J };
        let chk = |g: Gen, s: &Scalar| -> bool {
            self.act(GenMode::new(g, 0), v).map(|r| r == scale_vec(v, s)).unwrap_or(false)
        };
        if !chk(Gen::L, &l0) || !chk(h, &h0) {
            return None;
        }
        if self.alg == AlgebraId::BigN4 && !chk(Gen::HB, &Scalar::from_int(hb)) {
            return None;
        }
        Some((l0, h0, hb))
    }

    /// Human-readable form, e.g. `2*d Gp[-1/2] v F0^1`.
    pub fn render(&self, v: &VVec) -> String {
        if v.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in v {
            let mut s = String::new();
            if k.dpow > 0 {
                s.push_str(&format!("d^{} ", k.dpow));
            }
            for (i, g) in self.odd.iter().enumerate() {
                if k.odd & (1 << i) != 0 {
                    s.push_str(&format!("{} ", g.gen));
                }
            }
            if k.wt.0 > 0 {
                s.push_str(&format!("F0^{} ", k.wt.0));
            }
            if k.wt.1 > 0 {
                s.push_str(&format!("F0bar^{} ", k.wt.1));
            }
            s.push('v');
            parts.push(format!("({})*{}", c.render(), s));
        }
        parts.join(" + ")
    }

    /// JSON form: list of `{dpow, odd, wt, coeff}`.
    pub fn to_json(&self, v: &VVec) -> serde_json::Value {
        let items: Vec<serde_json::Value> = v
            .iter()
            .map(|(k, c)| {
                let odd: Vec<String> = self
                    .odd
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| k.odd & (1 << i) != 0)
                    .map(|(_, g)| g.gen.token().to_string())
                    .collect();
                let wt = if self.alg == AlgebraId::BigN4 {
                    serde_json::json!([k.wt.0, k.wt.1])
                } else {
                    serde_json::json!(k.wt.0)
                };
                serde_json::json!({"dpow": k.dpow, "oddmask": odd, "wt": wt, "coeff": c.render()})
            })
            .collect();
        serde_json::Value::Array(items)
    }
}

/// Checks `x(yv) - (-1)^{p(x)p(y)} y(xv) = [x,y]v` for all pairs in `gens`
/// and every vector in `vs`; returns the failures.
pub fn check_representation(m: &VermaModule, gens: &[GenMode], vs: &[VVec]) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for &x in gens {
        for &y in gens {
            let br = bracket(m.alg, x, y)?;
            let s = if x.parity() * y.parity() == 1 { Scalar::one() } else { Scalar::from_int(-1) };
            for v in vs {
                let mut lhs = m.act(x, &m.act(y, v)?)?;
                axpy(&mut lhs, &s, &m.act(y, &m.act(x, v)?)?);
                let rhs = m.act_element(&br, v)?;
                if lhs != rhs {
                    bad.push(format!("[{x}, {y}] on {}", m.render(v)));
                }
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Param;

    fn gm(s: &str) -> GenMode {
        s.parse().unwrap()
    }

    #[test]
    fn n2_lemma_identity() {
        let m = build_module(AlgebraId::N2, HighestWeight {
            delta: Scalar::param(Param::Delta),
            lambda: Scalar::param(Param::LambdaSym),
            lambda_bar: None,
        })
        .unwrap();
        let v = m.act(gm("Gp:-1/2"), &vvec_key(PBWKey::VACUUM)).unwrap();
        let r = m.act(gm("Gm:1/2"), &v).unwrap();
        let expect: Scalar = "2*Delta - LambdaSym".parse().unwrap();
        assert_eq!(r, scale_vec(&vvec_key(PBWKey::VACUUM), &expect));
        let dv = vvec_key(PBWKey::new(1, 0, (0, 0)));
        let r = m.act(gm("L:0"), &dv).unwrap();
        assert_eq!(r, scale_vec(&dv, &"Delta + 1".parse().unwrap()));
    }

    #[test]
    fn representation_small() {
        use crate::algebra::annihilation_genmodes;
        for (alg, hw) in [
            (AlgebraId::N2, HighestWeight::new(Scalar::ratio(1, 3), 1)),
            (AlgebraId::N3, HighestWeight::new(Scalar::ratio(1, 3), 1)),
            (AlgebraId::small(1), HighestWeight::new(Scalar::ratio(1, 3), 1)),
            (AlgebraId::BigN4, HighestWeight::big(Scalar::ratio(1, 3), 1, 1)),
        ] {
            let m = build_module(alg, hw).unwrap();
            let gens = annihilation_genmodes(alg, 3);
            let vs: Vec<VVec> = m.keys_at_level(2).into_iter().take(6).map(vvec_key).collect();
            let bad = check_representation(&m, &gens, &vs).unwrap();
            assert!(bad.is_empty(), "{alg}: {:?}", &bad[..bad.len().min(5)]);
        }
    }

    #[test]
    fn key_counts() {
        let m = build_module(AlgebraId::BigN4, HighestWeight::big(Scalar::zero(), 1, 2)).unwrap();
        assert_eq!(m.keys_with_dpow(0).len(), 96);
        let m = build_module(AlgebraId::N3, HighestWeight::new(Scalar::zero(), 0)).unwrap();
        assert_eq!(m.keys_with_dpow(3).len(), 8);
    }
}
