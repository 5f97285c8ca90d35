//! The Grassmann superalgebra `C[t, 1/t] (x) Lambda(xi_1..xi_N)` with the contact bracket.
//!
//! Odd variables are stored as a bitmask. In the split basis bit `2(j-1)` is
//! `xi+_j` and bit `2(j-1)+1` is `xi-_j`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ScfError};
use crate::exactfield::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum BasisKind {
    Standard,
    Split,
}

/// `t^tpow * xi_I` with `I` sorted increasingly.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GMonomial {
    pub tpow: i64,
    pub xis: u8,
}

/// Sign of reordering the concatenation `xi_A xi_B` into increasing order; 0 if they overlap.
pub fn merge_sign(a: u8, b: u8) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut inversions = 0;
    for k in 0..8 {
        if b & (1 << k) != 0 {
            inversions += (a >> (k + 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl GMonomial {
    pub fn new(tpow: i64, xis: u8) -> Self {
        GMonomial { tpow, xis }
    }

    /// Builds from an arbitrary index tuple (0-based bits), returning the
    /// reordering sign (0 for a repeated index).
    pub fn from_indices(tpow: i64, idx: &[u8]) -> (i32, GMonomial) {
        let mut sign = 1;
        let mut mask = 0u8;
        for &k in idx {
            let s = merge_sign(mask, 1 << k);
            if s == 0 {
                return (0, GMonomial::new(tpow, 0));
            }
            sign *= s;
            mask |= 1 << k;
        }
        (sign, GMonomial::new(tpow, mask))
    }

    pub fn odd_degree(&self) -> u32 {
        self.xis.count_ones()
    }

    pub fn parity(&self) -> u8 {
        (self.xis.count_ones() % 2) as u8
    }

    /// Twice the standard degree `n + |I|/2 - 1`.
    pub fn degree2(&self) -> i64 {
        2 * self.tpow + self.xis.count_ones() as i64 - 2
    }

    pub fn indices(&self) -> Vec<u8> {
        (0..8).filter(|k| self.xis & (1 << k) != 0).collect()
    }
}

/// Finite linear combination of monomials in one basis kind.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GElement {
    pub n: u8,
    pub kind: BasisKind,
    terms: BTreeMap<GMonomial, Scalar>,
}

/// Differentiation variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    T,
    /// 0-based odd variable index in the element's basis.
    Xi(u8),
}

impl GElement {
    pub fn zero(n: u8, kind: BasisKind) -> Self {
        GElement { n, kind, terms: BTreeMap::new() }
    }

    /// Panics if the monomial uses an odd variable beyond `n`.
    pub fn monomial(n: u8, kind: BasisKind, m: GMonomial, c: Scalar) -> Self {
        assert!(u16::from(m.xis) >> n == 0, "odd index out of range for N={n}");
        let mut e = Self::zero(n, kind);
        e.add_term(m, c);
        e
    }

    /// `c * t^tpow * xi_{idx...}` with 0-based indices in any order.
    pub fn term(n: u8, kind: BasisKind, c: Scalar, tpow: i64, idx: &[u8]) -> Self {
        let (s, m) = GMonomial::from_indices(tpow, idx);
        Self::monomial(n, kind, m, &c * &Scalar::from_int(s as i64))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &GMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: GMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_default();
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if self.kind != o.kind || self.n != o.n {
            return Err(ScfError::MixedBasis);
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut r = Self::zero(self.n, self.kind);
        for (m, x) in &self.terms {
            r.add_term(*m, x * c);
        }
        r
    }

    /// Common parity, `None` if inhomogeneous; zero is even.
    pub fn parity(&self) -> Option<u8> {
        let mut ps = self.terms.keys().map(GMonomial::parity);
        match ps.next() {
            None => Some(0),
            Some(p) => ps.all(|q| q == p).then_some(p),
        }
    }

    /// Common doubled degree, `None` if inhomogeneous or zero.
    pub fn degree2(&self) -> Option<i64> {
        let mut ds = self.terms.keys().map(GMonomial::degree2);
        let d = ds.next()?;
        ds.all(|e| e == d).then_some(d)
    }

    /// Index of the variable paired with `k` in the odd part of the bracket.
    fn partner(&self, k: u8) -> u8 {
        match self.kind {
            BasisKind::Standard => k,
            BasisKind::Split => k ^ 1,
        }
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let labels: Vec<String> = m.indices().iter().map(|&k| self.label(k)).collect();
                format!("({}) * t^{} xi[{}]", c.render(), m.tpow, labels.join(","))
            })
            .collect();
        parts.join(" + ")
    }

    fn label(&self, k: u8) -> String {
        match self.kind {
            BasisKind::Standard => (k + 1).to_string(),
            BasisKind::Split => format!("{}{}", k / 2 + 1, if k.is_multiple_of(2) { '+' } else { '-' }),
        }
    }

    fn parse_label(kind: BasisKind, s: &str) -> Result<u8> {
        let bad = || ScfError::Parse(format!("bad xi label {s:?}"));
        match kind {
            BasisKind::Standard => {
                let v: u8 = s.parse().map_err(|_| bad())?;
                v.checked_sub(1).ok_or_else(bad)
            }
            BasisKind::Split => {
                let (num, sg) = s.split_at(s.len().checked_sub(1).ok_or_else(bad)?);
                let j: u8 = num.parse().map_err(|_| bad())?;
                let base = j.checked_sub(1).ok_or_else(bad)? * 2;
                match sg {
                    "+" => Ok(base),
                    "-" => Ok(base + 1),
                    _ => Err(bad()),
                }
            }
        }
    }

    /// Parses the output of [`GElement::render`].
    pub fn parse(n: u8, kind: BasisKind, s: &str) -> Result<Self> {
        let mut out = Self::zero(n, kind);
        let s = s.trim();
        if s == "0" {
            return Ok(out);
        }
        let bytes = s.as_bytes();
        let mut i = 0;
        let err = |m: &str| ScfError::Parse(format!("grassmann element: {m}"));
        while i < bytes.len() {
            if bytes[i] != b'(' {
                return Err(err("expected '('"));
            }
            let mut depth = 0;
            let mut j = i;
            loop {
                match bytes.get(j) {
                    Some(b'(') => depth += 1,
                    Some(b')') => {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    None => return Err(err("unbalanced parentheses")),
                    _ => {}
                }
                j += 1;
            }
            let coef: Scalar = s[i + 1..j].parse()?;
            let rest = s[j + 1..].strip_prefix(" * t^").ok_or_else(|| err("expected ' * t^'"))?;
            let sp = rest.find(' ').ok_or_else(|| err("expected xi list"))?;
            let tpow: i64 = rest[..sp].parse().map_err(|_| err("bad t power"))?;
            let rest = rest[sp + 1..].strip_prefix("xi[").ok_or_else(|| err("expected 'xi['"))?;
            let close = rest.find(']').ok_or_else(|| err("expected ']'"))?;
            let mut idx = Vec::new();
            for lab in rest[..close].split(',').filter(|x| !x.is_empty()) {
                idx.push(Self::parse_label(kind, lab.trim())?);
            }
            out = out.add(&Self::term(n, kind, coef, tpow, &idx))?;
            let consumed = s.len() - rest[close + 1..].len();
            i = consumed;
            if let Some(r) = s[i..].strip_prefix(" + ") {
                i = s.len() - r.len();
            } else if i != s.len() {
                return Err(err("expected ' + '"));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Associative product.
pub fn gmul(f: &GElement, g: &GElement) -> Result<GElement> {
    f.check_same(g)?;
    let mut r = GElement::zero(f.n, f.kind);
    for (a, x) in &f.terms {
        for (b, y) in &g.terms {
            let s = merge_sign(a.xis, b.xis);
            if s == 0 {
                continue;
            }
            r.add_term(GMonomial::new(a.tpow + b.tpow, a.xis | b.xis), &(x * y) * &Scalar::from_int(s as i64));
        }
    }
    Ok(r)
}

fn derive_mono(m: &GMonomial, var: Var) -> Option<(i64, GMonomial)> {
    match var {
        Var::T => (m.tpow != 0).then(|| (m.tpow, GMonomial::new(m.tpow - 1, m.xis))),
        Var::Xi(k) => {
            if m.xis & (1 << k) == 0 {
                return None;
            }
            let before = (m.xis & ((1u8 << k) - 1)).count_ones();
            let s = if before.is_multiple_of(2) { 1 } else { -1 };
            Some((s, GMonomial::new(m.tpow, m.xis & !(1 << k))))
        }
    }
}

/// Partial derivative; odd derivatives are left derivatives.
pub fn gderive(f: &GElement, var: Var) -> Result<GElement> {
    if let Var::Xi(k) = var {
        if k >= f.n {
            return Err(ScfError::InvalidArgument(format!("xi index {k} out of range")));
        }
    }
    let mut r = GElement::zero(f.n, f.kind);
    for (m, c) in &f.terms {
        if let Some((s, m2)) = derive_mono(m, var) {
            r.add_term(m2, c * &Scalar::from_int(s));
        }
    }
    Ok(r)
}

/// Euler operator `sum_i xi_i d/dxi_i`.
pub fn euler(f: &GElement) -> GElement {
    let mut r = GElement::zero(f.n, f.kind);
    for (m, c) in &f.terms {
        r.add_term(*m, c * &Scalar::from_int(m.odd_degree() as i64));
    }
    r
}

/// The contact bracket (standard or split form according to the basis kind).
pub fn contact_bracket(f: &GElement, g: &GElement) -> Result<GElement> {
    f.check_same(g)?;
    let pf = f.parity().ok_or(ScfError::NotHomogeneous)?;
    g.parity().ok_or(ScfError::NotHomogeneous)?;
    let mut r = GElement::zero(f.n, f.kind);
    for (a, x) in &f.terms {
        for (b, y) in &g.terms {
            let xy = x * y;
            // (2-E)f dg/dt - df/dt (2-E)g
            let s = merge_sign(a.xis, b.xis);
            if s != 0 {
                let k = (2 - a.odd_degree() as i64) * b.tpow - a.tpow * (2 - b.odd_degree() as i64);
                if k != 0 {
                    r.add_term(
                        GMonomial::new(a.tpow + b.tpow - 1, a.xis | b.xis),
                        &xy * &Scalar::from_int(k * s as i64),
                    );
                }
            }
            let sign = if pf == 1 { -1 } else { 1 };
            for i in 0..f.n {
                let Some((s1, da)) = derive_mono(a, Var::Xi(i)) else { continue };
                let Some((s2, db)) = derive_mono(b, Var::Xi(f.partner(i))) else { continue };
                let s3 = merge_sign(da.xis, db.xis);
                if s3 == 0 {
                    continue;
                }
                r.add_term(
                    GMonomial::new(da.tpow + db.tpow, da.xis | db.xis),
                    &xy * &Scalar::from_int(sign * s1 * s2 * s3 as i64),
                );
            }
        }
    }
    Ok(r)
}

/// Hodge dual for N = 4: `xi_I * dual = xi_1 xi_2 xi_3 xi_4`.
pub fn hodge_dual(n: u8, m: &GMonomial) -> Result<GElement> {
    if n != 4 {
        return Err(ScfError::InvalidArgument("Hodge dual needs N = 4".into()));
    }
    let comp = !m.xis & 0x0f;
    let s = merge_sign(m.xis, comp);
    Ok(GElement::monomial(4, BasisKind::Standard, GMonomial::new(m.tpow, comp), Scalar::from_int(s as i64)))
}

fn linear_xi(n: u8, kind: BasisKind, coeffs: &[(u8, Scalar)]) -> GElement {
    let mut e = GElement::zero(n, kind);
    for (k, c) in coeffs {
        e.add_term(GMonomial::new(0, 1 << k), c.clone());
    }
    e
}

/// Image of one odd variable under the change of basis.
fn convert_var(n: u8, from: BasisKind, k: u8) -> GElement {
    let h = n / 2;
    let r = &Scalar::one() / &Scalar::sqrt2();
    let ir = &Scalar::i() * &r;
    match from {
        BasisKind::Standard => {
            // xi_j = (xi+ + xi-)/sqrt2, xi_{j+N/2} = -i (xi+ - xi-)/sqrt2
            if k < h {
                linear_xi(n, BasisKind::Split, &[(2 * k, r.clone()), (2 * k + 1, r)])
            } else {
                let j = k - h;
                linear_xi(n, BasisKind::Split, &[(2 * j, -&ir), (2 * j + 1, ir)])
            }
        }
        BasisKind::Split => {
            // xi+_j = (xi_j + i xi_{j+N/2})/sqrt2, xi-_j = (xi_j - i xi_{j+N/2})/sqrt2
            let j = k / 2;
            let s = if k.is_multiple_of(2) { ir } else { -&ir };
            linear_xi(n, BasisKind::Standard, &[(j, r), (j + h, s)])
        }
    }
}

/// Change of basis between standard and split forms (N even).
pub fn convert(f: &GElement, to: BasisKind) -> Result<GElement> {
    if f.kind == to {
        return Ok(f.clone());
    }
    if !f.n.is_multiple_of(2) {
        return Err(ScfError::InvalidArgument("split basis needs even N".into()));
    }
    let mut r = GElement::zero(f.n, to);
    for (m, c) in &f.terms {
        let mut acc = GElement::monomial(f.n, to, GMonomial::new(m.tpow, 0), c.clone());
        for k in m.indices() {
            acc = gmul(&acc, &convert_var(f.n, f.kind, k))?;
        }
        r = r.add(&acc)?;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(n: u8, tpow: i64, idx: &[u8]) -> GElement {
        GElement::term(n, BasisKind::Standard, Scalar::one(), tpow, idx)
    }

    #[test]
    fn anticommutation() {
        assert_eq!(gmul(&st(3, 0, &[1]), &st(3, 0, &[0])).unwrap(), st(3, 0, &[1, 0]));
        assert_eq!(st(3, 0, &[1, 0]).coeff(&GMonomial::new(0, 0b11)), Scalar::from_int(-1));
        assert!(gmul(&st(3, 0, &[0]), &st(3, 0, &[0])).unwrap().is_zero());
        assert_eq!(gmul(&st(3, 1, &[0]), &st(3, -1, &[1, 2])).unwrap(), st(3, 0, &[0, 1, 2]));
    }

    #[test]
    fn derivatives() {
        let d = gderive(&st(3, 0, &[0, 1]), Var::Xi(1)).unwrap();
        assert_eq!(d, st(3, 0, &[0]).scale(&Scalar::from_int(-1)));
        let d = gderive(&st(3, 2, &[0]), Var::T).unwrap();
        assert_eq!(d, st(3, 1, &[0]).scale(&Scalar::from_int(2)));
        assert_eq!(euler(&st(3, 5, &[0, 2])), st(3, 5, &[0, 2]).scale(&Scalar::from_int(2)));
    }

    #[test]
    fn bracket_examples() {
        let half = Scalar::ratio(-1, 2);
        let l1 = st(2, 2, &[]).scale(&half);
        let l0 = st(2, 1, &[]).scale(&half);
        assert_eq!(contact_bracket(&l1, &l0).unwrap(), l1);
        let gp = GElement::term(2, BasisKind::Split, Scalar::one(), 0, &[0]);
        let gm = GElement::term(2, BasisKind::Split, Scalar::one(), 0, &[1]);
        let b = contact_bracket(&gp, &gm).unwrap();
        assert_eq!(b, GElement::term(2, BasisKind::Split, Scalar::from_int(-1), 0, &[]));
        assert_eq!(contact_bracket(&st(1, 0, &[]), &st(1, 1, &[])).unwrap(), st(1, 0, &[]).scale(&Scalar::from_int(2)));
    }

    #[test]
    fn hodge() {
        let m = |idx: &[u8]| GMonomial::from_indices(0, idx).1;
        assert_eq!(hodge_dual(4, &m(&[0])).unwrap(), st(4, 0, &[1, 2, 3]));
        assert_eq!(hodge_dual(4, &m(&[0, 1])).unwrap(), st(4, 0, &[2, 3]));
        assert_eq!(hodge_dual(4, &m(&[1])).unwrap(), st(4, 0, &[0, 2, 3]).scale(&Scalar::from_int(-1)));
        assert!(hodge_dual(3, &m(&[1])).is_err());
    }

    #[test]
    fn render_roundtrip() {
        let e = st(4, -2, &[0, 2]).add(&st(4, 3, &[]).scale(&"1/2 - I".parse().unwrap())).unwrap();
        let s = e.render();
        assert_eq!(GElement::parse(4, BasisKind::Standard, &s).unwrap(), e);
        let sp = GElement::term(2, BasisKind::Split, Scalar::from_int(3), 1, &[1, 0]);
        assert_eq!(sp.render(), "(-3) * t^1 xi[1+,1-]");
        assert_eq!(GElement::parse(2, BasisKind::Split, &sp.render()).unwrap(), sp);
    }
}
