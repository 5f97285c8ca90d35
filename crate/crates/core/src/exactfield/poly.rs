//! Sparse polynomials in the formal parameters with `BaseScalar` coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::base::{join_signed, BaseScalar};
use crate::error::{Result, ScfError};

/// The named formal parameters.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Param {
    Delta,
    #[serde(rename = "alpha")]
    Alpha,
    LambdaSym,
}

impl Param {
    pub const ALL: [Param; 3] = [Param::Delta, Param::Alpha, Param::LambdaSym];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Param::Delta => "Delta",
            Param::Alpha => "alpha",
            Param::LambdaSym => "LambdaSym",
        }
    }

    pub fn from_name(s: &str) -> Option<Param> {
        Param::ALL.into_iter().find(|p| p.name() == s)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over (Delta, alpha, LambdaSym), ordered graded-lex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub [u16; 3]);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn var(p: Param) -> Mono {
        let mut m = Mono::default();
        m.0[p.index()] = 1;
        m
    }

    fn mul(&self, o: &Mono) -> Mono {
        Mono([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    fn divides(&self, o: &Mono) -> bool {
        (0..3).all(|k| self.0[k] <= o.0[k])
    }

    fn div(&self, o: &Mono) -> Mono {
        Mono([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }

    fn is_one(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    fn render(&self) -> String {
        let mut parts = Vec::new();
        for p in Param::ALL {
            match self.0[p.index()] {
                0 => {}
                1 => parts.push(p.name().to_string()),
                e => parts.push(format!("{}^{}", p.name(), e)),
            }
        }
        parts.join("*")
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Polynomial in the formal parameters. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Mono, BaseScalar>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BaseScalar) -> Self {
        let mut p = Self::default();
        if !c.is_zero() {
            p.terms.insert(Mono::default(), c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(BaseScalar::one())
    }

    pub fn var(p: Param) -> Self {
        Self::monomial(Mono::var(p), BaseScalar::one())
    }

    pub fn monomial(m: Mono, c: BaseScalar) -> Self {
        let mut p = Self::default();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &BaseScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value if the polynomial is constant (zero counts as constant).
    pub fn as_constant(&self) -> Option<BaseScalar> {
        match self.terms.len() {
            0 => Some(BaseScalar::zero()),
            1 => self.terms.get(&Mono::default()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Mono::default()))
    }

    pub fn leading(&self) -> Option<(&Mono, &BaseScalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.leading().map_or(0, |(m, _)| m.degree())
    }

    pub fn degree_in(&self, p: Param) -> u16 {
        self.terms.keys().map(|m| m.0[p.index()]).max().unwrap_or(0)
    }

    pub fn params(&self) -> Vec<Param> {
        Param::ALL
            .into_iter()
            .filter(|&p| self.terms.keys().any(|m| m.0[p.index()] > 0))
            .collect()
    }

    fn add_term(&mut self, m: Mono, c: BaseScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = &*x + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c);
        }
        r
    }

    pub fn neg(&self) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = ParamPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn scale(&self, c: &BaseScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = ParamPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Exact division; errors if `o` does not divide `self`.
    pub fn div_exact(&self, o: &Self) -> Result<Self> {
        let (lm_o, lc_o) = o.leading().ok_or(ScfError::DivisionByZero)?;
        let lc_inv = lc_o.inv()?;
        let mut q = ParamPoly::zero();
        let mut r = self.clone();
        while let Some((lm_r, lc_r)) = r.leading() {
            if !lm_o.divides(lm_r) {
                return Err(ScfError::InvalidArgument("inexact polynomial division".into()));
            }
            let t = ParamPoly::monomial(lm_r.div(lm_o), lc_r * &lc_inv);
            r = r.sub(&t.mul(o));
            q = q.add(&t);
        }
        Ok(q)
    }

    /// Substitutes rational-field values for some parameters.
    pub fn substitute(&self, p: Param, value: &BaseScalar) -> Self {
        let mut r = ParamPoly::zero();
        for (m, c) in &self.terms {
            let e = m.0[p.index()];
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff = &coeff * value;
            }
            let mut m2 = *m;
            m2.0[p.index()] = 0;
            r.add_term(m2, coeff);
        }
        r
    }

    /// Substitutes a polynomial for a parameter.
    pub fn compose(&self, p: Param, value: &ParamPoly) -> Self {
        let mut r = ParamPoly::zero();
        for (m, c) in &self.terms {
            let e = m.0[p.index()];
            let mut m2 = *m;
            m2.0[p.index()] = 0;
            let t = ParamPoly::monomial(m2, c.clone()).mul(&value.pow(e as u32));
            r = r.add(&t);
        }
        r
    }

    /// Coefficients as a univariate polynomial in `p` (index = power).
    pub fn to_univariate(&self, p: Param) -> Vec<ParamPoly> {
        let mut out = vec![ParamPoly::zero(); self.degree_in(p) as usize + 1];
        for (m, c) in &self.terms {
            let e = m.0[p.index()] as usize;
            let mut m2 = *m;
            m2.0[p.index()] = 0;
            out[e].add_term(m2, c.clone());
        }
        out
    }

    pub fn from_univariate(p: Param, coeffs: &[ParamPoly]) -> Self {
        let mut r = ParamPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            for (m, x) in &c.terms {
                let mut m2 = *m;
                m2.0[p.index()] += e as u16;
                r.add_term(m2, x.clone());
            }
        }
        r
    }

    /// Monic greatest common divisor (recursive primitive remainder sequences).
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return ParamPoly::one();
        }
        let var = Param::ALL
            .into_iter()
            .find(|&p| a.degree_in(p) > 0 || b.degree_in(p) > 0)
            .expect("nonconstant");
        let ua = a.to_univariate(var);
        let ub = b.to_univariate(var);
        let ca = content(&ua);
        let cb = content(&ub);
        let c = ParamPoly::gcd(&ca, &cb);
        let pa = div_coeffs(&ua, &ca);
        let pb = div_coeffs(&ub, &cb);
        let g = prs_gcd(pa, pb);
        ParamPoly::from_univariate(var, &g).mul(&c).monic()
    }

    /// Canonical text form, terms in descending graded-lex order.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            if m.is_one() {
                let s = c.render();
                if c.support() > 1 && self.terms.len() > 1 {
                    parts.push(format!("({s})"));
                } else {
                    parts.push(s);
                }
                continue;
            }
            let mr = m.render();
            if c.is_one() {
                parts.push(mr);
            } else if (-c).is_one() {
                parts.push(format!("-{mr}"));
            } else if c.support() > 1 {
                parts.push(format!("({})*{mr}", c.render()));
            } else {
                parts.push(format!("{}*{mr}", c.render()));
            }
        }
        join_signed(&parts)
    }
}

fn content(coeffs: &[ParamPoly]) -> ParamPoly {
    let mut g = ParamPoly::zero();
    for c in coeffs {
        g = ParamPoly::gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn div_coeffs(coeffs: &[ParamPoly], d: &ParamPoly) -> Vec<ParamPoly> {
    coeffs
        .iter()
        .map(|c| c.div_exact(d).expect("content divides every coefficient"))
        .collect()
}

fn trim(v: &mut Vec<ParamPoly>) {
    while v.len() > 1 && v.last().is_some_and(ParamPoly::is_zero) {
        v.pop();
    }
}

fn is_zero_univ(v: &[ParamPoly]) -> bool {
    v.iter().all(ParamPoly::is_zero)
}

fn pseudo_rem(a: &[ParamPoly], b: &[ParamPoly]) -> Vec<ParamPoly> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while !is_zero_univ(&r) && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let k = dr - db;
        let mut next: Vec<ParamPoly> = r.iter().map(|c| c.mul(lb)).collect();
        for (j, bc) in b.iter().enumerate() {
            next[j + k] = next[j + k].sub(&bc.mul(&lr));
        }
        next.pop();
        trim(&mut next);
        r = next;
    }
    r
}

fn primitive(v: Vec<ParamPoly>) -> Vec<ParamPoly> {
    let c = content(&v);
    if c.is_one() {
        v
    } else {
        div_coeffs(&v, &c)
    }
}

fn prs_gcd(mut a: Vec<ParamPoly>, mut b: Vec<ParamPoly>) -> Vec<ParamPoly> {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if is_zero_univ(&b) {
            return primitive(a);
        }
        if b.len() == 1 {
            return vec![ParamPoly::one()];
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        b = if is_zero_univ(&r) { r } else { primitive(r) };
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d() -> ParamPoly {
        ParamPoly::var(Param::Delta)
    }
    fn l() -> ParamPoly {
        ParamPoly::var(Param::LambdaSym)
    }
    fn k(n: i64) -> ParamPoly {
        ParamPoly::constant(BaseScalar::from_int(n))
    }

    #[test]
    fn univariate_gcd() {
        let a = d().mul(&d()).sub(&k(1)); // (D-1)(D+1)
        let b = d().sub(&k(1)).mul(&d().add(&k(3)));
        assert_eq!(ParamPoly::gcd(&a, &b), d().sub(&k(1)));
    }

    #[test]
    fn multivariate_gcd() {
        let f = d().scale(&BaseScalar::from_int(2)).sub(&l()); // 2D - L
        let g1 = f.mul(&d().add(&l()));
        let g2 = f.mul(&l().add(&k(2))).mul(&l());
        assert_eq!(ParamPoly::gcd(&g1, &g2), f.monic());
        assert!(ParamPoly::gcd(&d(), &l()).is_one());
    }

    #[test]
    fn exact_division() {
        let a = d().mul(&d()).sub(&d());
        assert_eq!(a.div_exact(&d()).unwrap(), d().sub(&k(1)));
        assert!(a.div_exact(&l()).is_err());
    }

    #[test]
    fn render_order() {
        let p = d().mul(&d()).sub(&l().scale(&BaseScalar::ratio(1, 2))).add(&k(3));
        assert_eq!(p.render(), "Delta^2 - 1/2*LambdaSym + 3");
    }
}
