//! Values of Delta at which a weight space acquires singular vectors.
//!
//! The stacked condition matrix has entries in K[Delta]. Row reduction by
//! polynomial division (a Hermite form) keeps every step unimodular, so the
//! product of the diagonal is the gcd of the maximal minors, and the kernel
//! jumps exactly at its roots.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{condition_matrix, from_coords, positive_conditions, raising};
use crate::error::{Result, ScfError};
use crate::exactfield::{BaseScalar, Param, ParamPoly, Scalar};
use crate::linalg::nullspace;
use crate::verma::{build_module, HighestWeight, VVec, VermaModule};

#[derive(Clone, Debug, PartialEq)]
struct UPoly(Vec<BaseScalar>);

impl UPoly {
    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn from_scalar(s: &Scalar) -> Result<Self> {
        let bad = || ScfError::InvalidArgument(format!("{s} is not a polynomial in Delta"));
        let den = s.denominator().as_constant().ok_or_else(bad)?;
        let inv = den.inv()?;
        let mut out = Vec::new();
        for c in s.numerator().to_univariate(Param::Delta) {
            out.push(&c.as_constant().ok_or_else(bad)? * &inv);
        }
        Ok(UPoly(out).trim())
    }

    fn to_scalar(&self) -> Scalar {
        let cs: Vec<ParamPoly> = self.0.iter().map(|c| ParamPoly::constant(c.clone())).collect();
        Scalar::from_poly(ParamPoly::from_univariate(Param::Delta, &cs))
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn sub_mul(&self, q: &UPoly, b: &UPoly) -> UPoly {
        let n = self.0.len().max(q.0.len() + b.0.len());
        let mut out = self.0.clone();
        out.resize(n, BaseScalar::zero());
        for (i, x) in q.0.iter().enumerate() {
            for (j, y) in b.0.iter().enumerate() {
                out[i + j] = &out[i + j] - &(x * y);
            }
        }
        UPoly(out).trim()
    }

    fn mul(&self, b: &UPoly) -> UPoly {
        let neg = UPoly(self.0.iter().map(|c| -c).collect());
        UPoly(vec![]).sub_mul(&neg, b)
    }

    fn divrem(&self, b: &UPoly) -> Result<(UPoly, UPoly)> {
        let lead = b.0.last().ok_or(ScfError::DivisionByZero)?;
        let inv = lead.inv()?;
        let mut r = self.clone();
        let mut q = vec![BaseScalar::zero(); self.0.len().saturating_sub(b.deg())];
        while !r.is_zero() && r.deg() >= b.deg() {
            let s = r.deg() - b.deg();
            let c = r.0.last().unwrap() * &inv;
            let mut t = vec![BaseScalar::zero(); s + 1];
            t[s] = c.clone();
            q[s] = &q[s] + &c;
            r = r.sub_mul(&UPoly(t), b);
        }
        Ok((UPoly(q).trim(), r))
    }

    fn derivative(&self) -> UPoly {
        let v = self.0.iter().enumerate().skip(1).map(|(i, c)| c * &BaseScalar::from_int(i as i64)).collect();
        UPoly(v).trim()
    }

    fn gcd(a: &UPoly, b: &UPoly) -> Result<UPoly> {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.divrem(&b)?.1;
            a = b;
            b = r;
        }
        Ok(a)
    }

    fn eval(&self, x: &BigRational) -> BaseScalar {
        let xs = BaseScalar::from_rational(x.clone());
        self.0.iter().rev().fold(BaseScalar::zero(), |acc, c| &(&acc * &xs) + c)
    }
}

/// Hermite-style reduction; returns the diagonal and whether every column has a pivot.
fn hermite_diagonal(mut a: Vec<Vec<UPoly>>, ncols: usize) -> Result<(Vec<UPoly>, bool)> {
    let mut diag = Vec::new();
    let mut full = true;
    let mut row = 0;
    for col in 0..ncols {
        loop {
            let best = (row..a.len()).filter(|&r| !a[r][col].is_zero()).min_by_key(|&r| a[r][col].deg());
            let Some(p) = best else {
                full = false;
                break;
            };
            a.swap(row, p);
            let mut clean = true;
            for r in row + 1..a.len() {
                if a[r][col].is_zero() {
                    continue;
                }
                let q = a[r][col].divrem(&a[row][col])?.0;
                let prow = a[row].clone();
                for (x, y) in a[r].iter_mut().zip(&prow) {
                    *x = x.sub_mul(&q, y);
                }
                clean &= a[r][col].is_zero();
            }
            if clean {
                diag.push(a[row][col].clone());
                row += 1;
                break;
            }
        }
    }
    Ok((diag, full))
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if p > BigInt::from(10_000_000) {
            return Err(ScfError::InvalidArgument("coefficient too large to factor".into()));
        }
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    Ok(out)
}

/// Rational roots of a squarefree polynomial with rational coefficients.
fn rational_roots(f: &UPoly) -> Result<Vec<BigRational>> {
    let mut qs = Vec::new();
    for c in &f.0 {
        qs.push(c.to_rational().cloned().ok_or_else(|| ScfError::InvalidArgument("irrational locus".into()))?);
    }
    let mut lcm = BigInt::one();
    for q in &qs {
        lcm = num_integer::Integer::lcm(&lcm, q.denom());
    }
    let ints: Vec<BigInt> = qs.iter().map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    let shift = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if shift > 0 {
        roots.push(BigRational::zero());
    }
    let ints = &ints[shift..];
    if ints.len() <= 1 {
        return Ok(roots);
    }
    let (a0, an) = (&ints[0], ints.last().unwrap());
    for p in divisors(a0)? {
        for q in divisors(an)? {
            for s in [1, -1] {
                let x = BigRational::new(&p * s, q.clone());
                if !roots.contains(&x) && f.eval(&x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// One stratum of the locus at a weight.
#[derive(Clone, Debug, Serialize)]
pub struct LocusEntry {
    pub level2: i32,
    pub weight: (i32, i32, i32),
    /// Primitive polynomial in Delta; `0` when singular vectors exist for every Delta.
    pub condition: Scalar,
    pub root: Option<String>,
    #[serde(skip)]
    pub family: Vec<VVec>,
}

fn primitive_linear(x: &BigRational) -> Scalar {
    let p = Scalar::from_rational(BigRational::from_integer(x.numer().clone()));
    let q = Scalar::from_rational(BigRational::from_integer(x.denom().clone()));
    &(&q * &Scalar::param(Param::Delta)) - &p
}

fn primitive(f: &UPoly) -> Result<Scalar> {
    let lead = f.0.last().ok_or(ScfError::DivisionByZero)?.inv()?;
    let monic: Vec<BigRational> = f
        .0
        .iter()
        .map(|c| (c * &lead).to_rational().cloned().ok_or_else(|| ScfError::InvalidArgument("irrational".into())))
        .collect::<Result<_>>()?;
    let mut l = BigInt::one();
    for q in &monic {
        l = num_integer::Integer::lcm(&l, q.denom());
    }
    let s = BaseScalar::from_rational(BigRational::from_integer(l));
    Ok(UPoly(monic.into_iter().map(|q| &BaseScalar::from_rational(q) * &s).collect()).to_scalar())
}

/// The Delta-locus of one weight space of a module built with symbolic Delta.
pub fn locus_at(m: &VermaModule, w: (i32, i32, i32)) -> Result<Vec<LocusEntry>> {
    let mut ops = raising(m.alg);
    ops.extend(positive_conditions(m.alg));
    let cols = m.weight_space(w);
    let a = condition_matrix(m, &ops, &cols)?;
    let mut out = Vec::new();
    let up: Vec<Vec<UPoly>> =
        a.iter().map(|r| r.iter().map(UPoly::from_scalar).collect::<Result<_>>()).collect::<Result<_>>()?;
    let (diag, full) = hermite_diagonal(up, cols.len())?;
    if !full {
        let fam = nullspace(&a, cols.len()).iter().map(|x| from_coords(&cols, x)).collect();
        out.push(LocusEntry { level2: w.0, weight: w, condition: Scalar::zero(), root: None, family: fam });
        return Ok(out);
    }
    let mut det = UPoly(vec![BaseScalar::one()]);
    for d in &diag {
        det = det.mul(d);
    }
    if det.deg() == 0 {
        return Ok(out);
    }
    let g = UPoly::gcd(&det, &det.derivative())?;
    let mut sqfree = det.divrem(&g)?.0;
    for x in rational_roots(&sqfree)? {
        let hw = HighestWeight { delta: Scalar::from_rational(x.clone()), ..m.hw.clone() };
        let mc = build_module(m.alg, hw)?;
        let a = condition_matrix(&mc, &ops, &cols)?;
        let fam = nullspace(&a, cols.len()).iter().map(|v| from_coords(&cols, v)).collect();
        out.push(LocusEntry {
            level2: w.0,
            weight: w,
            condition: primitive_linear(&x),
            root: Some(Scalar::from_rational(x.clone()).render()),
            family: fam,
        });
        let lin = UPoly(vec![BaseScalar::from_rational(-x), BaseScalar::one()]);
        sqfree = sqfree.divrem(&lin)?.0;
    }
    if sqfree.deg() > 0 {
        out.push(LocusEntry { level2: w.0, weight: w, condition: primitive(&sqfree)?, root: None, family: vec![] });
    }
    Ok(out)
}

/// Locus over every weight space of level `1 ..= 2*dpow_cutoff + 1`.
pub fn singular_locus(m: &VermaModule, dpow_cutoff: u32) -> Result<Vec<LocusEntry>> {
    let mut out = Vec::new();
    for l2 in 1..=(2 * dpow_cutoff as i32 + 1) {
        for w in m.weights_at_level(l2) {
            out.extend(locus_at(m, w)?);
        }
    }
    Ok(out)
}
