//! Rational functions in the formal parameters over Q(i, sqrt 2).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::base::BaseScalar;
use super::poly::{Param, ParamPoly};
use crate::error::{Result, ScfError};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Repr {
    /// Parameter-free value.
    Const(BaseScalar),
    /// Normalized fraction with at least one non-constant part; monic denominator.
    Frac(Box<(ParamPoly, ParamPoly)>),
}

/// Exact scalar: numerator / denominator, normalized so that equality is syntactic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar(Repr);

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Const(BaseScalar::zero()))
    }

    pub fn one() -> Self {
        Scalar(Repr::Const(BaseScalar::one()))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(Repr::Const(BaseScalar::from_int(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar(Repr::Const(BaseScalar::ratio(n, d)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar(Repr::Const(BaseScalar::from_rational(q)))
    }

    pub fn from_base(b: BaseScalar) -> Self {
        Scalar(Repr::Const(b))
    }

    pub fn i() -> Self {
        Scalar::from_base(BaseScalar::i())
    }

    pub fn sqrt2() -> Self {
        Scalar::from_base(BaseScalar::sqrt2())
    }

    pub fn param(p: Param) -> Self {
        Scalar::from_poly(ParamPoly::var(p))
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        Scalar::from_parts(p, ParamPoly::one()).expect("unit denominator")
    }

    /// Builds `num / den` in normalized form.
    pub fn from_parts(num: ParamPoly, den: ParamPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(ScfError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        if let Some(d) = den.as_constant() {
            let inv = d.inv()?;
            return Ok(match num.as_constant() {
                Some(n) => Scalar(Repr::Const(&n * &inv)),
                None => Scalar(Repr::Frac(Box::new((num.scale(&inv), ParamPoly::one())))),
            });
        }
        let g = ParamPoly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        let lc = den.leading().expect("nonzero").1.inv()?;
        let num = num.scale(&lc);
        let den = den.scale(&lc);
        if den.is_one() {
            if let Some(n) = num.as_constant() {
                return Ok(Scalar(Repr::Const(n)));
            }
        }
        Ok(Scalar(Repr::Frac(Box::new((num, den)))))
    }

    pub fn numerator(&self) -> ParamPoly {
        match &self.0 {
            Repr::Const(c) => ParamPoly::constant(c.clone()),
            Repr::Frac(b) => b.0.clone(),
        }
    }

    pub fn denominator(&self) -> ParamPoly {
        match &self.0 {
            Repr::Const(_) => ParamPoly::one(),
            Repr::Frac(b) => b.1.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Const(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Const(c) if c.is_one())
    }

    pub fn as_base(&self) -> Option<&BaseScalar> {
        match &self.0 {
            Repr::Const(c) => Some(c),
            Repr::Frac(_) => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.0, Repr::Const(_))
    }

    /// The value as a rational number, if it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.as_base().and_then(|b| b.to_rational().cloned())
    }

    pub fn to_i64(&self) -> Option<i64> {
        let q = self.to_rational()?;
        if q.denom().is_one() {
            q.numer().to_i64()
        } else {
            None
        }
    }

    /// True when the value is a polynomial (unit denominator).
    pub fn is_polynomial(&self) -> bool {
        match &self.0 {
            Repr::Const(_) => true,
            Repr::Frac(b) => b.1.is_one(),
        }
    }

    pub fn params(&self) -> Vec<Param> {
        let mut v = self.numerator().params();
        for p in self.denominator().params() {
            if !v.contains(&p) {
                v.push(p);
            }
        }
        v.sort();
        v
    }

    pub fn inv(&self) -> Result<Self> {
        match &self.0 {
            Repr::Const(c) => Ok(Scalar(Repr::Const(c.inv()?))),
            Repr::Frac(b) => Scalar::from_parts(b.1.clone(), b.0.clone()),
        }
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(ScfError::DivisionByZero);
        }
        match (&self.0, &o.0) {
            (Repr::Const(a), Repr::Const(b)) => Ok(Scalar(Repr::Const(a.div(b)?))),
            _ => Ok(self * &o.inv()?),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Scalar::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Partial substitution of a parameter by a field constant.
    pub fn substitute(&self, p: Param, value: &BaseScalar) -> Result<Self> {
        match &self.0 {
            Repr::Const(_) => Ok(self.clone()),
            Repr::Frac(b) => {
                let den = b.1.substitute(p, value);
                if den.is_zero() {
                    return Err(ScfError::Pole);
                }
                Scalar::from_parts(b.0.substitute(p, value), den)
            }
        }
    }

    /// Substitutes a scalar expression for a parameter.
    pub fn compose(&self, p: Param, value: &Scalar) -> Result<Self> {
        match &self.0 {
            Repr::Const(_) => Ok(self.clone()),
            Repr::Frac(b) => {
                let n = eval_poly_at(&b.0, p, value);
                let d = eval_poly_at(&b.1, p, value);
                if d.is_zero() {
                    return Err(ScfError::Pole);
                }
                n.checked_div(&d)
            }
        }
    }

    /// Full evaluation: every parameter in `self` must be bound.
    pub fn eval(&self, bindings: &BTreeMap<Param, BigRational>) -> Result<Self> {
        for p in self.params() {
            if !bindings.contains_key(&p) {
                return Err(ScfError::UnboundParameter(p.name().to_string()));
            }
        }
        let mut x = self.clone();
        for (p, q) in bindings {
            x = x.substitute(*p, &BaseScalar::from_rational(q.clone()))?;
        }
        Ok(x)
    }

    /// Canonical text form `num` or `(num)/(den)`.
    pub fn render(&self) -> String {
        match &self.0 {
            Repr::Const(c) => c.render(),
            Repr::Frac(b) if b.1.is_one() => b.0.render(),
            Repr::Frac(b) => format!("({})/({})", b.0.render(), b.1.render()),
        }
    }

    /// True if a printed coefficient would start with a minus sign.
    pub fn is_negative_lead(&self) -> bool {
        match &self.0 {
            Repr::Const(c) => c.is_negative_lead(),
            Repr::Frac(b) => b.0.leading().is_some_and(|(_, c)| c.is_negative_lead()),
        }
    }
}

fn eval_poly_at(poly: &ParamPoly, p: Param, value: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for (e, c) in poly.to_univariate(p).iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc += &(&Scalar::from_poly(c.clone()) * &value.pow(e as u32));
    }
    acc
}

fn add_sub(a: &Scalar, b: &Scalar, sub: bool) -> Scalar {
    match (&a.0, &b.0) {
        (Repr::Const(x), Repr::Const(y)) => Scalar(Repr::Const(if sub { x - y } else { x + y })),
        _ => {
            let (an, ad) = (a.numerator(), a.denominator());
            let (bn, bd) = (b.numerator(), b.denominator());
            let (num, den) = if ad == bd {
                (if sub { an.sub(&bn) } else { an.add(&bn) }, ad)
            } else {
                let l = an.mul(&bd);
                let r = bn.mul(&ad);
                (if sub { l.sub(&r) } else { l.add(&r) }, ad.mul(&bd))
            };
            Scalar::from_parts(num, den).expect("nonzero denominator")
        }
    }
}

fn mul(a: &Scalar, b: &Scalar) -> Scalar {
    match (&a.0, &b.0) {
        (Repr::Const(x), Repr::Const(y)) => Scalar(Repr::Const(x * y)),
        (Repr::Const(x), Repr::Frac(f)) | (Repr::Frac(f), Repr::Const(x)) => {
            if x.is_zero() {
                Scalar::zero()
            } else {
                Scalar(Repr::Frac(Box::new((f.0.scale(x), f.1.clone()))))
            }
        }
        (Repr::Frac(f), Repr::Frac(g)) => {
            if f.1.is_one() && g.1.is_one() {
                return Scalar::from_poly(f.0.mul(&g.0));
            }
            Scalar::from_parts(f.0.mul(&g.0), f.1.mul(&g.1)).expect("nonzero denominator")
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_rational(BigRational::from_integer(n))
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        add_sub(self, o, false)
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        add_sub(self, o, true)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        mul(self, o)
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] for the fallible form.
impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Const(c) => Scalar(Repr::Const(-c)),
            Repr::Frac(f) => Scalar(Repr::Frac(Box::new((f.0.neg(), f.1.clone())))),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Binding map helper: `bind(&[(Param::Delta, q)])`.
pub fn bind(pairs: &[(Param, BigRational)]) -> BTreeMap<Param, BigRational> {
    pairs.iter().cloned().collect()
}

/// Rational helper used throughout: `q(n, d)`.
pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation() {
        let d = Scalar::param(Param::Delta);
        let x = &(&d * &d) - &d;
        assert_eq!(&x / &d, &d - &Scalar::one());
    }

    #[test]
    fn monic_denominator() {
        let d = Scalar::param(Param::Delta);
        let x = &Scalar::one() / &(&d * &Scalar::from_int(2));
                assert_eq!(x.denominator(), ParamPoly::var(Param::Delta));
        assert_eq!(x.render(), "(1/2)/(Delta)");
    }

    #[test]
    fn sqrt2_over_two() {
        let x = &Scalar::sqrt2() / &Scalar::from_int(2);
        assert_eq!(&x * &Scalar::sqrt2(), Scalar::one());
    }

    #[test]
    fn eval_pole_and_unbound() {
        let d = Scalar::param(Param::Delta);
        let x = &Scalar::one() / &(&d + &Scalar::one());
        assert_eq!(x.eval(&bind(&[(Param::Delta, q(-1, 1))])), Err(ScfError::Pole));
        assert!(matches!(x.eval(&BTreeMap::new()), Err(ScfError::UnboundParameter(_))));
    }
}
