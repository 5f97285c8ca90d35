//! The field Q(i, sqrt 2) as a four dimensional Q-algebra.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, ScfError};

/// `a + b*i + c*sqrt2 + d*i*sqrt2` with rational components.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BaseScalar {
    c: [BigRational; 4],
}

/// Product table of the basis {1, i, sqrt2, i*sqrt2}: `e_j * e_k = MUL[j][k].0 * e_{MUL[j][k].1}`.
const MUL: [[(i64, usize); 4]; 4] = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2)],
    [(1, 2), (1, 3), (2, 0), (2, 1)],
    [(1, 3), (-1, 2), (2, 1), (-2, 0)],
];

impl BaseScalar {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        BaseScalar { c: [a, b, c, d] }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut s = Self::default();
        s.c[0] = q;
        s
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn i() -> Self {
        let mut s = Self::default();
        s.c[1] = BigRational::one();
        s
    }

    pub fn sqrt2() -> Self {
        let mut s = Self::default();
        s.c[2] = BigRational::one();
        s
    }

    pub fn components(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the irrational parts vanish.
    pub fn to_rational(&self) -> Option<&BigRational> {
        if self.c[1..].iter().all(Zero::is_zero) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        BaseScalar {
            c: [&self.c[0] * q, &self.c[1] * q, &self.c[2] * q, &self.c[3] * q],
        }
    }

    /// Galois conjugate sqrt2 -> -sqrt2.
    fn conj_sqrt2(&self) -> Self {
        BaseScalar {
            c: [self.c[0].clone(), self.c[1].clone(), -&self.c[2], -&self.c[3]],
        }
    }

    /// Galois conjugate i -> -i.
    fn conj_i(&self) -> Self {
        BaseScalar {
            c: [self.c[0].clone(), -&self.c[1], self.c[2].clone(), -&self.c[3]],
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(ScfError::DivisionByZero);
        }
        // x * conj_sqrt2(x) lies in Q(i); times its i-conjugate lies in Q.
        let a = self.conj_sqrt2();
        let xa = self * &a;
        let b = xa.conj_i();
        let n = &xa * &b;
        let q = n.c[0].recip();
        Ok((&a * &b).scale(&q))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if let (Some(p), Some(q)) = (self.to_rational(), o.to_rational()) {
            return Self::from_rational(p * q);
        }
        let mut out = Self::default();
        for (j, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, y) in o.c.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (s, idx) = MUL[j][k];
                let p = x * y;
                out.c[idx] += p * BigRational::from_integer(BigInt::from(s));
            }
        }
        out
    }

    /// Canonical text form using the `I` and `SQRT2` tokens.
    pub fn render(&self) -> String {
        let units = ["", "I", "SQRT2", "I*SQRT2"];
        let mut parts: Vec<String> = Vec::new();
        for (k, q) in self.c.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let s = if k == 0 {
                render_rational(q)
            } else if q.is_one() {
                units[k].to_string()
            } else if (-q).is_one() {
                format!("-{}", units[k])
            } else {
                format!("{}*{}", render_rational(q), units[k])
            };
            parts.push(s);
        }
        if parts.is_empty() {
            return "0".to_string();
        }
        join_signed(&parts)
    }

    /// Number of nonzero components.
    pub fn support(&self) -> usize {
        self.c.iter().filter(|q| !q.is_zero()).count()
    }

    /// True if the leading nonzero component is negative.
    pub fn is_negative_lead(&self) -> bool {
        self.c.iter().find(|q| !q.is_zero()).is_some_and(|q| q.is_negative())
    }
}

pub(crate) fn render_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Joins already signed summands with ` + ` / ` - `.
pub(crate) fn join_signed(parts: &[String]) -> String {
    let mut out = String::new();
    for (n, p) in parts.iter().enumerate() {
        if n == 0 {
            out.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

impl fmt::Display for BaseScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add<&BaseScalar> for &BaseScalar {
    type Output = BaseScalar;
    fn add(self, o: &BaseScalar) -> BaseScalar {
        BaseScalar {
            c: [
                &self.c[0] + &o.c[0],
                &self.c[1] + &o.c[1],
                &self.c[2] + &o.c[2],
                &self.c[3] + &o.c[3],
            ],
        }
    }
}

impl Sub<&BaseScalar> for &BaseScalar {
    type Output = BaseScalar;
    fn sub(self, o: &BaseScalar) -> BaseScalar {
        BaseScalar {
            c: [
                &self.c[0] - &o.c[0],
                &self.c[1] - &o.c[1],
                &self.c[2] - &o.c[2],
                &self.c[3] - &o.c[3],
            ],
        }
    }
}

impl Mul<&BaseScalar> for &BaseScalar {
    type Output = BaseScalar;
    fn mul(self, o: &BaseScalar) -> BaseScalar {
        self.mul_ref(o)
    }
}

impl Neg for &BaseScalar {
    type Output = BaseScalar;
    fn neg(self) -> BaseScalar {
        BaseScalar {
            c: [-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]],
        }
    }
}

impl Neg for BaseScalar {
    type Output = BaseScalar;
    fn neg(self) -> BaseScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_norm() {
        let a = &BaseScalar::one() + &BaseScalar::i();
        let b = &BaseScalar::one() - &BaseScalar::i();
        assert_eq!(&a * &b, BaseScalar::from_int(2));
    }

    #[test]
    fn inverse_of_mixed_element() {
        let x = BaseScalar::new(
            BigRational::from_integer(3.into()),
            BigRational::new((-1).into(), 2.into()),
            BigRational::from_integer(2.into()),
            BigRational::new(5.into(), 7.into()),
        );
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert_eq!(BaseScalar::zero().inv(), Err(ScfError::DivisionByZero));
    }

    #[test]
    fn sqrt2_squared() {
        assert_eq!(&BaseScalar::sqrt2() * &BaseScalar::sqrt2(), BaseScalar::from_int(2));
        let isq = &BaseScalar::i() * &BaseScalar::sqrt2();
        assert_eq!(&isq * &isq, BaseScalar::from_int(-2));
    }

    #[test]
    fn render_forms() {
        assert_eq!(BaseScalar::ratio(-3, 4).render(), "-3/4");
        let x = &BaseScalar::ratio(1, 2) - &BaseScalar::i();
        assert_eq!(x.render(), "1/2 - I");
        assert_eq!(BaseScalar::zero().render(), "0");
    }
}
