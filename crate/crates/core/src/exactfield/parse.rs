//! Parser for the scalar text form.

use std::str::FromStr;

use num_bigint::BigInt;

use super::poly::Param;
use super::scalar::Scalar;
use crate::error::{Result, ScfError};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = cs[st..i].iter().collect();
            out.push(Tok::Num(lit.parse().map_err(|_| ScfError::Parse(lit.clone()))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(ScfError::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                acc = acc.checked_div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| ScfError::Parse("exponent".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(ScfError::Parse("expected exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Scalar> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match t {
            Some(Tok::Num(n)) => Ok(Scalar::from(n)),
            Some(Tok::Ident(id)) => match id.as_str() {
                "I" => Ok(Scalar::i()),
                "SQRT2" => Ok(Scalar::sqrt2()),
                other => Param::from_name(other)
                    .map(Scalar::param)
                    .ok_or_else(|| ScfError::Parse(format!("unknown identifier {other}"))),
            },
            Some(Tok::Op('(')) => {
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(ScfError::Parse("expected ')'".into()));
                }
                Ok(v)
            }
            other => Err(ScfError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

impl FromStr for Scalar {
    type Err = ScfError;

    fn from_str(s: &str) -> Result<Scalar> {
        let mut p = Parser { toks: lex(s)?, pos: 0 };
        let v = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(ScfError::Parse(format!("trailing input in {s:?}")));
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals_and_units() {
        let x: Scalar = "-3/2*I + SQRT2".parse().unwrap();
        assert_eq!(x.render(), "-3/2*I + SQRT2");
        let y: Scalar = "(Delta^2 - Delta)/(Delta)".parse().unwrap();
        assert_eq!(y.render(), "Delta - 1");
    }

    #[test]
    fn rejects_garbage() {
        assert!("Delta +".parse::<Scalar>().is_err());
        assert!("foo".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
    }
}
