//! Formal lambda-bracket calculus for conformal (super)algebras and modules
//! that are free over C[d] on finitely many generators.
//!
//! A table entry `a_lambda b` is a [`LambdaPoly`]: a C[d, lambda, mu]-linear
//! combination of generator labels. Products of `d`-polynomials follow from
//! sesquilinearity, missing ordered pairs from skew-symmetry.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{basis_at, bracket, bracket_elements, genmodes, AlgElement, AlgebraId, Gen, GenMode, Report};
use crate::classify::{maximal_submodule, quotient_generators, GradedSubspace};
use crate::error::{Result, ScfError};
use crate::exactfield::Scalar;
use crate::linalg::{solve_columns, Echelon, SparseVec};
use crate::verma::{build_module, vvec_key, HighestWeight, PBWKey, VVec, VermaModule};

/// Exponents of `(d, lambda, mu)`.
pub type Exp = [u32; 3];

const LAM: usize = 1;
const MU: usize = 2;

/// Polynomial in `d`, `lambda`, `mu`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly3(BTreeMap<Exp, Scalar>);

impl Poly3 {
    pub fn zero() -> Self {
        Poly3(BTreeMap::new())
    }

    pub fn monomial(e: Exp, c: Scalar) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(e, c);
        }
        Poly3(m)
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn d() -> Self {
        Self::monomial([1, 0, 0], Scalar::one())
    }

    pub fn lambda() -> Self {
        Self::monomial([0, 1, 0], Scalar::one())
    }

    pub fn mu() -> Self {
        Self::monomial([0, 0, 1], Scalar::one())
    }

    fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(e, Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Scalar)> {
        self.0.iter()
    }

    fn add_term(&mut self, e: Exp, c: &Scalar) {
        let r = match self.0.get(&e) {
            Some(x) => x + c,
            None => c.clone(),
        };
        if r.is_zero() {
            self.0.remove(&e);
        } else {
            self.0.insert(e, r);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly3(self.0.iter().map(|(e, x)| (*e, x * c)).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Replaces `d`, `lambda`, `mu` by the given polynomials.
    pub fn subst(&self, vals: &[Poly3; 3]) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.0 {
            let mut t = Self::constant(c.clone());
            for i in 0..3 {
                if e[i] > 0 {
                    t = &t * &vals[i].pow(e[i]);
                }
            }
            out = &out + &t;
        }
        out
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.0.iter().rev() {
            let mut vars = Vec::new();
            for (i, name) in ["d", "lambda", "mu"].iter().enumerate() {
                match e[i] {
                    0 => {}
                    1 => vars.push(name.to_string()),
                    k => vars.push(format!("{name}^{k}")),
                }
            }
            let mono = vars.join("*");
            let cs = c.render();
            let term = if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else if cs.contains(' ') || cs.contains('/') && cs.contains('(') {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            parts.push(term);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl Add for &Poly3 {
    type Output = Poly3;
    fn add(self, o: &Poly3) -> Poly3 {
        let mut r = self.clone();
        for (e, c) in &o.0 {
            r.add_term(*e, c);
        }
        r
    }
}

impl Sub for &Poly3 {
    type Output = Poly3;
    fn sub(self, o: &Poly3) -> Poly3 {
        self + &(-o)
    }
}

impl Neg for &Poly3 {
    type Output = Poly3;
    fn neg(self) -> Poly3 {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Mul for &Poly3 {
    type Output = Poly3;
    fn mul(self, o: &Poly3) -> Poly3 {
        let mut r = Poly3::zero();
        for (e, c) in &self.0 {
            for (f, d) in &o.0 {
                r.add_term([e[0] + f[0], e[1] + f[1], e[2] + f[2]], &(c * d));
            }
        }
        r
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

owned_ops!(Poly3);
owned_ops!(LambdaPoly);

impl Mul for Poly3 {
    type Output = Poly3;
    fn mul(self, o: Poly3) -> Poly3 {
        &self * &o
    }
}

/// `sum_x p_x(d, lambda, mu) x` over generator labels `x`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LambdaPoly(BTreeMap<String, Poly3>);

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly(BTreeMap::new())
    }

    pub fn gen(label: &str) -> Self {
        Self::term(label, Poly3::one())
    }

    pub fn term(label: &str, p: Poly3) -> Self {
        let mut r = Self::zero();
        r.add_poly(label, &p);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&String, &Poly3)> {
        self.0.iter()
    }

    pub fn coefficient(&self, label: &str) -> Poly3 {
        self.0.get(label).cloned().unwrap_or_default()
    }

    fn add_poly(&mut self, label: &str, p: &Poly3) {
        let r = match self.0.get(label) {
            Some(x) => x + p,
            None => p.clone(),
        };
        if r.is_zero() {
            self.0.remove(label);
        } else {
            self.0.insert(label.to_string(), r);
        }
    }

    /// Multiplies every coefficient by `p`.
    pub fn mul_poly(&self, p: &Poly3) -> Self {
        let mut r = Self::zero();
        for (x, q) in &self.0 {
            r.add_poly(x, &(q * p));
        }
        r
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.mul_poly(&Poly3::constant(c.clone()))
    }

    pub fn subst(&self, vals: &[Poly3; 3]) -> Self {
        let mut r = Self::zero();
        for (x, q) in &self.0 {
            r.add_poly(x, &q.subst(vals));
        }
        r
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(x, p)| if *p == Poly3::one() { x.clone() } else { format!("({}){x}", p.render()) })
            .collect();
        parts.join(" + ")
    }

    pub fn to_json(&self) -> Value {
        let mut out = Vec::new();
        for (x, p) in &self.0 {
            for (e, c) in p.terms() {
                out.push(json!({"gen": x, "d": e[0], "lambda": e[1], "mu": e[2], "coeff": c.render()}));
            }
        }
        Value::Array(out)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |s: &str| ScfError::Parse(format!("lambda polynomial: {s}"));
        let mut r = Self::zero();
        for t in v.as_array().ok_or_else(|| bad("expected an array"))? {
            let x = t["gen"].as_str().ok_or_else(|| bad("missing gen"))?;
            let mut e = [0u32; 3];
            for (i, k) in ["d", "lambda", "mu"].iter().enumerate() {
                e[i] = t[*k].as_u64().unwrap_or(0) as u32;
            }
            let c: Scalar = t["coeff"].as_str().ok_or_else(|| bad("missing coeff"))?.parse()?;
            r.add_poly(x, &Poly3::monomial(e, c));
        }
        Ok(r)
    }
}

impl Add for &LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, o: &LambdaPoly) -> LambdaPoly {
        let mut r = self.clone();
        for (x, p) in &o.0 {
            r.add_poly(x, p);
        }
        r
    }
}

impl Sub for &LambdaPoly {
    type Output = LambdaPoly;
    fn sub(self, o: &LambdaPoly) -> LambdaPoly {
        self + &(-o)
    }
}

impl Neg for &LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        self.scale(&Scalar::from_int(-1))
    }
}

type Table = BTreeMap<(String, String), LambdaPoly>;

fn gens_json(gens: &[(String, u8)]) -> Value {
    Value::Array(gens.iter().map(|(x, p)| json!({"label": x, "parity": p})).collect())
}

fn table_json(t: &Table, left: &str, right: &str) -> Value {
    Value::Array(t.iter().map(|((a, b), p)| json!({left: a, right: b, "value": p.to_json()})).collect())
}

fn gens_from_json(v: &Value) -> Result<Vec<(String, u8)>> {
    let bad = || ScfError::Parse("generator list".into());
    v.as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|g| Ok((g["label"].as_str().ok_or_else(bad)?.to_string(), g["parity"].as_u64().ok_or_else(bad)? as u8)))
        .collect()
}

fn table_from_json(v: &Value, left: &str, right: &str) -> Result<Table> {
    let bad = || ScfError::Parse("table entry".into());
    let mut t = Table::new();
    for e in v.as_array().ok_or_else(bad)? {
        let a = e[left].as_str().ok_or_else(bad)?.to_string();
        let b = e[right].as_str().ok_or_else(bad)?.to_string();
        t.insert((a, b), LambdaPoly::from_json(&e["value"])?);
    }
    Ok(t)
}

fn parity_of(gens: &[(String, u8)], x: &str) -> Result<u8> {
    gens.iter()
        .find(|(y, _)| y == x)
        .map(|(_, p)| *p)
        .ok_or_else(|| ScfError::InvalidGenerator(format!("unknown generator `{x}`")))
}

/// `a_lambda b = -(-1)^{p(a)p(b)} b_{-lambda-d} a`, given `b_lambda a`.
fn skew(ba: &LambdaPoly, odd_odd: bool) -> LambdaPoly {
    let sub = [Poly3::d(), -Poly3::lambda() - Poly3::d(), Poly3::mu()];
    let s = if odd_odd { Scalar::one() } else { Scalar::from_int(-1) };
    ba.subst(&sub).scale(&s)
}

/// A conformal superalgebra free over C[d] on `gens`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalAlgebraSpec {
    pub name: String,
    pub gens: Vec<(String, u8)>,
    pub table: Table,
}

impl ConformalAlgebraSpec {
    pub fn new(name: &str, gens: &[(&str, u8)]) -> Self {
        ConformalAlgebraSpec {
            name: name.into(),
            gens: gens.iter().map(|(x, p)| (x.to_string(), *p)).collect(),
            table: Table::new(),
        }
    }

    pub fn set(&mut self, a: &str, b: &str, p: LambdaPoly) {
        self.table.insert((a.into(), b.into()), p);
    }

    pub fn parity(&self, x: &str) -> Result<u8> {
        parity_of(&self.gens, x)
    }

    /// `a_lambda b` for generators; pairs given only in the other order use
    /// skew-symmetry, pairs given in neither order are zero.
    pub fn product(&self, a: &str, b: &str) -> Result<LambdaPoly> {
        let (pa, pb) = (self.parity(a)?, self.parity(b)?);
        if let Some(p) = self.table.get(&(a.to_string(), b.to_string())) {
            return Ok(p.clone());
        }
        match self.table.get(&(b.to_string(), a.to_string())) {
            Some(p) => Ok(skew(p, pa * pb == 1)),
            None => Ok(LambdaPoly::zero()),
        }
    }

    /// The same algebra with every ordered pair written out, zeros dropped.
    pub fn completed(&self) -> Result<Self> {
        let mut r = Self { table: Table::new(), ..self.clone() };
        for (a, _) in &self.gens {
            for (b, _) in &self.gens {
                let p = self.product(a, b)?;
                if !p.is_zero() {
                    r.table.insert((a.clone(), b.clone()), p);
                }
            }
        }
        Ok(r)
    }

    pub fn to_json(&self) -> Value {
        json!({"name": self.name, "gens": gens_json(&self.gens), "table": table_json(&self.table, "a", "b")})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        Ok(ConformalAlgebraSpec {
            name: v["name"].as_str().unwrap_or_default().to_string(),
            gens: gens_from_json(&v["gens"])?,
            table: table_from_json(&v["table"], "a", "b")?,
        })
    }
}

/// A conformal module free over C[d] on `gens`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalModuleSpec {
    pub name: String,
    pub gens: Vec<(String, u8)>,
    /// Values of the parameters the table is written in; symbolic entries
    /// stand for themselves.
    pub params: BTreeMap<String, Scalar>,
    pub action: Table,
}

impl ConformalModuleSpec {
    pub fn new(name: &str, gens: &[(&str, u8)]) -> Self {
        ConformalModuleSpec {
            name: name.into(),
            gens: gens.iter().map(|(x, p)| (x.to_string(), *p)).collect(),
            params: BTreeMap::new(),
            action: Table::new(),
        }
    }

    pub fn set(&mut self, a: &str, v: &str, p: LambdaPoly) {
        self.action.insert((a.into(), v.into()), p);
    }

    pub fn parity(&self, x: &str) -> Result<u8> {
        parity_of(&self.gens, x)
    }

    /// `a_lambda v` for generators; missing entries are zero.
    pub fn action(&self, a: &str, v: &str) -> Result<LambdaPoly> {
        self.parity(v)?;
        Ok(self.action.get(&(a.to_string(), v.to_string())).cloned().unwrap_or_default())
    }

    /// Substitutes `d -> d + alpha` in every entry.
    pub fn twist_alpha(&self) -> Self {
        let sub = [&Poly3::d() + &Poly3::constant(alpha()), Poly3::lambda(), Poly3::mu()];
        let mut r = self.clone();
        r.action = self.action.iter().map(|(k, p)| (k.clone(), p.subst(&sub))).collect();
        r.params.insert("alpha".into(), alpha());
        r
    }

    pub fn to_json(&self) -> Value {
        let params: BTreeMap<&String, String> = self.params.iter().map(|(k, v)| (k, v.render())).collect();
        json!({
            "name": self.name,
            "gens": gens_json(&self.gens),
            "params": params,
            "action": table_json(&self.action, "a", "v"),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let mut params = BTreeMap::new();
        if let Some(o) = v["params"].as_object() {
            for (k, x) in o {
                let s = x.as_str().ok_or_else(|| ScfError::Parse(format!("parameter {k}")))?;
                params.insert(k.clone(), s.parse()?);
            }
        }
        Ok(ConformalModuleSpec {
            name: v["name"].as_str().unwrap_or_default().to_string(),
            gens: gens_from_json(&v["gens"])?,
            params,
            action: table_from_json(&v["action"], "a", "v")?,
        })
    }
}

type Prod<'a> = &'a dyn Fn(&str, &str) -> Result<LambdaPoly>;

fn rename(var: usize) -> [Poly3; 3] {
    [Poly3::d(), Poly3::var(var), Poly3::mu()]
}

/// `a_var y` for a generator `a`, using `a_var (d^k x) = (d + var)^k a_var x`.
fn act(prod: Prod, a: &str, var: usize, y: &LambdaPoly) -> Result<LambdaPoly> {
    let shift = &Poly3::d() + &Poly3::var(var);
    let mut out = LambdaPoly::zero();
    for (x, p) in y.terms() {
        let base = prod(a, x)?.subst(&rename(var));
        if base.is_zero() {
            continue;
        }
        for (e, c) in p.terms() {
            let coef = &Poly3::monomial([0, e[1], e[2]], c.clone()) * &shift.pow(e[0]);
            out = &out + &base.mul_poly(&coef);
        }
    }
    Ok(out)
}

/// `x_lambda y` for C[d]-combinations of generators, using
/// `(d^k a)_lambda y = (-lambda)^k a_lambda y`.
fn pair(prod: Prod, x: &LambdaPoly, y: &LambdaPoly) -> Result<LambdaPoly> {
    let mut out = LambdaPoly::zero();
    for (a, p) in x.terms() {
        let ay = act(prod, a, LAM, y)?;
        for (e, c) in p.terms() {
            if e[1] != 0 || e[2] != 0 {
                return Err(ScfError::InvalidArgument("left argument must be a d-polynomial".into()));
            }
            let coef = (-Poly3::lambda()).pow(e[0]).scale(c);
            out = &out + &ay.mul_poly(&coef);
        }
    }
    Ok(out)
}

/// `(a_lambda b)_{lambda+mu} c` for a table value `ab`.
fn compose(prod: Prod, ab: &LambdaPoly, c: &str) -> Result<LambdaPoly> {
    let sum = &Poly3::lambda() + &Poly3::mu();
    let sub = [Poly3::d(), sum.clone(), Poly3::mu()];
    let mut out = LambdaPoly::zero();
    for (x, p) in ab.terms() {
        let base = prod(x, c)?.subst(&sub);
        if base.is_zero() {
            continue;
        }
        for (e, k) in p.terms() {
            let coef = &Poly3::monomial([0, e[1], e[2]], k.clone()) * &(-&sum).pow(e[0]);
            out = &out + &base.mul_poly(&coef);
        }
    }
    Ok(out)
}

/// `a_lambda (b_mu c) - (-1)^{p(a)p(b)} b_mu (a_lambda c) - (a_lambda b)_{lambda+mu} c`.
fn jacobi_defect(alg_prod: Prod, act_prod: Prod, a: &str, b: &str, odd_odd: bool, c: &str) -> Result<LambdaPoly> {
    let gc = LambdaPoly::gen(c);
    let abc = act(act_prod, a, LAM, &act(act_prod, b, MU, &gc)?)?;
    let bac = act(act_prod, b, MU, &act(act_prod, a, LAM, &gc)?)?;
    let lhs = if odd_odd { &abc + &bac } else { &abc - &bac };
    let rhs = compose(act_prod, &alg_prod(a, b)?, c)?;
    Ok(&lhs - &rhs)
}

/// `x_lambda y` in `r` for C[d]-combinations of generators.
pub fn lambda_bracket(r: &ConformalAlgebraSpec, x: &LambdaPoly, y: &LambdaPoly) -> Result<LambdaPoly> {
    pair(&|a, b| r.product(a, b), x, y)
}

/// `x_lambda v` for `x` in `r` and `v` in `m`.
pub fn module_action(
    r: &ConformalAlgebraSpec,
    m: &ConformalModuleSpec,
    x: &LambdaPoly,
    v: &LambdaPoly,
) -> Result<LambdaPoly> {
    for (a, _) in x.terms() {
        r.parity(a)?;
    }
    pair(&|a, b| m.action(a, b), x, v)
}

fn check_parities(rep: &mut Report, table: &Table, pl: &dyn Fn(&str) -> Result<u8>, pr: &dyn Fn(&str) -> Result<u8>) {
    for ((a, b), p) in table {
        rep.checked += 1;
        let want = match (pl(a), pr(b)) {
            (Ok(x), Ok(y)) => (x + y) % 2,
            _ => {
                rep.fail(format!("unknown generator in entry ({a}, {b})"));
                continue;
            }
        };
        for (x, _) in p.terms() {
            if pr(x) != Ok(want) {
                rep.fail(format!("parity of {x} in {a}_lambda {b}"));
            }
        }
    }
}

/// Sesquilinearity, skew-symmetry and the Jacobi identity with formal
/// `lambda`, `mu` on all generator triples, plus parity of every entry.
pub fn check_conformal_axioms(r: &ConformalAlgebraSpec) -> Result<Report> {
    let mut rep = Report::default();
    let par = |x: &str| r.parity(x);
    check_parities(&mut rep, &r.table, &par, &par);
    let prod = |a: &str, b: &str| r.product(a, b);
    let d = Poly3::d();
    for (a, pa) in &r.gens {
        for (b, pb) in &r.gens {
            let ab = r.product(a, b)?;
            rep.checked += 3;
            let da = LambdaPoly::term(a, d.clone());
            let db = LambdaPoly::term(b, d.clone());
            if lambda_bracket(r, &da, &LambdaPoly::gen(b))? != ab.mul_poly(&-Poly3::lambda()) {
                rep.fail(format!("C1: (d{a})_lambda {b}"));
            }
            if lambda_bracket(r, &LambdaPoly::gen(a), &db)? != ab.mul_poly(&(&d + &Poly3::lambda())) {
                rep.fail(format!("C1: {a}_lambda (d{b})"));
            }
            if ab != skew(&r.product(b, a)?, pa * pb == 1) {
                rep.fail(format!("C2: {a}_lambda {b}"));
            }
            for (c, _) in &r.gens {
                rep.checked += 1;
                let defect = jacobi_defect(&prod, &prod, a, b, pa * pb == 1, c)?;
                if !defect.is_zero() {
                    rep.fail(format!("C3: ({a}, {b}, {c}) leaves {}", defect.render()));
                }
            }
        }
    }
    for ((a, b), p) in &r.table {
        rep.checked += 1;
        let odd = r.parity(a)? * r.parity(b)? == 1;
        if skew(&skew(p, odd), odd) != *p {
            rep.fail(format!("C2 twice: {a}_lambda {b}"));
        }
    }
    Ok(rep)
}

/// The module identity `a_lambda (b_mu v) - (-1)^{p(a)p(b)} b_mu (a_lambda v)
/// = (a_lambda b)_{lambda+mu} v` on all generators, sesquilinearity, and
/// parity of every entry.
pub fn check_module_axioms(r: &ConformalAlgebraSpec, m: &ConformalModuleSpec) -> Result<Report> {
    let mut rep = Report::default();
    let pl = |x: &str| r.parity(x);
    let pr = |x: &str| m.parity(x);
    check_parities(&mut rep, &m.action, &pl, &pr);
    let alg_prod = |a: &str, b: &str| r.product(a, b);
    let act_prod = |a: &str, v: &str| m.action(a, v);
    let d = Poly3::d();
    for (a, pa) in &r.gens {
        for (v, _) in &m.gens {
            let av = m.action(a, v)?;
            rep.checked += 2;
            if module_action(r, m, &LambdaPoly::term(a, d.clone()), &LambdaPoly::gen(v))? != av.mul_poly(&-Poly3::lambda())
            {
                rep.fail(format!("M2: (d{a})_lambda {v}"));
            }
            if module_action(r, m, &LambdaPoly::gen(a), &LambdaPoly::term(v, d.clone()))?
                != av.mul_poly(&(&d + &Poly3::lambda()))
            {
                rep.fail(format!("M2: {a}_lambda (d{v})"));
            }
            for (b, pb) in &r.gens {
                rep.checked += 1;
                let defect = jacobi_defect(&alg_prod, &act_prod, a, b, pa * pb == 1, v)?;
                if !defect.is_zero() {
                    rep.fail(format!("M1: ({a}, {b}, {v}) leaves {}", defect.render()));
                }
            }
        }
    }
    Ok(rep)
}

/// `r` acting on itself.
pub fn adjoint_module(r: &ConformalAlgebraSpec) -> Result<ConformalModuleSpec> {
    let c = r.completed()?;
    Ok(ConformalModuleSpec { name: format!("adjoint {}", r.name), gens: c.gens, params: BTreeMap::new(), action: c.table })
}

fn s(x: &str) -> Scalar {
    x.parse().expect("valid constant")
}

fn k(x: &str) -> Poly3 {
    Poly3::constant(s(x))
}

fn alpha() -> Scalar {
    s("alpha")
}

fn lp(terms: &[(&str, Poly3)]) -> LambdaPoly {
    let mut r = LambdaPoly::zero();
    for (x, p) in terms {
        r.add_poly(x, p);
    }
    r
}

/// `L_lambda L = (d + 2 lambda) L`.
pub fn virasoro() -> ConformalAlgebraSpec {
    let mut r = ConformalAlgebraSpec::new("Virasoro", &[("L", 0)]);
    r.set("L", "L", lp(&[("L", Poly3::d() + k("2") * Poly3::lambda())]));
    r
}

/// The current algebra `C[d] (x) sl2` with `a_lambda b = [a, b]`.
pub fn current_sl2() -> ConformalAlgebraSpec {
    let mut r = ConformalAlgebraSpec::new("Cur sl2", &[("H", 0), ("E", 0), ("F", 0)]);
    r.set("H", "E", lp(&[("E", k("2"))]));
    r.set("H", "F", lp(&[("F", k("-2"))]));
    r.set("E", "F", lp(&[("H", Poly3::one())]));
    r
}

/// Virasoro plus `r`, with `L_lambda a = (d + lambda) a` on every generator of `r`.
pub fn semidirect(r: &ConformalAlgebraSpec) -> ConformalAlgebraSpec {
    let mut out = virasoro();
    out.name = format!("Virasoro + {}", r.name);
    out.gens.extend(r.gens.iter().cloned());
    out.table.extend(r.table.clone());
    for (a, _) in &r.gens {
        out.set("L", a, lp(&[(a, Poly3::d() + Poly3::lambda())]));
    }
    out
}

/// The N=2 conformal superalgebra on `L, J, Gp, Gm`.
pub fn n2() -> ConformalAlgebraSpec {
    let (d, l) = (Poly3::d(), Poly3::lambda());
    let mut r = ConformalAlgebraSpec::new("N=2", &[("L", 0), ("J", 0), ("Gp", 1), ("Gm", 1)]);
    r.set("L", "L", lp(&[("L", &d + &(k("2") * l.clone()))]));
    r.set("L", "J", lp(&[("J", &d + &l)]));
    r.set("L", "Gp", lp(&[("Gp", &d + &(k("3/2") * l.clone()))]));
    r.set("L", "Gm", lp(&[("Gm", &d + &(k("3/2") * l.clone()))]));
    r.set("J", "Gp", lp(&[("Gp", Poly3::one())]));
    r.set("J", "Gm", lp(&[("Gm", k("-1"))]));
    r.set("Gp", "Gm", lp(&[("J", &d + &(k("2") * l)), ("L", k("2"))]));
    r
}

fn with_params(mut m: ConformalModuleSpec, ps: &[(&str, &str)]) -> ConformalModuleSpec {
    for (p, v) in ps {
        m.params.insert(p.to_string(), s(v));
    }
    m
}

/// `F(alpha, Delta)`: `L_lambda v = (alpha + d + Delta lambda) v`.
pub fn virasoro_module() -> ConformalModuleSpec {
    let mut m = ConformalModuleSpec::new("F(alpha,Delta)", &[("v", 0)]);
    m.set("L", "v", lp(&[("v", Poly3::d() + k("alpha") + k("Delta") * Poly3::lambda())]));
    with_params(m, &[("alpha", "alpha"), ("Delta", "Delta")])
}

/// N=2 module free on `v, v+, v-, v+-` (the case `2 Delta +- Lambda != 0`).
pub fn n2_module_rank4() -> ConformalModuleSpec {
    let (d, l) = (Poly3::d(), Poly3::lambda());
    let base = |c: &str| &(&d + &k("alpha")) + &(k(c) * l.clone());
    let twod = k("2") * d.clone() + k("2*alpha");
    let mut m = ConformalModuleSpec::new("N=2 rank 4", &[("v", 0), ("v+", 1), ("v-", 1), ("v+-", 0)]);
    m.set("L", "v", lp(&[("v", base("Delta"))]));
    m.set("L", "v+", lp(&[("v+", base("Delta + 1/2"))]));
    m.set("L", "v-", lp(&[("v-", base("Delta + 1/2"))]));
    m.set("L", "v+-", lp(&[("v+-", base("Delta + 1")), ("v", k("Delta + LambdaSym/2") * l.pow(2))]));
    m.set("J", "v", lp(&[("v", k("LambdaSym"))]));
    m.set("J", "v+", lp(&[("v+", k("LambdaSym + 1"))]));
    m.set("J", "v-", lp(&[("v-", k("LambdaSym - 1"))]));
    m.set("J", "v+-", lp(&[("v+-", k("LambdaSym")), ("v", k("2*Delta + LambdaSym") * l.clone())]));
    m.set("Gp", "v", lp(&[("v+", Poly3::one())]));
    m.set("Gm", "v", lp(&[("v-", Poly3::one())]));
    m.set("Gp", "v-", lp(&[("v+-", Poly3::one()), ("v", k("2*Delta + LambdaSym") * l.clone())]));
    m.set("Gp", "v+-", lp(&[("v+", k("-2*Delta - LambdaSym") * l.clone())]));
    m.set("Gm", "v+", lp(&[("v", &twod + &(k("2*Delta - LambdaSym") * l.clone())), ("v+-", k("-1"))]));
    m.set("Gm", "v+-", lp(&[("v-", &twod + &(k("2*Delta + 2 - LambdaSym") * l))]));
    with_params(m, &[("alpha", "alpha"), ("Delta", "Delta"), ("Lambda", "LambdaSym")])
}

/// N=2 module free on `v, v+` (the case `2 Delta + Lambda = 0`).
pub fn n2_module_2d_plus_l() -> ConformalModuleSpec {
    let (d, l) = (Poly3::d(), Poly3::lambda());
    let base = |c: &str| &(&d + &k("alpha")) + &(k(c) * l.clone());
    let mut m = ConformalModuleSpec::new("N=2 2Delta+Lambda=0", &[("v", 0), ("v+", 1)]);
    m.set("L", "v", lp(&[("v", base("Delta"))]));
    m.set("L", "v+", lp(&[("v+", base("Delta + 1/2"))]));
    m.set("J", "v", lp(&[("v", k("-2*Delta"))]));
    m.set("J", "v+", lp(&[("v+", k("-2*Delta + 1"))]));
    m.set("Gp", "v", lp(&[("v+", Poly3::one())]));
    m.set("Gm", "v+", lp(&[("v", k("2") * d.clone() + k("2*alpha") + k("4*Delta") * l.clone())]));
    with_params(m, &[("alpha", "alpha"), ("Delta", "Delta"), ("Lambda", "-2*Delta")])
}

/// N=2 module free on `v, v-` (the case `2 Delta - Lambda = 0`).
pub fn n2_module_2d_minus_l() -> ConformalModuleSpec {
    let (d, l) = (Poly3::d(), Poly3::lambda());
    let base = |c: &str| &(&d + &k("alpha")) + &(k(c) * l.clone());
    let mut m = ConformalModuleSpec::new("N=2 2Delta-Lambda=0", &[("v", 0), ("v-", 1)]);
    m.set("L", "v", lp(&[("v", base("Delta"))]));
    m.set("L", "v-", lp(&[("v-", base("Delta + 1/2"))]));
    m.set("J", "v", lp(&[("v", k("2*Delta"))]));
    m.set("J", "v-", lp(&[("v-", k("2*Delta - 1"))]));
    m.set("Gp", "v-", lp(&[("v", k("2") * d.clone() + k("2*alpha") + k("4*Delta") * l.clone())]));
    m.set("Gm", "v", lp(&[("v-", Poly3::one())]));
    with_params(m, &[("alpha", "alpha"), ("Delta", "Delta"), ("Lambda", "2*Delta")])
}

/// `X_(n)`: the mode of `X` whose generating series coefficient is `lambda^n/n!`.
pub fn nth_mode(g: Gen, n: i32) -> GenMode {
    GenMode::new(g, 2 * n - g.w2() + 2)
}

fn factorial(n: u32) -> Scalar {
    Scalar::from_int((1..=n as i64).product())
}

fn over_factorial(c: &Scalar, n: u32) -> Scalar {
    c.checked_div(&factorial(n)).expect("nonzero factorial")
}

/// Generators read as conformal fields. The big N=4 generator modes do not
/// close into fields over C[d] (brackets leave their span), so it is refused.
fn field_gens(alg: AlgebraId) -> Result<Vec<Gen>> {
    if alg == AlgebraId::BigN4 {
        return Err(ScfError::InvalidArgument("big N=4 generators are not a C[d]-basis of conformal fields".into()));
    }
    Ok(alg.gens().to_vec())
}

/// Products read off the mode brackets: `a_(j) b` corresponds to
/// `[a_(j), b_(-1)]` modulo the annihilation subalgebra, with `c_(-1-k)`
/// read as `d^k c / k!`.
pub fn conformal_algebra_from_modes(alg: AlgebraId) -> Result<ConformalAlgebraSpec> {
    let gens = field_gens(alg)?;
    let labels: Vec<(&str, u8)> = gens.iter().map(|g| (g.token(), g.parity())).collect();
    let mut r = ConformalAlgebraSpec::new(alg.display_name(), &labels);
    for &a in &gens {
        for &b in &gens {
            let mut p = LambdaPoly::zero();
            let y = nth_mode(b, -1);
            for j in 0..=8u32 {
                let x = nth_mode(a, j as i32);
                for (gm, c) in bracket(alg, x, y)?.iter() {
                    if gm.in_annihilation() {
                        continue;
                    }
                    if gm.canonical() != *gm || gm.gen.is_barred() && !gens.contains(&gm.gen) {
                        return Err(ScfError::NotExpressible(format!("{gm} in [{x}, {y}]")));
                    }
                    let n = (gm.mode2 + gm.gen.w2() - 2) / 2;
                    let kk = (-1 - n) as u32;
                    let coef = over_factorial(&over_factorial(c, j), kk);
                    p.add_poly(gm.gen.token(), &Poly3::monomial([kk, j, 0], coef));
                }
            }
            if !p.is_zero() {
                r.set(a.token(), b.token(), p);
            }
        }
    }
    Ok(r)
}

fn shift(v: &VVec, k: u32) -> VVec {
    v.iter().map(|(key, c)| (PBWKey::new(key.dpow + k, key.odd, key.wt), c.clone())).collect()
}

fn split_levels(v: &VVec) -> BTreeMap<i32, VVec> {
    let mut out: BTreeMap<i32, VVec> = BTreeMap::new();
    for (k, c) in v {
        out.entry(k.level2()).or_default().insert(*k, c.clone());
    }
    out
}

fn level_of(v: &VVec) -> Result<i32> {
    let ls = split_levels(v);
    match ls.keys().collect::<Vec<_>>()[..] {
        [l] => Ok(*l),
        _ => Err(ScfError::InvalidArgument("module generators must be homogeneous and nonzero".into())),
    }
}

struct Decomposer<'a> {
    m: &'a VermaModule,
    n: &'a GradedSubspace,
    gens: Vec<(String, i32, VVec)>,
}

impl Decomposer<'_> {
    /// Writes `v` modulo `n` as a C[d]-combination of the generators.
    fn decompose(&self, v: &VVec) -> Result<LambdaPoly> {
        let mut out = LambdaPoly::zero();
        for (l, piece) in split_levels(v) {
            let ech = self
                .n
                .levels
                .get(l as usize)
                .ok_or_else(|| ScfError::InvalidArgument(format!("level {l}/2 is above the cutoff")))?;
            let target = ech.reduce(&piece);
            if target.is_empty() {
                continue;
            }
            let mut cols = Vec::new();
            let mut which = Vec::new();
            for (label, lg, g) in &self.gens {
                if *lg <= l && (l - lg) % 2 == 0 {
                    let k = ((l - lg) / 2) as u32;
                    cols.push(ech.reduce(&shift(g, k)));
                    which.push((label, k));
                }
            }
            let xs = solve_columns(&cols, &target)
                .ok_or_else(|| ScfError::NotExpressible(format!("{} modulo the submodule", self.m.render(&piece))))?;
            for ((label, k), c) in which.into_iter().zip(xs) {
                out.add_poly(label, &Poly3::monomial([k, 0, 0], c));
            }
        }
        Ok(out)
    }
}

/// Action table of `M/N` on the given C[d]-basis, from
/// `X_lambda w = sum_n lambda^n/n! X_(n) w`, twisted by `d -> d + alpha`.
pub fn conformal_module_from_pbw(
    m: &VermaModule,
    n: &GradedSubspace,
    gens: &[(String, VVec)],
    name: &str,
) -> Result<ConformalModuleSpec> {
    let mut dec = Decomposer { m, n, gens: Vec::new() };
    let mut labels = Vec::new();
    for (label, g) in gens {
        let l = level_of(g)?;
        let p = g.keys().next().map_or(0, |k| k.parity());
        dec.gens.push((label.clone(), l, g.clone()));
        labels.push((label.clone(), p));
    }
    let mut spec = ConformalModuleSpec {
        name: name.into(),
        gens: labels,
        params: BTreeMap::new(),
        action: Table::new(),
    };
    spec.params.insert("Delta".into(), m.hw.delta.clone());
    spec.params.insert("Lambda".into(), m.hw.lambda.clone());
    if let Some(b) = m.hw.lambda_bar {
        spec.params.insert("Lambda_bar".into(), Scalar::from_int(b as i64));
    }
    for a in field_gens(m.alg)? {
        for (label, lg, g) in &dec.gens {
            let mut p = LambdaPoly::zero();
            for j in 0.. {
                let x = nth_mode(a, j);
                if x.mode2 > *lg {
                    break;
                }
                let r = m.act(x, g)?;
                if r.is_empty() {
                    continue;
                }
                let lam = Poly3::monomial([0, j as u32, 0], over_factorial(&Scalar::one(), j as u32));
                p = &p + &dec.decompose(&r)?.mul_poly(&lam);
            }
            if !p.is_zero() {
                spec.action.insert((a.token().to_string(), label.clone()), p);
            }
        }
    }
    Ok(spec.twist_alpha())
}

/// Label of a PBW key, e.g. `Gp Gm v` or `F0^2 v`.
pub fn key_label(m: &VermaModule, k: PBWKey) -> String {
    let r = m.render(&vvec_key(k));
    r.strip_prefix("(1)*").unwrap_or(&r).to_string()
}

/// The action table of the irreducible quotient at a parameter point, on the
/// PBW-key generators of the quotient.
pub fn generated_module(alg: AlgebraId, hw: HighestWeight, cutoff2: i32) -> Result<ConformalModuleSpec> {
    let m = build_module(alg, hw)?;
    let n = maximal_submodule(&m, cutoff2)?;
    let gens: Vec<(String, VVec)> = quotient_generators(&m, &n)
        .into_iter()
        .map(|(_, v)| {
            let k = *v.keys().next().expect("nonzero generator");
            (key_label(&m, k), v)
        })
        .collect();
    let name = format!("{} irreducible quotient", alg.display_name());
    conformal_module_from_pbw(&m, &n, &gens, &name)
}

/// Result of matching an irreducible quotient with `g / g_+`.
#[derive(Clone, Debug, Serialize)]
pub struct AdjointReport {
    pub algebra: String,
    pub delta: String,
    pub lambda: i64,
    pub element: String,
    pub highest_weight: bool,
    pub kills_submodule: bool,
    /// `(level2, rank of the map, dim of the quotient, dim of g/g_+)`.
    pub levels: Vec<(i32, usize, usize, usize)>,
}

impl AdjointReport {
    pub fn ok(&self) -> bool {
        self.highest_weight && self.kills_submodule && self.levels.iter().all(|(_, r, q, g)| r == q && q == g)
    }
}

fn ad_mod(alg: AlgebraId, x: GenMode, e: &AlgElement) -> Result<AlgElement> {
    let full = bracket_elements(alg, &AlgElement::gen(x), e)?;
    let mut r = AlgElement::zero();
    for (g, c) in full.iter() {
        if !g.in_annihilation() {
            r.add_term(c.clone(), *g);
        }
    }
    Ok(r)
}

fn key_word(m: &VermaModule, k: PBWKey) -> Vec<GenMode> {
    let mut w = vec![GenMode::DEL; k.dpow as usize];
    for (i, g) in m.odd_gens().iter().enumerate() {
        if k.odd & (1 << i) != 0 {
            w.push(*g);
        }
    }
    w.extend(std::iter::repeat_n(GenMode::new(Gen::F, 0), k.wt.0 as usize));
    w.extend(std::iter::repeat_n(GenMode::new(Gen::FB, 0), k.wt.1 as usize));
    w
}

fn as_vec(e: &AlgElement) -> SparseVec<GenMode> {
    e.iter().map(|(g, c)| (*g, c.clone())).collect()
}

/// Checks that `v -> h` extends to a map from the Verma module onto
/// `g / g_+` whose kernel is exactly the maximal submodule, level by level
/// below the cutoff.
pub fn adjoint_identification(
    alg: AlgebraId,
    delta: Scalar,
    lam: i64,
    h: GenMode,
    cutoff2: i32,
) -> Result<AdjointReport> {
    let m = build_module(alg, HighestWeight::new(delta.clone(), lam))?;
    let n = maximal_submodule(&m, cutoff2)?;
    let he = AlgElement::gen(h);
    let mut hw = true;
    for x in genmodes(alg, 1, 4) {
        hw &= ad_mod(alg, x, &he)?.is_zero();
    }
    let cartan = if alg == AlgebraId::N2 { Gen::J } else { Gen::H };
    hw &= ad_mod(alg, GenMode::new(Gen::L, 0), &he)? == he.scale(&delta);
    hw &= ad_mod(alg, GenMode::new(cartan, 0), &he)? == he.scale(&Scalar::from_int(lam));
    if alg.has_sl2() {
        hw &= ad_mod(alg, GenMode::new(Gen::E, 0), &he)?.is_zero();
        let mut e = he.clone();
        for _ in 0..=lam {
            e = ad_mod(alg, GenMode::new(Gen::F, 0), &e)?;
        }
        hw &= e.is_zero();
    }
    let vac = vvec_key(PBWKey::VACUUM);
    let mut phi_memo: BTreeMap<PBWKey, SparseVec<GenMode>> = BTreeMap::new();
    let mut phi_key = |k: PBWKey| -> Result<SparseVec<GenMode>> {
        if let Some(r) = phi_memo.get(&k) {
            return Ok(r.clone());
        }
        let word = key_word(&m, k);
        if m.act_word(&word, &vac)? != vvec_key(k) {
            return Err(ScfError::InvalidArgument(format!("PBW word of {} does not match its key", key_label(&m, k))));
        }
        let mut e = he.clone();
        for g in word.iter().rev() {
            e = ad_mod(alg, *g, &e)?;
        }
        let r = as_vec(&e);
        phi_memo.insert(k, r.clone());
        Ok(r)
    };
    let two_delta = (&delta * &Scalar::from_int(2))
        .to_i64()
        .ok_or_else(|| ScfError::InvalidArgument("2 Delta must be an integer".into()))?;
    let mut kills = true;
    let mut levels = Vec::new();
    for l in 0..=cutoff2 - 2 {
        let keys = m.keys_at_level(l);
        let mut img: Echelon<GenMode> = Echelon::new();
        for &k in &keys {
            img.insert(&phi_key(k)?);
        }
        for b in n.levels[l as usize].basis() {
            let mut acc = SparseVec::new();
            for (k, c) in b {
                crate::linalg::axpy(&mut acc, c, &phi_key(*k)?);
            }
            kills &= acc.is_empty();
        }
        let gdim = basis_at(alg, -(two_delta + l as i64) as i32).iter().filter(|g| !g.in_annihilation()).count();
        levels.push((l, img.dim(), keys.len() - n.dim(l), gdim));
    }
    Ok(AdjointReport {
        algebra: alg.token().into(),
        delta: delta.render(),
        lambda: lam,
        element: h.to_string(),
        highest_weight: hw,
        kills_submodule: kills,
        levels,
    })
}
