//! Generator alphabets, mode bookkeeping and algebra elements.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ScfError};
use crate::exactfield::Scalar;
use crate::linalg::{axpy, SparseVec};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum AlgebraId {
    N2,
    N3,
    SmallN4 { beta: i8 },
    BigN4,
}

impl AlgebraId {
    pub fn small(beta: i8) -> Self {
        AlgebraId::SmallN4 { beta }
    }

    /// Number of odd Grassmann variables of the realization.
    pub fn grassmann_n(self) -> u8 {
        match self {
            AlgebraId::N2 => 2,
            AlgebraId::N3 => 3,
            _ => 4,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            AlgebraId::N2 => "n2",
            AlgebraId::N3 => "n3",
            AlgebraId::SmallN4 { beta: -1 } => "sn4m",
            AlgebraId::SmallN4 { .. } => "sn4",
            AlgebraId::BigN4 => "bn4",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            AlgebraId::N2 => "N2",
            AlgebraId::N3 => "N3",
            AlgebraId::SmallN4 { beta: -1 } => "SmallN4(beta=-1)",
            AlgebraId::SmallN4 { .. } => "SmallN4",
            AlgebraId::BigN4 => "BigN4",
        }
    }

    pub fn from_token(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "n2" => AlgebraId::N2,
            "n3" => AlgebraId::N3,
            "sn4" | "smalln4" | "small-n4" => AlgebraId::small(1),
            "sn4m" | "smalln4m" | "small-n4-m" => AlgebraId::small(-1),
            "bn4" | "bign4" | "big-n4" => AlgebraId::BigN4,
            _ => return Err(ScfError::Parse(format!("unknown algebra `{s}`"))),
        })
    }

    /// Generator alphabet, unbarred first.
    pub fn gens(self) -> &'static [Gen] {
        use Gen::*;
        match self {
            AlgebraId::N2 => &[L, J, Gp, Gm],
            AlgebraId::N3 => &[L, H, E, F, SH, SE, SF, Psi],
            AlgebraId::SmallN4 { .. } => &[L, H, E, F, Gpp, Gmp, Gpm, Gmm],
            AlgebraId::BigN4 => &[
                L, H, E, F, Gpp, Gmp, Gpm, Gmm, LB, HB, EB, FB, GppB, GmpB, GpmB, GmmB,
            ],
        }
    }

    /// Negative odd generators at mode -1/2 in PBW order.
    pub fn negative_odd(self) -> Vec<GenMode> {
        use Gen::*;
        let g: &[Gen] = match self {
            AlgebraId::N2 => &[Gp, Gm],
            AlgebraId::N3 => &[SE, SH, SF],
            _ => &[Gpp, Gpm, Gmp, Gmm],
        };
        g.iter().map(|&g| GenMode::new(g, -1)).collect()
    }

    pub fn has_sl2(self) -> bool {
        !matches!(self, AlgebraId::N2)
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.display_name())
    }
}

/// Generator labels. `S*` are the lowercase N3 odd currents, `*B` barred copies.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Gen {
    L,
    J,
    Gp,
    Gm,
    H,
    E,
    F,
    SH,
    SE,
    SF,
    Psi,
    Gpp,
    Gmp,
    Gpm,
    Gmm,
    LB,
    HB,
    EB,
    FB,
    GppB,
    GmpB,
    GpmB,
    GmmB,
}

const TOKENS: [(Gen, &str); 23] = [
    (Gen::L, "L"),
    (Gen::J, "J"),
    (Gen::Gp, "Gp"),
    (Gen::Gm, "Gm"),
    (Gen::H, "H"),
    (Gen::E, "E"),
    (Gen::F, "F"),
    (Gen::SH, "h"),
    (Gen::SE, "e"),
    (Gen::SF, "f"),
    (Gen::Psi, "Psi"),
    (Gen::Gpp, "Gpp"),
    (Gen::Gmp, "Gmp"),
    (Gen::Gpm, "Gpm"),
    (Gen::Gmm, "Gmm"),
    (Gen::LB, "L_bar"),
    (Gen::HB, "H_bar"),
    (Gen::EB, "E_bar"),
    (Gen::FB, "F_bar"),
    (Gen::GppB, "Gpp_bar"),
    (Gen::GmpB, "Gmp_bar"),
    (Gen::GpmB, "Gpm_bar"),
    (Gen::GmmB, "Gmm_bar"),
];

impl Gen {
    pub fn token(self) -> &'static str {
        TOKENS.iter().find(|(g, _)| *g == self).map(|(_, t)| *t).unwrap()
    }

    pub fn from_token(s: &str) -> Result<Self> {
        TOKENS
            .iter()
            .find(|(_, t)| *t == s)
            .map(|(g, _)| *g)
            .ok_or_else(|| ScfError::Parse(format!("unknown generator `{s}`")))
    }

    /// Twice the conformal weight.
    pub fn w2(self) -> i32 {
        use Gen::*;
        match self {
            L | LB => 4,
            J | H | E | F | HB | EB | FB => 2,
            Psi => 1,
            _ => 3,
        }
    }

    pub fn parity(self) -> u8 {
        (self.w2() % 2) as u8
    }

    pub fn is_barred(self) -> bool {
        self >= Gen::LB
    }

    pub fn bar(self) -> Gen {
        use Gen::*;
        match self {
            L => LB,
            H => HB,
            E => EB,
            F => FB,
            Gpp => GppB,
            Gmp => GmpB,
            Gpm => GpmB,
            Gmm => GmmB,
            g => g,
        }
    }

    pub fn unbar(self) -> Gen {
        use Gen::*;
        match self {
            LB => L,
            HB => H,
            EB => E,
            FB => F,
            GppB => Gpp,
            GmpB => Gmp,
            GpmB => Gpm,
            GmmB => Gmm,
            g => g,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl From<Gen> for String {
    fn from(g: Gen) -> String {
        g.token().to_string()
    }
}

impl TryFrom<String> for Gen {
    type Error = ScfError;
    fn try_from(s: String) -> Result<Gen> {
        Gen::from_token(&s)
    }
}

impl Serialize for Gen {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.token())
    }
}

impl<'de> Deserialize<'de> for Gen {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Gen, D::Error> {
        let s = String::deserialize(d)?;
        Gen::from_token(&s).map_err(serde::de::Error::custom)
    }
}

/// A generator at a mode; `mode2` is twice the mode index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct GenMode {
    pub gen: Gen,
    pub mode2: i32,
}

impl GenMode {
    pub const fn new(gen: Gen, mode2: i32) -> Self {
        GenMode { gen, mode2 }
    }

    /// `d = L_{-1}`.
    pub const DEL: GenMode = GenMode::new(Gen::L, -2);

    pub fn parity(self) -> u8 {
        self.gen.parity()
    }

    /// Annihilation subalgebra membership: the realization has no negative t-power.
    pub fn in_annihilation(self) -> bool {
        self.mode2 >= 2 - self.gen.w2()
    }

    /// Identifies overlapping big N=4 generators with their unbarred names.
    pub fn canonical(self) -> Self {
        if !self.gen.is_barred() {
            return self;
        }
        let identified = match self.gen {
            Gen::LB => self.mode2 == -2 || self.mode2 == 0,
            Gen::GppB | Gen::GmpB | Gen::GpmB | Gen::GmmB => self.mode2 == -1,
            _ => false,
        };
        if identified {
            GenMode::new(self.gen.unbar(), self.mode2)
        } else {
            self
        }
    }

    pub fn validate(self, alg: AlgebraId) -> Result<()> {
        if !alg.gens().contains(&self.gen) {
            return Err(ScfError::InvalidGenerator(format!("{self} is not a generator of {alg}")));
        }
        if (self.mode2 - self.gen.w2()).rem_euclid(2) != 0 {
            return Err(ScfError::InvalidGenerator(format!("{self}: mode has the wrong integrality")));
        }
        Ok(())
    }

    pub fn mode_string(self) -> String {
        if self.mode2 % 2 == 0 {
            format!("{}", self.mode2 / 2)
        } else {
            format!("{}/2", self.mode2)
        }
    }
}

impl fmt::Display for GenMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.gen, self.mode_string())
    }
}

impl FromStr for GenMode {
    type Err = ScfError;
    fn from_str(s: &str) -> Result<Self> {
        let (g, m) = s
            .split_once(':')
            .ok_or_else(|| ScfError::Parse(format!("expected NAME:mode, got `{s}`")))?;
        let gen = Gen::from_token(g.trim())?;
        let m = m.trim();
        let mode2 = match m.split_once('/') {
            Some((p, "2")) => p.trim().parse::<i32>().map_err(|_| ScfError::Parse(format!("bad mode `{m}`")))?,
            Some((p, "1")) | Some((p, "")) if !p.is_empty() => {
                2 * p.trim().parse::<i32>().map_err(|_| ScfError::Parse(format!("bad mode `{m}`")))?
            }
            Some(_) => return Err(ScfError::Parse(format!("mode must be an integer or half-integer: `{m}`"))),
            None => 2 * m.parse::<i32>().map_err(|_| ScfError::Parse(format!("bad mode `{m}`")))?,
        };
        Ok(GenMode::new(gen, mode2))
    }
}

/// Graded degree (doubled) and parity.
pub fn grade_parity(alg: AlgebraId, g: GenMode) -> Result<(i32, u8)> {
    g.validate(alg)?;
    Ok((g.mode2, g.parity()))
}

/// Finite linear combination of generators.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AlgElement {
    pub terms: SparseVec<GenMode>,
}

impl AlgElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn gen(g: GenMode) -> Self {
        Self::term(Scalar::one(), g)
    }

    pub fn term(c: Scalar, g: GenMode) -> Self {
        let mut e = Self::zero();
        e.add_term(c, g);
        e
    }

    pub fn add_term(&mut self, c: Scalar, g: GenMode) {
        let g = g.canonical();
        let mut t = BTreeMap::new();
        t.insert(g, c);
        axpy(&mut self.terms, &Scalar::one(), &t);
    }

    pub fn axpy(&mut self, a: &Scalar, x: &AlgElement) {
        axpy(&mut self.terms, a, &x.terms);
    }

    pub fn scale(&self, a: &Scalar) -> Self {
        let mut r = Self::zero();
        r.axpy(a, self);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GenMode, &Scalar)> {
        self.terms.iter()
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (g, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_lead();
            let a = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !a.is_one() {
                let s = a.render();
                if s.contains([' ', '+', '-']) && !s.starts_with('(') {
                    out.push_str(&format!("({s})*"));
                } else {
                    out.push_str(&format!("{s}*"));
                }
            }
            out.push_str(&g.to_string());
        }
        out
    }
}

impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
