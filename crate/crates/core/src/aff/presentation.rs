//! Generators, words and the defining relations of `Aff^m(S_ℓ)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `S(k)` is `σ_k`; `Y { loop_, r }` is `y_{loop_, r}`. Both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    S(usize),
    Y { loop_: usize, r: usize },
}

impl Generator {
    pub fn y(loop_: usize, r: usize) -> Self {
        Generator::Y { loop_, r }
    }

    pub fn label(&self) -> String {
        self.to_string()
    }

    pub fn letter(self) -> Letter {
        Letter { gen: self, inv: false }
    }

    pub fn inv(self) -> Letter {
        Letter { gen: self, inv: true }
    }

    pub fn is_valid(&self, m: usize, ell: usize) -> bool {
        match *self {
            Generator::S(k) => k >= 1 && k < ell,
            Generator::Y { loop_, r } => (1..=m).contains(&loop_) && (1..=ell).contains(&r),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::S(k) => write!(f, "s{k}"),
            Generator::Y { loop_, r } => write!(f, "y.{loop_}.{r}"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown generator label {s:?}"));
        if let Some(k) = s.strip_prefix('s') {
            return k.parse().map(Generator::S).map_err(|_| bad());
        }
        let rest = s.strip_prefix("y.").ok_or_else(bad)?;
        let (i, r) = rest.split_once('.').ok_or_else(bad)?;
        Ok(Generator::Y {
            loop_: i.parse().map_err(|_| bad())?,
            r: r.parse().map_err(|_| bad())?,
        })
    }
}

impl Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub inv: bool,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inv {
            write!(f, "{}^-1", self.gen)
        } else {
            write!(f, "{}", self.gen)
        }
    }
}

pub type Word = Vec<Letter>;

pub fn word_to_string(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Which family of defining relations a relation belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationFamily {
    SigmaInverse,
    Braid,
    FarCommutation,
    SigmaInvolution,
    YInverse,
    YCommute,
    YSigmaCommute,
    SigmaConjugation,
    CrossProduct,
    CrossSecond,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub family: RelationFamily,
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    fn new(family: RelationFamily, lhs: Word, rhs: Word) -> Self {
        Relation { family, lhs, rhs }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", word_to_string(&self.lhs), word_to_string(&self.rhs))
    }
}

/// The presentation of `Aff^m(S_ℓ)`; for `m = 1` this is the affine
/// symmetric group algebra and for `m = 2` its two-loop version.
#[derive(Clone, Debug)]
pub struct AffPresentation {
    pub m: usize,
    pub ell: usize,
    pub relations: Vec<Relation>,
}

impl AffPresentation {
    pub fn new(m: usize, ell: usize) -> Result<Self> {
        if m == 0 || ell == 0 {
            return Err(Error::InvalidArgument(format!(
                "need m ≥ 1 and ℓ ≥ 1, got m={m}, ℓ={ell}"
            )));
        }
        Ok(AffPresentation {
            m,
            ell,
            relations: relations(m, ell),
        })
    }

    pub fn generators(&self) -> Vec<Generator> {
        generators(self.m, self.ell)
    }
}

pub fn generators(m: usize, ell: usize) -> Vec<Generator> {
    let mut out: Vec<Generator> = (1..ell).map(Generator::S).collect();
    for i in 1..=m {
        out.extend((1..=ell).map(|r| Generator::y(i, r)));
    }
    out
}

fn relations(m: usize, ell: usize) -> Vec<Relation> {
    use RelationFamily::*;
    let s = |k| Generator::S(k).letter();
    let si = |k| Generator::S(k).inv();
    let y = |i, r| Generator::y(i, r).letter();
    let yi = |i, r| Generator::y(i, r).inv();
    let mut out = Vec::new();

    for k in 1..ell {
        out.push(Relation::new(SigmaInverse, vec![s(k), si(k)], vec![]));
        out.push(Relation::new(SigmaInverse, vec![si(k), s(k)], vec![]));
    }
    for k in 1..ell.saturating_sub(1) {
        out.push(Relation::new(
            Braid,
            vec![s(k), s(k + 1), s(k)],
            vec![s(k + 1), s(k), s(k + 1)],
        ));
    }
    for k in 1..ell {
        for j in k + 2..ell {
            out.push(Relation::new(FarCommutation, vec![s(k), s(j)], vec![s(j), s(k)]));
        }
    }
    for k in 1..ell {
        out.push(Relation::new(SigmaInvolution, vec![s(k), s(k)], vec![]));
    }
    for i in 1..=m {
        for r in 1..=ell {
            out.push(Relation::new(YInverse, vec![y(i, r), yi(i, r)], vec![]));
            out.push(Relation::new(YInverse, vec![yi(i, r), y(i, r)], vec![]));
        }
        for a in 1..=ell {
            for b in a + 1..=ell {
                out.push(Relation::new(YCommute, vec![y(i, a), y(i, b)], vec![y(i, b), y(i, a)]));
            }
        }
        for r in 1..=ell {
            for k in 1..ell {
                if r != k && r != k + 1 {
                    out.push(Relation::new(
                        YSigmaCommute,
                        vec![y(i, r), s(k)],
                        vec![s(k), y(i, r)],
                    ));
                }
            }
        }
        for k in 1..ell {
            out.push(Relation::new(
                SigmaConjugation,
                vec![s(k), y(i, k), s(k)],
                vec![y(i, k + 1)],
            ));
        }
    }
    for i in 1..=m {
        for i2 in 1..=m {
            if i == i2 {
                continue;
            }
            let prod: Word = (1..=ell).map(|r| y(i, r)).collect();
            let mut lhs = prod.clone();
            lhs.push(y(i2, 1));
            let mut rhs = vec![y(i2, 1)];
            rhs.extend(prod);
            out.push(Relation::new(CrossProduct, lhs, rhs));
            if ell >= 2 {
                out.push(Relation::new(
                    CrossSecond,
                    vec![y(i2, 1), y(i, 2)],
                    vec![y(i, 2), y(i2, 1)],
                ));
            }
        }
    }
    out
}
