//! Concrete modules used as inputs throughout the test batteries.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::module::AffModule;
use super::presentation::Generator;
use crate::error::{Error, Result};
use crate::exact::{RatMatrix, Rational};
use crate::symgroup::Permutation;

/// Basis `e_τ` (τ ∈ S_ℓ, lexicographic), `e_τ.σ = e_{τσ}` and
/// `e_τ.y_{i,r} = a^{(i)}_{τ(r)} e_τ`.
pub fn evaluation_module(params: &[Vec<Rational>]) -> Result<AffModule> {
    let m = params.len();
    let ell = params.first().map_or(0, Vec::len);
    if m == 0 || ell == 0 {
        return Err(Error::InvalidArgument("evaluation module needs m, ℓ ≥ 1".into()));
    }
    if params.iter().any(|a| a.len() != ell) {
        return Err(Error::Shape("all parameter vectors must have length ℓ".into()));
    }
    if params.iter().flatten().any(Rational::is_zero) {
        return Err(Error::InvalidArgument("evaluation parameters must be nonzero".into()));
    }
    let perms = Permutation::all(ell);
    let dim = perms.len();
    let mut mats = BTreeMap::new();
    for k in 1..ell {
        let s = Permutation::coxeter(ell, k)?;
        let trip = perms
            .iter()
            .enumerate()
            .map(|(i, t)| (i, t.compose(&s).expect("same ℓ").lex_rank(), Rational::ONE));
        mats.insert(Generator::S(k), RatMatrix::from_triplets(dim, dim, trip)?);
    }
    for (i, a) in params.iter().enumerate() {
        for r in 1..=ell {
            let trip = perms
                .iter()
                .enumerate()
                .map(|(p, t)| (p, p, a[t.apply(r) - 1].clone()));
            mats.insert(Generator::y(i + 1, r), RatMatrix::from_triplets(dim, dim, trip)?);
        }
    }
    AffModule::new(m, ell, dim, mats)
}

/// One-dimensional module: σ acts by `1` (or `−1` when `sign`), every
/// `y_{i,r}` by `scalars[i]`.
pub fn one_dim(ell: usize, sign: bool, scalars: &[Rational]) -> Result<AffModule> {
    if scalars.iter().any(Rational::is_zero) {
        return Err(Error::InvalidArgument("y must act invertibly".into()));
    }
    let s = if sign { -Rational::ONE } else { Rational::ONE };
    let mut mats = BTreeMap::new();
    for k in 1..ell {
        mats.insert(Generator::S(k), RatMatrix::scalar(1, &s));
    }
    for (i, c) in scalars.iter().enumerate() {
        for r in 1..=ell {
            mats.insert(Generator::y(i + 1, r), RatMatrix::scalar(1, c));
        }
    }
    AffModule::new(scalars.len(), ell, 1, mats)
}

/// `σ ↦ σ ⊗ I` and `y_{i,r} ↦ y_{i,r} ⊗ blocks[i]`. The result satisfies
/// the relations exactly when the blocks pairwise commute.
pub fn tensor_with_blocks(base: &AffModule, blocks: &[RatMatrix]) -> Result<AffModule> {
    if blocks.len() != base.m() {
        return Err(Error::Shape(format!("{} blocks for {} loops", blocks.len(), base.m())));
    }
    let b = blocks[0].rows();
    let mut mats = BTreeMap::new();
    for (g, a) in base.mats() {
        let ext = match g {
            Generator::S(_) => a.kron(&RatMatrix::identity(b)),
            Generator::Y { loop_, .. } => a.kron(&blocks[loop_ - 1]),
        };
        mats.insert(*g, ext);
    }
    AffModule::new(base.m(), base.ell(), base.dim() * b, mats)
}

/// `[[1, c], [0, 1]]`; these all commute with each other.
pub fn unipotent(c: i64) -> RatMatrix {
    RatMatrix::from_ints(&[&[1, c], &[0, 1]])
}

/// A textual fixture description, as accepted on the command line.
///
/// * `eval:a,b;c,d` evaluation module, one `;`-group per loop
/// * `trivial:x;y`, `sign:x;y` one-dimensional modules with scalar loops
/// * `jordan:a,b;c,d` evaluation module tensored with commuting unipotent blocks
/// * `noncomm:a,b;c,d` the same with non-commuting blocks (violates the relations)
/// * anything else is a path to a JSON module file
#[derive(Clone, Debug, PartialEq)]
pub enum FixtureSpec {
    Eval(Vec<Vec<Rational>>),
    Trivial { ell: usize, scalars: Vec<Rational> },
    Sign { ell: usize, scalars: Vec<Rational> },
    Jordan(Vec<Vec<Rational>>),
    NonCommuting(Vec<Vec<Rational>>),
    File(PathBuf),
}

fn parse_groups(s: &str) -> Result<Vec<Vec<Rational>>> {
    s.split(';')
        .map(|g| g.split(',').map(|x| x.trim().parse()).collect())
        .collect()
}

impl FixtureSpec {
    /// `ell` is only consulted by the one-dimensional kinds.
    pub fn parse(s: &str, ell: usize) -> Result<Self> {
        let Some((kind, rest)) = s.split_once(':') else {
            return Ok(FixtureSpec::File(PathBuf::from(s)));
        };
        Ok(match kind {
            "eval" => FixtureSpec::Eval(parse_groups(rest)?),
            "jordan" => FixtureSpec::Jordan(parse_groups(rest)?),
            "noncomm" => FixtureSpec::NonCommuting(parse_groups(rest)?),
            "trivial" | "sign" => {
                let scalars = rest
                    .split(';')
                    .map(|x| x.trim().parse())
                    .collect::<Result<Vec<Rational>>>()?;
                if kind == "trivial" {
                    FixtureSpec::Trivial { ell, scalars }
                } else {
                    FixtureSpec::Sign { ell, scalars }
                }
            }
            _ => FixtureSpec::File(PathBuf::from(s)),
        })
    }

    pub fn build(&self) -> Result<AffModule> {
        match self {
            FixtureSpec::Eval(p) => evaluation_module(p),
            FixtureSpec::Trivial { ell, scalars } => one_dim(*ell, false, scalars),
            FixtureSpec::Sign { ell, scalars } => one_dim(*ell, true, scalars),
            FixtureSpec::Jordan(p) => {
                let blocks: Vec<RatMatrix> = (1..=p.len() as i64).map(unipotent).collect();
                tensor_with_blocks(&evaluation_module(p)?, &blocks)
            }
            FixtureSpec::NonCommuting(p) => {
                let mut blocks = vec![unipotent(1)];
                for _ in 1..p.len() {
                    blocks.push(unipotent(1).transpose());
                }
                tensor_with_blocks(&evaluation_module(p)?, &blocks)
            }
            FixtureSpec::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
            }
        }
    }
}

impl FromStr for FixtureSpec {
    type Err = Error;

    /// Parses with ℓ = 1 for the one-dimensional kinds.
    fn from_str(s: &str) -> Result<Self> {
        FixtureSpec::parse(s, 1)
    }
}

impl fmt::Display for FixtureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let groups = |p: &Vec<Vec<Rational>>| {
            p.iter()
                .map(|g| g.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join(";")
        };
        let scal = |s: &Vec<Rational>| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(";");
        match self {
            FixtureSpec::Eval(p) => write!(f, "eval:{}", groups(p)),
            FixtureSpec::Jordan(p) => write!(f, "jordan:{}", groups(p)),
            FixtureSpec::NonCommuting(p) => write!(f, "noncomm:{}", groups(p)),
            FixtureSpec::Trivial { scalars, .. } => write!(f, "trivial:{}", scal(scalars)),
            FixtureSpec::Sign { scalars, .. } => write!(f, "sign:{}", scal(scalars)),
            FixtureSpec::File(p) => write!(f, "{}", p.display()),
        }
    }
}
