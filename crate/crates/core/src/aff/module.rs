//! Finite-dimensional right modules over `Aff^m(S_ℓ)`.
//!
//! A module is a set of generator matrices acting on row vectors, so a word
//! evaluates to the left-to-right product of its letters' matrices.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::element::AffElement;
use super::presentation::{generators, word_to_string, AffPresentation, Generator, Letter, RelationFamily};
use crate::error::{Error, Result};
use crate::exact::RatMatrix;
use crate::exec::Exec;
use crate::report::{HasStatus, Status};

#[derive(Clone, Debug)]
pub struct AffModule {
    m: usize,
    ell: usize,
    dim: usize,
    mats: BTreeMap<Generator, RatMatrix>,
    inverses: HashMap<Generator, RatMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub relation: String,
    pub family: RelationFamily,
    pub status: Status,
}

impl HasStatus for RelationCheck {
    fn status(&self) -> Status {
        self.status
    }
}

impl AffModule {
    /// Validates shapes and invertibility; relations are checked separately
    /// by [`verify`](Self::verify).
    pub fn new(m: usize, ell: usize, dim: usize, mats: BTreeMap<Generator, RatMatrix>) -> Result<Self> {
        if m == 0 || ell == 0 {
            return Err(Error::InvalidArgument(format!("need m ≥ 1 and ℓ ≥ 1, got m={m}, ℓ={ell}")));
        }
        for g in generators(m, ell) {
            if !mats.contains_key(&g) {
                return Err(Error::MissingGenerator(g.label()));
            }
        }
        if let Some(g) = mats.keys().find(|g| !g.is_valid(m, ell)) {
            return Err(Error::InvalidArgument(format!("generator {g} not in Aff^{m}(S_{ell})")));
        }
        let mut inverses = HashMap::new();
        for (g, a) in &mats {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::Shape(format!(
                    "{g} is {}x{}, module dimension is {dim}",
                    a.rows(),
                    a.cols()
                )));
            }
            let inv = a
                .inverse()
                .map_err(|_| Error::Singular(format!("generator {g} acts non-invertibly")))?;
            inverses.insert(*g, inv);
        }
        Ok(AffModule { m, ell, dim, mats, inverses })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mat(&self, g: Generator) -> &RatMatrix {
        &self.mats[&g]
    }

    pub fn mats(&self) -> &BTreeMap<Generator, RatMatrix> {
        &self.mats
    }

    pub fn sigma(&self, k: usize) -> &RatMatrix {
        self.mat(Generator::S(k))
    }

    pub fn y(&self, loop_: usize, r: usize) -> &RatMatrix {
        self.mat(Generator::y(loop_, r))
    }

    pub fn letter_matrix(&self, l: Letter) -> &RatMatrix {
        if l.inv {
            &self.inverses[&l.gen]
        } else {
            &self.mats[&l.gen]
        }
    }

    pub fn evaluate_word(&self, w: &[Letter]) -> RatMatrix {
        let mut acc = RatMatrix::identity(self.dim);
        for l in w {
            acc = &acc * self.letter_matrix(*l);
        }
        acc
    }

    /// Matrix of the group element `(r, σ) = (Π_i Π_q y_{i,q}^{r_i[q]}) σ`.
    pub fn act_element(&self, g: &AffElement) -> Result<RatMatrix> {
        if g.m() != self.m || g.ell() != self.ell {
            return Err(Error::Shape("element and module disagree on (m, ℓ)".into()));
        }
        let mut acc = RatMatrix::identity(self.dim);
        for (i, r) in g.lattice.iter().enumerate() {
            for (q, &e) in r.iter().enumerate() {
                if e != 0 {
                    let gen = Generator::y(i + 1, q + 1);
                    let base = if e > 0 { &self.mats[&gen] } else { &self.inverses[&gen] };
                    acc = &acc * &base.pow(e.abs())?;
                }
            }
        }
        for k in g.perm.reduced_word().letters {
            acc = &acc * self.sigma(k);
        }
        Ok(acc)
    }

    /// Matrix of `σ` acting on the right.
    pub fn act_perm(&self, p: &crate::symgroup::Permutation) -> RatMatrix {
        let mut acc = RatMatrix::identity(self.dim);
        for k in p.reduced_word().letters {
            acc = &acc * self.sigma(k);
        }
        acc
    }

    pub fn verify(&self, exec: Exec) -> Vec<RelationCheck> {
        let pres = AffPresentation::new(self.m, self.ell).expect("validated at construction");
        exec.map(&pres.relations, |rel| RelationCheck {
            relation: format!("{} = {}", word_to_string(&rel.lhs), word_to_string(&rel.rhs)),
            family: rel.family,
            status: Status::from_bool(self.evaluate_word(&rel.lhs) == self.evaluate_word(&rel.rhs)),
        })
    }

    pub fn is_valid(&self) -> bool {
        self.verify(Exec::default()).iter().all(|c| c.status.passed())
    }

    /// The single-loop module generated by the σ's and the `i`-th y-family.
    pub fn restrict_to_loop(&self, i: usize) -> Result<AffModule> {
        if i == 0 || i > self.m {
            return Err(Error::OutOfRange(format!("loop {i} of {}", self.m)));
        }
        let mut mats = BTreeMap::new();
        for k in 1..self.ell {
            mats.insert(Generator::S(k), self.sigma(k).clone());
        }
        for r in 1..=self.ell {
            mats.insert(Generator::y(1, r), self.y(i, r).clone());
        }
        let mut inverses = HashMap::new();
        for g in mats.keys() {
            let src = match *g {
                Generator::S(_) => *g,
                Generator::Y { r, .. } => Generator::y(i, r),
            };
            inverses.insert(*g, self.inverses[&src].clone());
        }
        Ok(AffModule { m: 1, ell: self.ell, dim: self.dim, mats, inverses })
    }

    pub fn direct_sum(&self, other: &AffModule) -> Result<AffModule> {
        if self.m != other.m || self.ell != other.ell {
            return Err(Error::Shape("direct sum of modules over different algebras".into()));
        }
        let mats = self
            .mats
            .iter()
            .map(|(g, a)| (*g, block_diag(a, &other.mats[g])))
            .collect();
        AffModule::new(self.m, self.ell, self.dim + other.dim, mats)
    }

    /// Replaces one generator matrix without checking relations.
    pub fn with_matrix(&self, g: Generator, a: RatMatrix) -> Result<AffModule> {
        let mut mats = self.mats.clone();
        mats.insert(g, a);
        AffModule::new(self.m, self.ell, self.dim, mats)
    }
}

fn block_diag(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let n = a.rows() + b.rows();
    let trip = a
        .triplets()
        .map(|(i, j, v)| (i, j, v.clone()))
        .chain(b.triplets().map(|(i, j, v)| (i + a.rows(), j + a.cols(), v.clone())));
    RatMatrix::from_triplets(n, a.cols() + b.cols(), trip).expect("in range")
}

pub fn verify_module(module: &AffModule) -> Vec<RelationCheck> {
    module.verify(Exec::default())
}

pub fn restrict_to_loop(module: &AffModule, i: usize) -> Result<AffModule> {
    module.restrict_to_loop(i)
}

/// Glues single-loop modules sharing their σ-matrices into an `Aff^m` module.
pub fn glue_modules(parts: &[AffModule]) -> Result<AffModule> {
    let first = parts
        .first()
        .ok_or_else(|| Error::InvalidArgument("no modules to glue".into()))?;
    let (ell, dim) = (first.ell, first.dim);
    for (i, p) in parts.iter().enumerate() {
        if p.m != 1 {
            return Err(Error::InvalidArgument(format!("part {} has {} loops", i + 1, p.m)));
        }
        if p.ell != ell || p.dim != dim {
            return Err(Error::Shape(format!("part {} differs in ℓ or dimension", i + 1)));
        }
        for k in 1..ell {
            if p.sigma(k) != first.sigma(k) {
                return Err(Error::InvalidArgument(format!(
                    "parts 1 and {} disagree on s{k}",
                    i + 1
                )));
            }
        }
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            for r in 1..=ell {
                for s in 1..=ell {
                    let a = parts[i].y(1, r);
                    let b = parts[j].y(1, s);
                    if a * b != b * a {
                        return Err(Error::NonCommuting {
                            first: i + 1,
                            second: j + 1,
                            witness: format!("y.{}.{r} and y.{}.{s}", i + 1, j + 1),
                        });
                    }
                }
            }
        }
    }
    let mut mats = BTreeMap::new();
    for k in 1..ell {
        mats.insert(Generator::S(k), first.sigma(k).clone());
    }
    let mut inverses = HashMap::new();
    for (i, p) in parts.iter().enumerate() {
        for r in 1..=ell {
            let g = Generator::y(i + 1, r);
            mats.insert(g, p.y(1, r).clone());
            inverses.insert(g, p.inverses[&Generator::y(1, r)].clone());
        }
    }
    for k in 1..ell {
        inverses.insert(Generator::S(k), first.inverses[&Generator::S(k)].clone());
    }
    Ok(AffModule { m: parts.len(), ell, dim, mats, inverses })
}

impl PartialEq for AffModule {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.ell == other.ell && self.dim == other.dim && self.mats == other.mats
    }
}

impl Eq for AffModule {}

#[derive(Serialize, Deserialize)]
struct ModuleRepr {
    m: usize,
    ell: usize,
    dim: usize,
    mats: BTreeMap<String, RatMatrix>,
}

impl Serialize for AffModule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ModuleRepr {
            m: self.m,
            ell: self.ell,
            dim: self.dim,
            mats: self.mats.iter().map(|(g, a)| (g.label(), a.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffModule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ModuleRepr::deserialize(d)?;
        let mut mats = BTreeMap::new();
        for (label, a) in repr.mats {
            let g: Generator = label.parse().map_err(serde::de::Error::custom)?;
            mats.insert(g, a);
        }
        AffModule::new(repr.m, repr.ell, repr.dim, mats).map_err(serde::de::Error::custom)
    }
}
