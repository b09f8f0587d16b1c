//! Permutations of `{1, …, ℓ}` and words in the Coxeter generators.
//!
//! Composition is right-to-left: `(p ∘ q)(i) = p(q(i))`. A word
//! `[a_1, …, a_k]` evaluates to `σ_{a_1} ∘ ⋯ ∘ σ_{a_k}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One-line notation, 1-based: `images[i - 1] = σ(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(ell: usize) -> Self {
        Permutation {
            images: (1..=ell).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidArgument(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// The Coxeter generator `σ_k = (k k+1)`.
    pub fn coxeter(ell: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= ell {
            return Err(Error::OutOfRange(format!("σ_{k} in S_{ell}")));
        }
        Ok(Self::transposition(ell, k, k + 1))
    }

    /// The transposition `(a b)`; panics when an index is out of range.
    pub fn transposition(ell: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(ell);
        p.images.swap(a - 1, b - 1);
        p
    }

    pub fn ell(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn compose(&self, q: &Permutation) -> Result<Permutation> {
        if self.ell() != q.ell() {
            return Err(Error::Shape(format!(
                "compose: S_{} and S_{}",
                self.ell(),
                q.ell()
            )));
        }
        Ok(Permutation {
            images: q.images.iter().map(|&j| self.images[j - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.ell()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Place action on tuples: `output[σ(k)] = idx[k]`.
    pub fn act_on_tuple<T: Clone>(&self, idx: &[T]) -> Result<Vec<T>> {
        if idx.len() != self.ell() {
            return Err(Error::Shape(format!(
                "tuple of length {} for S_{}",
                idx.len(),
                self.ell()
            )));
        }
        let mut out = idx.to_vec();
        for (k, v) in idx.iter().enumerate() {
            out[self.images[k] - 1] = v.clone();
        }
        Ok(out)
    }

    /// Same as [`act_on_tuple`](Self::act_on_tuple) for lattice vectors,
    /// where it is `σ(e_j) = e_{σ(j)}`.
    pub fn act_on_lattice(&self, q: &[i64]) -> Vec<i64> {
        let mut out = vec![0; q.len()];
        for (k, &v) in q.iter().enumerate() {
            out[self.images[k] - 1] = v;
        }
        out
    }

    pub fn length(&self) -> usize {
        let n = self.ell();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.images[i] > self.images[j])
            .count()
    }

    /// A reduced word, built by peeling right descents.
    pub fn reduced_word(&self) -> CoxeterWord {
        let mut p = self.images.clone();
        let mut rev = Vec::new();
        while let Some(k) = (0..p.len().saturating_sub(1)).find(|&k| p[k] > p[k + 1]) {
            p.swap(k, k + 1);
            rev.push(k + 1);
        }
        rev.reverse();
        CoxeterWord { letters: rev }
    }

    /// All of `S_ℓ` in lexicographic order of one-line notation.
    pub fn all(ell: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (1..=ell).collect();
        let mut out = vec![Permutation {
            images: cur.clone(),
        }];
        loop {
            let Some(i) = (0..ell.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                return out;
            };
            let j = (i + 1..ell).rev().find(|&j| cur[j] > cur[i]).expect("exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
            out.push(Permutation {
                images: cur.clone(),
            });
        }
    }

    /// Position in the lexicographic order used by [`all`](Self::all).
    pub fn lex_rank(&self) -> usize {
        let n = self.ell();
        let mut rank = 0;
        let mut fact = (1..n).product::<usize>().max(1);
        for i in 0..n {
            let smaller_later = self.images[i + 1..]
                .iter()
                .filter(|&&v| v < self.images[i])
                .count();
            rank += smaller_later * fact;
            fact = fact.checked_div(n - 1 - i).unwrap_or(fact);
        }
        rank
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Permutation::from_images(Vec::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// A word in the Coxeter generators; letter `k` stands for `σ_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoxeterWord {
    pub letters: Vec<usize>,
}

impl CoxeterWord {
    pub fn new(letters: Vec<usize>) -> Self {
        CoxeterWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn evaluate(&self, ell: usize) -> Result<Permutation> {
        let mut p = Permutation::identity(ell);
        for &k in &self.letters {
            p = p.compose(&Permutation::coxeter(ell, k)?)?;
        }
        Ok(p)
    }
}

/// `σ_1 σ_2 ⋯ σ_{j−2} σ_{j−1} σ_{j−2} ⋯ σ_1`, a word for `(1 j)`.
pub fn transposition_word(ell: usize, j: usize) -> Result<CoxeterWord> {
    if j < 2 || j > ell {
        return Err(Error::OutOfRange(format!("transposition (1 {j}) in S_{ell}")));
    }
    let mut letters: Vec<usize> = (1..j).collect();
    letters.extend((1..j - 1).rev());
    Ok(CoxeterWord { letters })
}

pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    p.compose(q)
}

pub fn act_on_tuple<T: Clone>(p: &Permutation, idx: &[T]) -> Result<Vec<T>> {
    p.act_on_tuple(idx)
}
