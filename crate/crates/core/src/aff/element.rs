//! The group `(Z^ℓ)^m ⋊ S_ℓ` realizing `Aff^m(S_ℓ)` as a group algebra.
//!
//! `(r, σ)(q, τ) = (r + σ(q), στ)` where `σ(e_j) = e_{σ(j)}` on each lattice
//! slot. The generator `σ_c` maps to `(0, σ_c)` and `y_{i,q}` to `(e_q in
//! slot i, 1)`.

use serde::{Deserialize, Serialize};

use super::presentation::{Generator, Letter};
use crate::error::{Error, Result};
use crate::symgroup::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffElement {
    pub lattice: Vec<Vec<i64>>,
    pub perm: Permutation,
}

impl AffElement {
    pub fn identity(m: usize, ell: usize) -> Self {
        AffElement {
            lattice: vec![vec![0; ell]; m],
            perm: Permutation::identity(ell),
        }
    }

    pub fn new(lattice: Vec<Vec<i64>>, perm: Permutation) -> Result<Self> {
        if lattice.iter().any(|r| r.len() != perm.ell()) {
            return Err(Error::Shape(format!(
                "lattice vectors must have length ℓ = {}",
                perm.ell()
            )));
        }
        Ok(AffElement { lattice, perm })
    }

    pub fn m(&self) -> usize {
        self.lattice.len()
    }

    pub fn ell(&self) -> usize {
        self.perm.ell()
    }

    pub fn generator(m: usize, ell: usize, g: Generator) -> Result<Self> {
        if !g.is_valid(m, ell) {
            return Err(Error::OutOfRange(format!("{g} for m={m}, ℓ={ell}")));
        }
        let mut e = Self::identity(m, ell);
        match g {
            Generator::S(k) => e.perm = Permutation::coxeter(ell, k)?,
            Generator::Y { loop_, r } => e.lattice[loop_ - 1][r - 1] = 1,
        }
        Ok(e)
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.lattice.iter().flatten().all(|&v| v == 0)
    }

    pub fn multiply(&self, h: &AffElement) -> Result<AffElement> {
        if self.m() != h.m() || self.ell() != h.ell() {
            return Err(Error::Shape(format!(
                "multiply: (m={}, ℓ={}) vs (m={}, ℓ={})",
                self.m(),
                self.ell(),
                h.m(),
                h.ell()
            )));
        }
        let lattice = self
            .lattice
            .iter()
            .zip(&h.lattice)
            .map(|(r, q)| {
                let moved = self.perm.act_on_lattice(q);
                r.iter().zip(moved).map(|(a, b)| a + b).collect()
            })
            .collect();
        Ok(AffElement {
            lattice,
            perm: self.perm.compose(&h.perm)?,
        })
    }

    pub fn inverse(&self) -> AffElement {
        let inv = self.perm.inverse();
        let lattice = self
            .lattice
            .iter()
            .map(|r| inv.act_on_lattice(r).into_iter().map(|v| -v).collect())
            .collect();
        AffElement { lattice, perm: inv }
    }
}

pub fn multiply(g: &AffElement, h: &AffElement) -> Result<AffElement> {
    g.multiply(h)
}

pub fn word_to_element(m: usize, ell: usize, word: &[Letter]) -> Result<AffElement> {
    let mut acc = AffElement::identity(m, ell);
    for l in word {
        let g = AffElement::generator(m, ell, l.gen)?;
        let g = if l.inv { g.inverse() } else { g };
        acc = acc.multiply(&g)?;
    }
    Ok(acc)
}
