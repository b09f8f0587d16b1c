//! `sl_{n+1}` in its natural representation, affine Cartan data of type
//! `A_n^{(1)}`, weights, and bracket decompositions.
//!
//! Matrices act on column vectors over the basis `v_1, …, v_{n+1}`, so the
//! matrix unit `E_{ab}` sends `v_b` to `v_a`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{RatMatrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "h")]
    H,
    #[serde(rename = "x+")]
    XPlus,
    #[serde(rename = "x-")]
    XMinus,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::H => "h",
            Kind::XPlus => "x+",
            Kind::XMinus => "x-",
        })
    }
}

/// A Moody-Rao-Yokonuma generator `h_i(k)` or `x_i^±(k)` of the toroidal
/// algebra, `i ∈ [0, n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorGen {
    pub kind: Kind,
    pub i: usize,
    pub k: i64,
}

impl TorGen {
    pub fn new(kind: Kind, i: usize, k: i64) -> Self {
        TorGen { kind, i, k }
    }

    pub fn h(i: usize, k: i64) -> Self {
        Self::new(Kind::H, i, k)
    }

    pub fn xp(i: usize, k: i64) -> Self {
        Self::new(Kind::XPlus, i, k)
    }

    pub fn xm(i: usize, k: i64) -> Self {
        Self::new(Kind::XMinus, i, k)
    }

    /// All generators with `i ∈ [0, n]` and `|k| ≤ kmax`.
    pub fn all(n: usize, kmax: i64) -> Vec<TorGen> {
        let mut out = Vec::new();
        for k in -kmax..=kmax {
            for i in 0..=n {
                for kind in [Kind::H, Kind::XPlus, Kind::XMinus] {
                    out.push(TorGen::new(kind, i, k));
                }
            }
        }
        out
    }

    /// `x ⊗ s^k t^e` with `s` the first loop variable and `t` the second:
    /// only `x_0^±` carries `t^{±1}`.
    pub fn monomial(&self, n: usize) -> Result<LoopMonomial> {
        let elem = natural_rep(self.kind, self.i, n)?;
        let e = match (self.i, self.kind) {
            (0, Kind::XPlus) => 1,
            (0, Kind::XMinus) => -1,
            _ => 0,
        };
        Ok(LoopMonomial {
            elem,
            exps: vec![self.k, e],
        })
    }
}

impl fmt::Display for TorGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::H => write!(f, "h_{}({})", self.i, self.k),
            Kind::XPlus => write!(f, "x+_{}({})", self.i, self.k),
            Kind::XMinus => write!(f, "x-_{}({})", self.i, self.k),
        }
    }
}

/// `elem ⊗ t_1^{p_1} ⋯ t_m^{p_m}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopMonomial {
    pub elem: RatMatrix,
    pub exps: Vec<i64>,
}

impl LoopMonomial {
    pub fn new(elem: RatMatrix, exps: Vec<i64>) -> Result<Self> {
        if !elem.is_square() || !elem.trace().is_zero() {
            return Err(Error::InvalidArgument("loop monomial needs a traceless square matrix".into()));
        }
        Ok(LoopMonomial { elem, exps })
    }

    pub fn bracket(&self, other: &LoopMonomial) -> Result<LoopMonomial> {
        if self.exps.len() != other.exps.len() {
            return Err(Error::Shape("loop monomials over different loop counts".into()));
        }
        Ok(LoopMonomial {
            elem: bracket(&self.elem, &other.elem)?,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        })
    }
}

/// All loop variables evaluated at 1.
pub fn eval_action(x: &LoopMonomial) -> RatMatrix {
    x.elem.clone()
}

pub fn cartan_entry(i: usize, j: usize, n: usize) -> Result<i64> {
    if n == 0 || i > n || j > n {
        return Err(Error::OutOfRange(format!("Cartan entry ({i}, {j}) for A_{n}^(1)")));
    }
    if i == j {
        return Ok(2);
    }
    if n == 1 {
        return Ok(-2);
    }
    let adjacent = (i + 1) % (n + 1) == j || (j + 1) % (n + 1) == i;
    Ok(if adjacent { -1 } else { 0 })
}

/// `E_{ab}` in `gl_{n+1}`, 1-based.
pub fn e_unit(n: usize, a: usize, b: usize) -> RatMatrix {
    RatMatrix::unit(n + 1, n + 1, a - 1, b - 1)
}

/// `E_{aa} − E_{bb}`.
pub fn h_pair(n: usize, a: usize, b: usize) -> RatMatrix {
    &e_unit(n, a, a) - &e_unit(n, b, b)
}

/// The matrix of a Chevalley generator on `V`. For `i = 0`,
/// `x_0^+ = E_{n+1,1}`, `x_0^− = E_{1,n+1}` and `h_0 = E_{n+1,n+1} − E_{11}`.
pub fn natural_rep(kind: Kind, i: usize, n: usize) -> Result<RatMatrix> {
    if n == 0 || i > n {
        return Err(Error::OutOfRange(format!("node {i} for sl_{}", n + 1)));
    }
    let (a, b) = if i == 0 { (n + 1, 1) } else { (i, i + 1) };
    Ok(match kind {
        Kind::H => h_pair(n, a, b),
        Kind::XPlus => e_unit(n, a, b),
        Kind::XMinus => e_unit(n, b, a),
    })
}

pub fn torgen_matrix(g: &TorGen, n: usize) -> Result<RatMatrix> {
    natural_rep(g.kind, g.i, n)
}

pub fn bracket(a: &RatMatrix, b: &RatMatrix) -> Result<RatMatrix> {
    if !a.is_square() || a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::Shape(format!(
            "bracket of {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    a.commutator(b)
}

/// One element of the Chevalley basis: `h_1, …, h_n`, then `E_{ab}` for
/// `a ≠ b` in lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElem {
    H(usize),
    E(usize, usize),
}

impl BasisElem {
    pub fn matrix(&self, n: usize) -> RatMatrix {
        match *self {
            BasisElem::H(i) => h_pair(n, i, i + 1),
            BasisElem::E(a, b) => e_unit(n, a, b),
        }
    }
}

impl fmt::Display for BasisElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElem::H(i) => write!(f, "h_{i}"),
            BasisElem::E(a, b) => write!(f, "E_{a}{b}"),
        }
    }
}

pub fn chevalley_basis(n: usize) -> Vec<BasisElem> {
    let mut out: Vec<BasisElem> = (1..=n).map(BasisElem::H).collect();
    for a in 1..=n + 1 {
        for b in 1..=n + 1 {
            if a != b {
                out.push(BasisElem::E(a, b));
            }
        }
    }
    out
}

/// Position of `e` in [`chevalley_basis`].
pub fn basis_index(n: usize, e: BasisElem) -> usize {
    match e {
        BasisElem::H(i) => i - 1,
        BasisElem::E(a, b) => {
            let col = if b > a { b - 2 } else { b - 1 };
            n + (a - 1) * n + col
        }
    }
}

/// Coefficients of a traceless matrix in the Chevalley basis.
pub fn expand(x: &RatMatrix, n: usize) -> Result<Vec<(BasisElem, Rational)>> {
    if x.rows() != n + 1 || x.cols() != n + 1 {
        return Err(Error::Shape(format!("expected a {0}x{0} matrix", n + 1)));
    }
    if !x.trace().is_zero() {
        return Err(Error::InvalidArgument("matrix is not traceless".into()));
    }
    let mut out = Vec::new();
    let mut partial = Rational::ZERO;
    for i in 1..=n {
        partial += &x.get(i - 1, i - 1);
        if !partial.is_zero() {
            out.push((BasisElem::H(i), partial.clone()));
        }
    }
    for (a, b, v) in x.triplets() {
        if a != b {
            out.push((BasisElem::E(a + 1, b + 1), v.clone()));
        }
    }
    out.sort_by_key(|(e, _)| basis_index(n, *e));
    Ok(out)
}

/// How basis elements are written as brackets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decomposition {
    /// `h_i = [x_i^+, x_i^−]`, `E_{ab} = ±½[E_{aa} − E_{bb}, E_{ab}]`.
    #[default]
    Standard,
    /// The standard terms with their two sides exchanged and negated.
    Swapped,
    /// `E_{ab} = [E_{ac}, E_{cb}]` through a third index `c`; needs `n ≥ 2`.
    ThroughThird,
}

/// A list of `(a, b)` with `x = Σ [a, b]`.
pub type BracketSum = Vec<(RatMatrix, RatMatrix)>;

fn third_index(n: usize, a: usize, b: usize) -> usize {
    (1..=n + 1).find(|&c| c != a && c != b).expect("n ≥ 2")
}

pub fn decompose_basis(e: BasisElem, n: usize, how: Decomposition) -> Result<BracketSum> {
    let half = Rational::new(1, 2)?;
    let standard = |e: BasisElem| -> BracketSum {
        match e {
            BasisElem::H(i) => vec![(e_unit(n, i, i + 1), e_unit(n, i + 1, i))],
            BasisElem::E(a, b) if a < b => vec![(h_pair(n, a, b).scale(&half), e_unit(n, a, b))],
            BasisElem::E(a, b) => vec![(h_pair(n, b, a).scale(&-&half), e_unit(n, a, b))],
        }
    };
    Ok(match how {
        Decomposition::Standard => standard(e),
        Decomposition::Swapped => standard(e).into_iter().map(|(a, b)| (-&b, a)).collect(),
        Decomposition::ThroughThird => {
            if n < 2 {
                return Err(Error::InvalidArgument("no third index in sl_2".into()));
            }
            match e {
                BasisElem::H(i) => {
                    let c = third_index(n, i, i + 1);
                    vec![
                        (e_unit(n, i, c), e_unit(n, c, i)),
                        (-&e_unit(n, i + 1, c), e_unit(n, c, i + 1)),
                    ]
                }
                BasisElem::E(a, b) => {
                    let c = third_index(n, a, b);
                    vec![(e_unit(n, a, c), e_unit(n, c, b))]
                }
            }
        }
    })
}

/// Single-term decompositions of `h_i`, `x_i^±` for `i ∈ [1, n]`.
pub fn chevalley_decompose(kind: Kind, i: usize, n: usize) -> Result<BracketSum> {
    if i == 0 || i > n {
        return Err(Error::OutOfRange(format!("node {i} is not a finite simple root of sl_{}", n + 1)));
    }
    let e = match kind {
        Kind::H => BasisElem::H(i),
        Kind::XPlus => BasisElem::E(i, i + 1),
        Kind::XMinus => BasisElem::E(i + 1, i),
    };
    decompose_basis(e, n, Decomposition::Standard)
}

/// Decomposes an arbitrary traceless matrix term by term.
pub fn decompose(x: &RatMatrix, n: usize, how: Decomposition) -> Result<BracketSum> {
    let mut out = Vec::new();
    for (e, c) in expand(x, n)? {
        for (a, b) in decompose_basis(e, n, how)? {
            out.push((a.scale(&c), b));
        }
    }
    Ok(out)
}

pub fn bracket_sum(terms: &BracketSum) -> Result<RatMatrix> {
    let mut it = terms.iter();
    let Some((a, b)) = it.next() else {
        return Err(Error::InvalidArgument("empty bracket sum".into()));
    };
    let mut acc = bracket(a, b)?;
    for (a, b) in it {
        acc = &acc + &bracket(a, b)?;
    }
    Ok(acc)
}

/// A weight in ε-coordinates, stored modulo the all-ones vector with the
/// last coordinate normalized to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    coords: Vec<i64>,
}

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        let last = *coords.last().expect("at least one coordinate");
        Weight {
            coords: coords.into_iter().map(|c| c - last).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        Weight { coords: vec![0; n + 1] }
    }

    /// `ε_r`, 1-based.
    pub fn epsilon(n: usize, r: usize) -> Self {
        let mut c = vec![0; n + 1];
        c[r - 1] = 1;
        Self::new(c)
    }

    /// `α_i = ε_i − ε_{i+1}`, and `α_0 = ε_{n+1} − ε_1`.
    pub fn alpha(n: usize, i: usize) -> Self {
        if i == 0 {
            Self::epsilon(n, n + 1).sub(&Self::epsilon(n, 1))
        } else {
            Self::epsilon(n, i).sub(&Self::epsilon(n, i + 1))
        }
    }

    /// `θ = ε_1 − ε_{n+1}`.
    pub fn theta(n: usize) -> Self {
        Self::epsilon(n, 1).sub(&Self::epsilon(n, n + 1))
    }

    /// `λ_i = ε_1 + ⋯ + ε_i`.
    pub fn fundamental(n: usize, i: usize) -> Self {
        (1..=i).fold(Self::zero(n), |acc, r| acc.add(&Self::epsilon(n, r)))
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }

    /// `λ(h_i)`; `h_0 = E_{n+1,n+1} − E_{11}`.
    pub fn pairing(&self, i: usize) -> i64 {
        let n = self.n();
        if i == 0 {
            self.coords[n] - self.coords[0]
        } else {
            self.coords[i - 1] - self.coords[i]
        }
    }

    /// `(λ(h_1), …, λ(h_n))`, which determines the weight.
    pub fn pairings(&self) -> Vec<i64> {
        (1..=self.n()).map(|i| self.pairing(i)).collect()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

pub fn weight_of(n: usize, r: usize) -> Result<Weight> {
    if r == 0 || r > n + 1 {
        return Err(Error::OutOfRange(format!("basis vector v_{r} of V = C^{}", n + 1)));
    }
    Ok(Weight::epsilon(n, r))
}

/// Sum of place weights of `v_{idx[0]} ⊗ ⋯`.
pub fn tensor_weight(n: usize, idx: &[usize]) -> Weight {
    idx.iter()
        .fold(Weight::zero(n), |acc, &r| acc.add(&Weight::epsilon(n, r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, unit_vector};

    fn v(n: usize, r: usize) -> Vec<Rational> {
        unit_vector(n + 1, r - 1)
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(cartan_entry(1, 1, 3).unwrap(), 2);
        assert_eq!(cartan_entry(0, 1, 2).unwrap(), -1);
        assert_eq!(cartan_entry(0, 2, 2).unwrap(), -1);
        assert_eq!(cartan_entry(0, 1, 1).unwrap(), -2);
        assert_eq!(cartan_entry(0, 2, 4).unwrap(), 0);
        assert_eq!(cartan_entry(0, 4, 4).unwrap(), -1);
        assert!(cartan_entry(0, 3, 2).is_err());
    }

    #[test]
    fn natural_rep_examples() {
        let n = 3;
        let xp1 = natural_rep(Kind::XPlus, 1, n).unwrap();
        assert_eq!(xp1.mul_vec(&v(n, 2)).unwrap(), v(n, 1));
        let h1 = natural_rep(Kind::H, 1, n).unwrap();
        assert_eq!(h1.mul_vec(&v(n, 1)).unwrap(), v(n, 1));
        let neg: Vec<Rational> = v(n, 2).iter().map(|x| -x).collect();
        assert_eq!(h1.mul_vec(&v(n, 2)).unwrap(), neg);
        let sum = (1..=n).fold(RatMatrix::zeros(n + 1, n + 1), |acc, i| {
            &acc + &natural_rep(Kind::H, i, n).unwrap()
        });
        assert_eq!(natural_rep(Kind::H, 0, n).unwrap(), -&sum);
        let xp0 = natural_rep(Kind::XPlus, 0, n).unwrap();
        assert_eq!(xp0.mul_vec(&v(n, 1)).unwrap(), v(n, n + 1));
        let xm0 = natural_rep(Kind::XMinus, 0, n).unwrap();
        assert_eq!(xm0.mul_vec(&v(n, n + 1)).unwrap(), v(n, 1));
    }

    #[test]
    fn eval_ignores_loop_exponents() {
        let n = 2;
        let m = LoopMonomial::new(natural_rep(Kind::XPlus, 1, n).unwrap(), vec![5, 0]).unwrap();
        assert_eq!(eval_action(&m).mul_vec(&v(n, 2)).unwrap(), v(n, 1));
        for k in -2..=2 {
            let g = TorGen::xp(0, k).monomial(n).unwrap();
            assert_eq!(eval_action(&g).mul_vec(&v(n, 1)).unwrap(), v(n, n + 1));
            assert_eq!(g.exps, vec![k, 1]);
        }
        let h = natural_rep(Kind::H, 1, n).unwrap();
        let a = LoopMonomial::new(h.clone(), vec![0, -3]).unwrap();
        assert_eq!(eval_action(&a), eval_action(&LoopMonomial::new(h, vec![0, 0]).unwrap()));
        assert!(LoopMonomial::new(RatMatrix::identity(3), vec![0]).is_err());
    }

    /// Serre presentation on the natural representation, exhaustive for n ≤ 4.
    #[test]
    fn serre_relations_natural_rep() {
        for n in 1..=4 {
            let g = |k, i| natural_rep(k, i, n).unwrap();
            for i in 0..=n {
                for j in 0..=n {
                    let a = cartan_entry(i, j, n).unwrap();
                    assert!(bracket(&g(Kind::H, i), &g(Kind::H, j)).unwrap().is_zero());
                    let hx = bracket(&g(Kind::H, i), &g(Kind::XPlus, j)).unwrap();
                    assert_eq!(hx, g(Kind::XPlus, j).scale(&Rational::integer(a)));
                    let hx = bracket(&g(Kind::H, i), &g(Kind::XMinus, j)).unwrap();
                    assert_eq!(hx, g(Kind::XMinus, j).scale(&Rational::integer(-a)));
                    let xx = bracket(&g(Kind::XPlus, i), &g(Kind::XMinus, j)).unwrap();
                    if i == j {
                        assert_eq!(xx, g(Kind::H, i));
                    } else {
                        assert!(xx.is_zero());
                        for kind in [Kind::XPlus, Kind::XMinus] {
                            let mut acc = g(kind, j);
                            for _ in 0..(1 - a) {
                                acc = bracket(&g(kind, i), &acc).unwrap();
                            }
                            assert!(acc.is_zero(), "n={n} i={i} j={j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bracket_examples() {
        let n = 2;
        let h = bracket(
            &natural_rep(Kind::XPlus, 1, n).unwrap(),
            &natural_rep(Kind::XMinus, 1, n).unwrap(),
        )
        .unwrap();
        assert_eq!(h, natural_rep(Kind::H, 1, n).unwrap());
        assert!(bracket(&h_pair(n, 1, 2), &h_pair(n, 2, 3)).unwrap().is_zero());
        assert_eq!(bracket(&e_unit(n, 1, 2), &e_unit(n, 2, 3)).unwrap(), e_unit(n, 1, 3));
        assert!(bracket(&RatMatrix::identity(2), &RatMatrix::identity(3)).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let n = 2;
        let d = chevalley_decompose(Kind::H, 1, n).unwrap();
        assert_eq!(d, vec![(e_unit(n, 1, 2), e_unit(n, 2, 1))]);
        let d = chevalley_decompose(Kind::XPlus, 1, n).unwrap();
        assert_eq!(d, vec![(natural_rep(Kind::H, 1, n).unwrap().scale(&rat(1, 2)), e_unit(n, 1, 2))]);
        for kind in [Kind::H, Kind::XPlus, Kind::XMinus] {
            for i in 1..=n {
                let d = chevalley_decompose(kind, i, n).unwrap();
                assert_eq!(bracket_sum(&d).unwrap(), natural_rep(kind, i, n).unwrap());
            }
        }
    }

    #[test]
    fn arbitrary_traceless_decomposes() {
        let x = RatMatrix::from_rows(vec![
            vec![rat(1, 2), rat(3, 1), rat(-1, 1), rat(0, 1)],
            vec![rat(2, 1), rat(-2, 1), rat(0, 1), rat(5, 7)],
            vec![rat(0, 1), rat(1, 1), rat(4, 3), rat(1, 1)],
            vec![rat(-3, 1), rat(0, 1), rat(2, 1), rat(1, 6)],
        ])
        .unwrap();
        let n = 3;
        // Oracle: rebuild from the expansion directly.
        let rebuilt = expand(&x, n)
            .unwrap()
            .iter()
            .fold(RatMatrix::zeros(4, 4), |acc, (e, c)| &acc + &e.matrix(n).scale(c));
        assert_eq!(rebuilt, x);
        for how in [Decomposition::Standard, Decomposition::Swapped, Decomposition::ThroughThird] {
            assert_eq!(bracket_sum(&decompose(&x, n, how).unwrap()).unwrap(), x);
        }
        assert!(expand(&RatMatrix::identity(4), n).is_err());
    }

    #[test]
    fn basis_indexing() {
        for n in 1..=4 {
            let b = chevalley_basis(n);
            assert_eq!(b.len(), (n + 1) * (n + 1) - 1);
            for (k, e) in b.iter().enumerate() {
                assert_eq!(basis_index(n, *e), k);
            }
        }
    }

    #[test]
    fn weights() {
        let n = 3;
        let w = weight_of(n, 1).unwrap();
        assert_eq!(w.pairing(1), 1);
        assert_eq!(weight_of(1, 2).unwrap().pairing(1), -1);
        assert_eq!(Weight::alpha(n, 0), Weight::zero(n).sub(&Weight::theta(n)));
        assert_eq!(Weight::new(vec![2, 2, 2, 2]), Weight::zero(n));
        assert_eq!(Weight::fundamental(n, 2).pairings(), vec![0, 1, 0]);
        // h_i acts on a pure tensor by the pairing of the summed weight.
        let idx = [1, 3, 3, 2];
        let wt = tensor_weight(n, &idx);
        for i in 0..=n {
            let h = natural_rep(Kind::H, i, n).unwrap();
            let total: Rational = idx.iter().map(|&r| h.get(r - 1, r - 1)).sum();
            assert_eq!(total, Rational::integer(wt.pairing(i)));
        }
    }

    #[test]
    fn alpha_existence_weight_table() {
        // u^+_{i,1} = v_i ⊗ v_1 ⊗ ⋯ (skipping i, i+1): weight ε_i + Σ others.
        let n = 4;
        let ell = 3;
        for i in 1..=ell {
            let mut idx = vec![i];
            idx.extend((1..=ell + 1).filter(|&r| r != i && r != i + 1));
            let wt = tensor_weight(n, &idx);
            let direct = idx.iter().fold(vec![0i64; n + 1], |mut c, &r| {
                c[r - 1] += 1;
                c
            });
            assert_eq!(wt, Weight::new(direct));
            assert_eq!(wt.pairing(i), 1);
        }
    }
}
