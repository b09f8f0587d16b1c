//! Hom spaces on both sides of the duality, full faithfulness, and the
//! degree test on weights.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::aff::AffModule;
use crate::error::{Error, Result};
use crate::exact::{RatMatrix, Rational};
use crate::exec::Exec;
use crate::glue::{exponent_box, GluedAction};
use crate::induced::{tensor_tuple, BalancedModule, OperatorFamily};
use crate::lie::{chevalley_basis, natural_rep, tensor_weight, Kind, TorGen, Weight};
use crate::report::{Check, HasStatus, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Aff,
    Toroidal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomSpace {
    pub side: Side,
    pub dim: usize,
    pub basis: Vec<RatMatrix>,
}

/// All `Φ` (`rows × cols`) with `L Φ = Φ R` for every pair `(L, R)`, by one
/// sparse solve of the stacked `vec(LΦ − ΦR) = 0` system.
pub fn intertwiners(rows: usize, cols: usize, pairs: &[(&RatMatrix, &RatMatrix)]) -> Result<Vec<RatMatrix>> {
    let size = rows * cols;
    let mut blocks = Vec::with_capacity(pairs.len());
    for (l, r) in pairs {
        if l.rows() != rows || !l.is_square() || r.rows() != cols || !r.is_square() {
            return Err(Error::Shape("intertwiner equation with mismatched operators".into()));
        }
        let left = l.kron(&RatMatrix::identity(cols));
        let right = RatMatrix::identity(rows).kron(&r.transpose());
        blocks.push(&left - &right);
    }
    let kernel = if blocks.is_empty() {
        (0..size).map(|i| crate::exact::unit_vector(size, i)).collect()
    } else {
        let refs: Vec<&RatMatrix> = blocks.iter().collect();
        RatMatrix::vstack(&refs)?.kernel()
    };
    kernel.into_iter().map(|v| unflatten(rows, cols, &v)).collect()
}

fn unflatten(rows: usize, cols: usize, v: &[Rational]) -> Result<RatMatrix> {
    RatMatrix::from_triplets(
        rows,
        cols,
        v.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i / cols, i % cols, x.clone())),
    )
}

fn flatten_into(a: &RatMatrix, col: usize, offset: usize, out: &mut Vec<(usize, usize, Rational)>) {
    let cols = a.cols();
    out.extend(a.triplets().map(|(i, j, x)| (offset + i * cols + j, col, x.clone())));
}

/// Restricts a basis of candidate intertwiners to those also satisfying the
/// new pairs: solves for the coefficients on the current basis.
pub fn refine(basis: Vec<RatMatrix>, pairs: &[(&RatMatrix, &RatMatrix)]) -> Result<Vec<RatMatrix>> {
    let Some(first) = basis.first() else {
        return Ok(basis);
    };
    let (rows, cols) = (first.rows(), first.cols());
    let size = rows * cols;
    let mut trip = Vec::new();
    for (c, phi) in basis.iter().enumerate() {
        for (p, (l, r)) in pairs.iter().enumerate() {
            let res = &(*l * phi) - &(phi * *r);
            flatten_into(&res, c, p * size, &mut trip);
        }
    }
    if trip.is_empty() {
        return Ok(basis);
    }
    let sys = RatMatrix::from_triplets(size * pairs.len(), basis.len(), trip)?;
    let coeffs = sys.kernel();
    Ok(coeffs
        .iter()
        .map(|c| {
            basis.iter().zip(c).fold(RatMatrix::zeros(rows, cols), |acc, (b, x)| {
                if x.is_zero() {
                    acc
                } else {
                    acc.add_scaled(b, x).expect("same shape")
                }
            })
        })
        .collect())
}

/// Row-convention module maps `F: M → M'` (`F` is `dim M × dim M'` and
/// `A_g F = F A'_g` for every generator).
pub fn hom_aff(m1: &AffModule, m2: &AffModule) -> Result<HomSpace> {
    if m1.m() != m2.m() || m1.ell() != m2.ell() {
        return Err(Error::Shape("modules over different algebras".into()));
    }
    let pairs: Vec<(&RatMatrix, &RatMatrix)> = m1
        .mats()
        .iter()
        .map(|(g, a)| (a, m2.mat(*g)))
        .collect();
    let basis = intertwiners(m1.dim(), m2.dim(), &pairs)?;
    Ok(HomSpace { side: Side::Aff, dim: basis.len(), basis })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToroidalHom {
    pub space: HomSpace,
    pub kmax: i64,
    /// Dimension after imposing all generators with `|k| ≤ r`, for
    /// `r = 0, …, kmax + 1`.
    pub dims_by_k: Vec<usize>,
    pub stabilized: bool,
}

/// Column-convention maps `Φ: F(M) → F(M')` commuting with `h_i(k)`,
/// `x_i^±(k)` for `i ∈ [0, n]`, `|k| ≤ kmax`; the solve is repeated with
/// `kmax + 1` to confirm the dimension has settled.
pub fn hom_toroidal<W1, W2>(w1: &W1, w2: &W2, kmax: i64, exec: Exec) -> Result<ToroidalHom>
where
    W1: OperatorFamily + ?Sized,
    W2: OperatorFamily + ?Sized,
{
    let (b1, b2) = (w1.carrier(), w2.carrier());
    if b1.n() != b2.n() || b1.ell() != b2.ell() {
        return Err(Error::Shape("modules induced with different (n, ℓ)".into()));
    }
    let n = b1.n();
    let gens = TorGen::all(n, kmax + 1);
    // Warm both operator caches in parallel.
    let warmed = exec.map(&gens, |&g| -> Result<()> {
        w1.operator(g)?;
        w2.operator(g)?;
        Ok(())
    });
    warmed.into_iter().collect::<Result<Vec<()>>>()?;

    let ops = |r: i64| -> Result<Vec<_>> {
        gens.iter()
            .filter(|g| g.k.abs() == r)
            .map(|&g| Ok((w2.operator(g)?, w1.operator(g)?)))
            .collect()
    };
    let level0 = ops(0)?;
    let pairs: Vec<(&RatMatrix, &RatMatrix)> = level0.iter().map(|(l, r)| (&**l, &**r)).collect();
    let mut basis = intertwiners(b2.dim(), b1.dim(), &pairs)?;
    let mut dims = vec![basis.len()];
    let mut at_kmax = basis.clone();
    for r in 1..=kmax + 1 {
        let level = ops(r)?;
        let pairs: Vec<(&RatMatrix, &RatMatrix)> = level.iter().map(|(l, r)| (&**l, &**r)).collect();
        basis = refine(basis, &pairs)?;
        dims.push(basis.len());
        if r == kmax {
            at_kmax = basis.clone();
        }
    }
    let stabilized = dims[dims.len() - 1] == dims[dims.len() - 2];
    Ok(ToroidalHom {
        space: HomSpace { side: Side::Toroidal, dim: at_kmax.len(), basis: at_kmax },
        kmax,
        dims_by_k: dims,
        stabilized,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `ℓ < n`.
    Inside,
    /// `ℓ = n`.
    Boundary,
    /// `ℓ > n`: reported, never counted as a failure.
    Outside,
}

pub fn regime(n: usize, ell: usize) -> Regime {
    match ell.cmp(&n) {
        std::cmp::Ordering::Less => Regime::Inside,
        std::cmp::Ordering::Equal => Regime::Boundary,
        std::cmp::Ordering::Greater => Regime::Outside,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaithfulReport {
    pub n: usize,
    pub ell: usize,
    pub regime: Regime,
    pub dim_aff: usize,
    pub dim_tor: usize,
    pub kmax: i64,
    pub dims_by_k: Vec<usize>,
    pub stabilized: bool,
    /// Every `f ⊗ id` intertwines the toroidal action.
    pub images_intertwine: bool,
    /// Rank of `{f ⊗ id}` over a basis of `Hom_aff`.
    pub image_rank: usize,
    pub fully_faithful: bool,
    pub status: Status,
}

impl HasStatus for FaithfulReport {
    fn status(&self) -> Status {
        self.status
    }
}

fn flat_rank(mats: &[RatMatrix]) -> Result<usize> {
    let Some(first) = mats.first() else {
        return Ok(0);
    };
    let mut trip = Vec::new();
    for (c, a) in mats.iter().enumerate() {
        flatten_into(a, c, 0, &mut trip);
    }
    Ok(RatMatrix::from_triplets(first.rows() * first.cols(), mats.len(), trip)?.rank())
}

/// `f ↦ f ⊗ id` from `Hom_aff(M, M')` to `Hom_tor(F(M), F(M'))`: injective by
/// rank, surjective by dimension, with the toroidal dimension confirmed
/// stable in `kmax`. Outside `ℓ ≤ n` the numbers are reported and the status
/// is always pass.
pub fn check_fully_faithful(m1: &AffModule, m2: &AffModule, n: usize, kmax: i64, exec: Exec) -> Result<FaithfulReport> {
    let b1 = BalancedModule::build(m1, n)?;
    let b2 = BalancedModule::build(m2, n)?;
    faithful_on(&b1, &b2, kmax, exec)
}

pub fn faithful_on<W1, W2>(w1: &W1, w2: &W2, kmax: i64, exec: Exec) -> Result<FaithfulReport>
where
    W1: OperatorFamily + ?Sized,
    W2: OperatorFamily + ?Sized,
{
    let (b1, b2) = (w1.carrier(), w2.carrier());
    let aff = hom_aff(b1.source(), b2.source())?;
    let tor = hom_toroidal(w1, w2, kmax, exec)?;
    let images = aff
        .basis
        .iter()
        .map(|f| b1.morphism(b2, f))
        .collect::<Result<Vec<_>>>()?;
    let gens = TorGen::all(b1.n(), kmax);
    let mut images_intertwine = true;
    'outer: for phi in &images {
        for &g in &gens {
            if &*w2.operator(g)? * phi != phi * &*w1.operator(g)? {
                images_intertwine = false;
                break 'outer;
            }
        }
    }
    let image_rank = flat_rank(&images)?;
    let fully_faithful =
        images_intertwine && image_rank == aff.dim && aff.dim == tor.space.dim && tor.stabilized;
    let reg = regime(b1.n(), b1.ell());
    Ok(FaithfulReport {
        n: b1.n(),
        ell: b1.ell(),
        regime: reg,
        dim_aff: aff.dim,
        dim_tor: tor.space.dim,
        kmax,
        dims_by_k: tor.dims_by_k,
        stabilized: tor.stabilized,
        images_intertwine,
        image_rank,
        fully_faithful,
        status: Status::from_bool(fully_faithful || reg == Regime::Outside),
    })
}

/// Every toroidal intertwiner also intertwines the glued two-loop operators
/// on all exponent vectors in `[-radius, radius]^2`.
pub fn intertwines_glued(hom: &HomSpace, src: &GluedAction, dst: &GluedAction, radius: i64) -> Result<Check> {
    let mut fails = Vec::new();
    let mut checked = 0;
    for (b, phi) in hom.basis.iter().enumerate() {
        for e in chevalley_basis(src.n()) {
            for p in exponent_box(src.m(), radius) {
                checked += 1;
                if &**dst.get(e, &p)? * phi != phi * &**src.get(e, &p)? {
                    fails.push(format!("basis map {} does not intertwine ρ({e} ⊗ t^{p:?})", b + 1));
                }
            }
        }
    }
    Ok(Check::from_failures("intertwines-glued", checked, fails))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMultiplicity {
    pub weight: Weight,
    pub module: usize,
    pub tensor_power: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub n: usize,
    pub ell: usize,
    pub dim: usize,
    pub weights: Vec<WeightMultiplicity>,
    /// Every weight of the module is a weight of `V^{⊗ℓ}`.
    pub support_contained: bool,
    /// The module arose as `M ⊗_{S_ℓ} V^{⊗ℓ}`.
    pub constructed: bool,
    pub status: Status,
}

impl HasStatus for DegreeReport {
    fn status(&self) -> Status {
        self.status
    }
}

/// Weight multiset of `V^{⊗ℓ}`.
pub fn tensor_power_weights(n: usize, ell: usize) -> BTreeMap<Weight, usize> {
    let total = (n + 1).pow(ell as u32);
    let mut out = BTreeMap::new();
    for flat in 0..total {
        *out.entry(tensor_weight(n, &tensor_tuple(n, ell, flat))).or_insert(0) += 1;
    }
    out
}

/// Whether every weight in `weights` occurs in `V^{⊗ℓ}`.
pub fn weights_within_degree(weights: &BTreeMap<Weight, usize>, n: usize, ell: usize) -> bool {
    let tensor = tensor_power_weights(n, ell);
    weights.iter().all(|(w, &c)| c == 0 || tensor.contains_key(w))
}

/// Weight spaces of `F(M)` at the weights of `V^{⊗ℓ}`; if their dimensions
/// do not exhaust `F(M)`, some weight lies outside.
pub fn degree_check(b: &BalancedModule) -> Result<DegreeReport> {
    let zero = vec![0; b.m()];
    let hs = (1..=b.n())
        .map(|i| b.loop_operator(&natural_rep(Kind::H, i, b.n())?, &zero))
        .collect::<Result<Vec<_>>>()?;
    degree_from_cartan(b, &hs)
}

/// [`degree_check`] with `h_i(0)` taken from an operator family.
pub fn degree_check_family<W: OperatorFamily + ?Sized>(w: &W) -> Result<DegreeReport> {
    let hs = (1..=w.carrier().n())
        .map(|i| w.operator(TorGen::h(i, 0)).map(|a| (*a).clone()))
        .collect::<Result<Vec<_>>>()?;
    degree_from_cartan(w.carrier(), &hs)
}

fn weight_space_dim(hs: &[RatMatrix], w: &Weight) -> Result<usize> {
    let d = hs[0].rows();
    let blocks: Vec<RatMatrix> = hs
        .iter()
        .enumerate()
        .map(|(i, h)| h - &RatMatrix::scalar(d, &Rational::integer(w.pairing(i + 1))))
        .collect();
    let refs: Vec<&RatMatrix> = blocks.iter().collect();
    Ok(d - RatMatrix::vstack(&refs)?.rank())
}

fn degree_from_cartan(b: &BalancedModule, hs: &[RatMatrix]) -> Result<DegreeReport> {
    let tensor = tensor_power_weights(b.n(), b.ell());
    let mut weights = Vec::with_capacity(tensor.len());
    let mut found = 0;
    for (w, &t) in &tensor {
        let d = weight_space_dim(hs, w)?;
        found += d;
        weights.push(WeightMultiplicity { weight: w.clone(), module: d, tensor_power: t });
    }
    let support_contained = found == b.dim();
    Ok(DegreeReport {
        n: b.n(),
        ell: b.ell(),
        dim: b.dim(),
        weights,
        support_contained,
        constructed: true,
        status: Status::from_bool(support_contained),
    })
}
