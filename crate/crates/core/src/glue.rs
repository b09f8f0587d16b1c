//! Gluing single-loop actions into an action of the multiloop algebra
//! `sl_{n+1} ⊗ C[t_1^{±1}, …, t_m^{±1}]`.
//!
//! Each loop `i` supplies `ρ_i(x ⊗ t_i^k)` for `x` in the Chevalley basis and
//! `|k| ≤ kmax`. The glued map is defined one loop at a time by
//! `ρ(x ⊗ t^p) = Σ_j [ρ(x'_j ⊗ t^{p'}), ρ_r(x''_j ⊗ t_r^{p_r})]` where
//! `x = Σ_j [x'_j, x''_j]` and `p'` is `p` with its last nonzero slot `r`
//! cleared.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::aff::AffModule;
use crate::error::{Error, Result};
use crate::exact::{RatMatrix, Rational};
use crate::exec::Exec;
use crate::induced::{place_operator, BalancedModule};
use crate::lie::{self, chevalley_basis, decompose_basis, expand, BasisElem, Decomposition, TorGen};
use crate::report::{Check, HasStatus, Status};

/// `ρ_i(e ⊗ t_i^k)` keyed by `(e, k)`.
pub type LoopTable = BTreeMap<(BasisElem, i64), Arc<RatMatrix>>;

/// One slot of a nested bracket: loop, basis element, exponent.
pub type Slot = (usize, BasisElem, i64);

pub struct LoopSystem {
    n: usize,
    kmax: i64,
    dim: usize,
    rhos: Vec<LoopTable>,
    /// The single-loop balanced modules the tables came from, if any.
    parts: Option<Vec<BalancedModule>>,
}

impl LoopSystem {
    /// Operator tables given directly.
    pub fn from_tables(n: usize, kmax: i64, dim: usize, rhos: Vec<LoopTable>) -> Result<Self> {
        if rhos.is_empty() {
            return Err(Error::InvalidArgument("a loop system needs at least one loop".into()));
        }
        let basis = chevalley_basis(n);
        for (i, t) in rhos.iter().enumerate() {
            for &e in &basis {
                for k in -kmax..=kmax {
                    let a = t.get(&(e, k)).ok_or_else(|| {
                        Error::MissingGenerator(format!("ρ_{}({e} ⊗ t^{k})", i + 1))
                    })?;
                    if a.rows() != dim || a.cols() != dim {
                        return Err(Error::Shape(format!("ρ_{}({e} ⊗ t^{k}) is not {dim}x{dim}", i + 1)));
                    }
                }
            }
        }
        Ok(LoopSystem { n, kmax, dim, rhos, parts: None })
    }

    /// The actions of single-loop modules sharing their σ's, all on the
    /// same space `M ⊗_{S_ℓ} V^{⊗ℓ}`.
    pub fn from_parts(parts: &[AffModule], n: usize, kmax: i64, exec: Exec) -> Result<Self> {
        let mut built = Vec::with_capacity(parts.len());
        for (i, p) in parts.iter().enumerate() {
            if p.m() != 1 {
                return Err(Error::InvalidArgument(format!("part {} has {} loops", i + 1, p.m())));
            }
            let b = BalancedModule::build(p, n)?;
            if let Some(first) = built.first() {
                let first: &BalancedModule = first;
                if first.project() != b.project() || first.ell() != b.ell() {
                    return Err(Error::InvalidArgument(format!(
                        "part {} is not presented on the same space as part 1",
                        i + 1
                    )));
                }
            }
            built.push(b);
        }
        let basis = chevalley_basis(n);
        let keys: Vec<(BasisElem, i64)> = basis
            .iter()
            .flat_map(|&e| (-kmax..=kmax).map(move |k| (e, k)))
            .collect();
        let mut rhos = Vec::with_capacity(built.len());
        for b in &built {
            let mats = exec.map(&keys, |&(e, k)| b.loop_operator(&e.matrix(n), &[k]));
            let mut table = LoopTable::new();
            for (key, a) in keys.iter().zip(mats) {
                table.insert(*key, Arc::new(a?));
            }
            rhos.push(table);
        }
        let dim = built.first().map_or(0, BalancedModule::dim);
        Ok(LoopSystem { n, kmax, dim, rhos, parts: Some(built) })
    }

    /// The system of loop restrictions of an `Aff^m` module.
    pub fn from_module(module: &AffModule, n: usize, kmax: i64, exec: Exec) -> Result<Self> {
        let parts = (1..=module.m())
            .map(|i| module.restrict_to_loop(i))
            .collect::<Result<Vec<_>>>()?;
        LoopSystem::from_parts(&parts, n, kmax, exec)
    }

    pub fn m(&self) -> usize {
        self.rhos.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kmax(&self) -> i64 {
        self.kmax
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn table(&self, i: usize) -> &LoopTable {
        &self.rhos[i - 1]
    }

    pub fn parts(&self) -> Option<&[BalancedModule]> {
        self.parts.as_deref()
    }

    /// `ρ_i(e ⊗ t_i^k)` for a basis element.
    pub fn rho_basis(&self, i: usize, e: BasisElem, k: i64) -> Result<&Arc<RatMatrix>> {
        self.rhos
            .get(i.wrapping_sub(1))
            .and_then(|t| t.get(&(e, k)))
            .ok_or_else(|| Error::OutOfRange(format!("ρ_{i}({e} ⊗ t^{k})")))
    }

    /// `ρ_i(x ⊗ t_i^k)` for any traceless `x`, by linearity.
    pub fn rho(&self, i: usize, x: &RatMatrix, k: i64) -> Result<RatMatrix> {
        let mut acc = RatMatrix::zeros(self.dim, self.dim);
        for (e, c) in expand(x, self.n)? {
            acc = acc.add_scaled(self.rho_basis(i, e, k)?, &c)?;
        }
        Ok(acc)
    }

    /// `[ρ_{i_1}(x_1 ⊗ t^{p_1}), [ρ_{i_2}(…), … ρ_{i_c}(x_c ⊗ t^{p_c})]]`.
    pub fn nested(&self, slots: &[Slot]) -> Result<RatMatrix> {
        let (last, rest) = slots
            .split_last()
            .ok_or_else(|| Error::InvalidArgument("empty nested bracket".into()))?;
        let mut acc = (**self.rho_basis(last.0, last.1, last.2)?).clone();
        for &(i, e, k) in rest.iter().rev() {
            acc = self.rho_basis(i, e, k)?.commutator(&acc)?;
        }
        Ok(acc)
    }

    /// `Σ_j m.y_{i_1,j}^{p_1} ⋯ y_{i_c,j}^{p_c} ⊗ [x_1, […, x_c]]_j`, computed
    /// on the ambient space and pushed to the quotient. Only for systems
    /// built from modules.
    pub fn certificate_operator(&self, slots: &[Slot]) -> Result<RatMatrix> {
        let parts = self
            .parts
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("system has no underlying modules".into()))?;
        let carrier = &parts[0];
        let elem = nested_matrix(self.n, slots)?;
        let ell = carrier.ell();
        let mut acc = RatMatrix::zeros(carrier.ambient_dim(), carrier.ambient_dim());
        for j in 1..=ell {
            let mut r = RatMatrix::identity(carrier.source().dim());
            for &(i, _, k) in slots {
                if k != 0 {
                    r = &r * &*parts[i - 1].y_power(1, j, k)?;
                }
            }
            acc = &acc + &r.transpose().kron(&place_operator(&elem, j, ell));
        }
        Ok(&(carrier.project() * &acc) * carrier.section())
    }
}

impl fmt::Debug for LoopSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LoopSystem")
            .field("m", &self.m())
            .field("n", &self.n)
            .field("kmax", &self.kmax)
            .field("dim", &self.dim)
            .finish()
    }
}

/// `[x_1, [x_2, …, x_c]]` in `sl_{n+1}`.
pub fn nested_matrix(n: usize, slots: &[Slot]) -> Result<RatMatrix> {
    let (last, rest) = slots
        .split_last()
        .ok_or_else(|| Error::InvalidArgument("empty nested bracket".into()))?;
    let mut acc = last.1.matrix(n);
    for s in rest.iter().rev() {
        acc = lie::bracket(&s.1.matrix(n), &acc)?;
    }
    Ok(acc)
}

fn slots_to_string(slots: &[Slot]) -> String {
    let parts: Vec<String> = slots
        .iter()
        .map(|(i, e, k)| format!("ρ_{i}({e} ⊗ t_{i}^{k})"))
        .collect();
    parts.join(", ")
}

fn distinct_loops(rng: &mut ChaCha8Rng, m: usize, c: usize) -> Vec<usize> {
    let mut loops: Vec<usize> = (1..=m).collect();
    loops.shuffle(rng);
    loops.truncate(c);
    loops
}

/// Checks the three gluing conditions. Condition (ii) is checked through
/// the operator formula when the system comes from modules, and on sampled
/// vanishing sums of nested brackets (depth ≤ 3) in any case. Condition
/// (iii) is checked on sampled loop permutations.
pub fn check_conditions(sys: &LoopSystem, samples: usize, seed: u64, exec: Exec) -> Result<Vec<Check>> {
    let n = sys.n;
    let m = sys.m();
    let basis = chevalley_basis(n);
    let depth = m.min(3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // (i)
    let mut fails = Vec::new();
    let mut checked = 0;
    for i in 2..=m {
        for &e in &basis {
            checked += 1;
            if sys.rho_basis(i, e, 0)? != sys.rho_basis(1, e, 0)? {
                fails.push(format!("ρ_{i}({e}) ≠ ρ_1({e})"));
            }
        }
    }
    let cond_i = Check::from_failures("condition-i", checked, fails);

    // Sampled slots for the certificate and for (iii).
    let mut draws: Vec<Vec<Slot>> = Vec::new();
    for c in 1..=depth {
        for _ in 0..samples {
            let loops = distinct_loops(&mut rng, m, c);
            draws.push(
                loops
                    .into_iter()
                    .map(|i| (i, basis[rng.gen_range(0..basis.len())], rng.gen_range(-sys.kmax..=sys.kmax)))
                    .collect(),
            );
        }
    }

    let mut out = vec![cond_i];
    if sys.parts.is_some() {
        let res = exec.map(&draws, |slots| -> Result<Option<String>> {
            let lhs = sys.nested(slots)?;
            let rhs = sys.certificate_operator(slots)?;
            Ok((lhs != rhs).then(|| format!("[{}] differs from the operator formula", slots_to_string(slots))))
        });
        let fails = res.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
        out.push(Check::from_failures("condition-ii-certificate", draws.len(), fails));
    }

    // Vanishing sums: many element tuples on one loop/exponent pattern,
    // combined along the kernel of their brackets in sl_{n+1}.
    let width = basis.len() + 2;
    let mut sums = Vec::new();
    for c in 1..=depth {
        for _ in 0..samples.div_ceil(4).max(1) {
            let loops = distinct_loops(&mut rng, m, c);
            let exps: Vec<i64> = (0..c).map(|_| rng.gen_range(-sys.kmax..=sys.kmax)).collect();
            let tuples: Vec<Vec<Slot>> = (0..width)
                .map(|_| {
                    (0..c)
                        .map(|s| (loops[s], basis[rng.gen_range(0..basis.len())], exps[s]))
                        .collect()
                })
                .collect();
            sums.push(tuples);
        }
    }
    let res = exec.map(&sums, |tuples| -> Result<(usize, Option<String>)> {
        let cols = tuples
            .iter()
            .map(|t| {
                let a = nested_matrix(n, t)?;
                Ok(a.to_dense().into_iter().flatten().collect())
            })
            .collect::<Result<Vec<Vec<Rational>>>>()?;
        let relations = RatMatrix::from_columns((n + 1) * (n + 1), &cols)?.kernel();
        for coeffs in relations.iter().take(3) {
            let mut acc = RatMatrix::zeros(sys.dim, sys.dim);
            for (t, c) in tuples.iter().zip(coeffs) {
                if !c.is_zero() {
                    acc = acc.add_scaled(&sys.nested(t)?, c)?;
                }
            }
            if !acc.is_zero() {
                let support: Vec<String> = tuples
                    .iter()
                    .zip(coeffs)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(t, c)| format!("{c}·[{}]", slots_to_string(t)))
                    .collect();
                return Ok((relations.len().min(3), Some(format!("{} = 0 in L^m(g) but not on F(M)", support.join(" + ")))));
            }
        }
        Ok((relations.len().min(3), None))
    });
    let mut total = 0;
    let mut fails = Vec::new();
    for r in res {
        let (k, f) = r?;
        total += k;
        fails.extend(f);
    }
    out.push(Check::from_failures("condition-ii-vanishing-sums", total, fails));

    // (iii): exponents belong to loops, loops are permuted among the slots.
    let mut perms = Vec::new();
    if m >= 2 {
        for c in 2..=depth {
            for _ in 0..samples {
                let loops = distinct_loops(&mut rng, m, c);
                let exp_of: Vec<i64> = (0..=m).map(|_| rng.gen_range(-sys.kmax..=sys.kmax)).collect();
                let elems: Vec<BasisElem> = (0..c).map(|_| basis[rng.gen_range(0..basis.len())]).collect();
                let mut permuted = loops.clone();
                while permuted == loops {
                    permuted.shuffle(&mut rng);
                }
                let a: Vec<Slot> = (0..c).map(|s| (loops[s], elems[s], exp_of[loops[s]])).collect();
                let b: Vec<Slot> = (0..c).map(|s| (permuted[s], elems[s], exp_of[permuted[s]])).collect();
                perms.push((a, b));
            }
        }
    }
    let res = exec.map(&perms, |(a, b)| -> Result<Option<String>> {
        Ok((sys.nested(a)? != sys.nested(b)?)
            .then(|| format!("[{}] ≠ [{}]", slots_to_string(a), slots_to_string(b))))
    });
    let fails = res.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
    out.push(Check::from_failures("condition-iii", perms.len(), fails));
    Ok(out)
}

/// The glued action on all exponent vectors in `[-kmax, kmax]^m`.
pub struct GluedAction {
    n: usize,
    m: usize,
    kmax: i64,
    dim: usize,
    how: Decomposition,
    memo: HashMap<(BasisElem, Vec<i64>), Arc<RatMatrix>>,
}

/// Exponent vectors in `[-k, k]^m` whose last nonzero slot is `r` (1-based).
fn level(m: usize, r: usize, k: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0; m]];
    for slot in 0..r {
        let range: Vec<i64> = if slot + 1 == r {
            (-k..=k).filter(|&x| x != 0).collect()
        } else {
            (-k..=k).collect()
        };
        out = out
            .into_iter()
            .flat_map(|p| {
                range.iter().map(move |&x| {
                    let mut q = p.clone();
                    q[slot] = x;
                    q
                })
            })
            .collect();
    }
    out
}

impl GluedAction {
    pub fn build(sys: &LoopSystem, how: Decomposition, exec: Exec) -> Result<Self> {
        let (n, m, kmax) = (sys.n, sys.m(), sys.kmax);
        let basis = chevalley_basis(n);
        let mut glued = GluedAction { n, m, kmax, dim: sys.dim, how, memo: HashMap::new() };
        for &e in &basis {
            for k in -kmax..=kmax {
                let mut p = vec![0; m];
                p[0] = k;
                glued.memo.insert((e, p), sys.rho_basis(1, e, k)?.clone());
            }
        }
        let decomps = basis
            .iter()
            .map(|&e| decompose_basis(e, n, how))
            .collect::<Result<Vec<_>>>()?;
        for r in 2..=m {
            let keys: Vec<(usize, Vec<i64>)> = level(m, r, kmax)
                .into_iter()
                .flat_map(|p| (0..basis.len()).map(move |b| (b, p.clone())))
                .collect();
            let mats = exec.map(&keys, |(b, p)| -> Result<RatMatrix> {
                let mut prev = p.clone();
                prev[r - 1] = 0;
                let mut acc = RatMatrix::zeros(sys.dim, sys.dim);
                for (x1, x2) in &decomps[*b] {
                    let left = glued.eval(x1, &prev)?;
                    let right = sys.rho(r, x2, p[r - 1])?;
                    acc = &acc + &left.commutator(&right)?;
                }
                Ok(acc)
            });
            let mut fresh = Vec::with_capacity(keys.len());
            for ((b, p), a) in keys.into_iter().zip(mats) {
                fresh.push(((basis[b], p), Arc::new(a?)));
            }
            glued.memo.extend(fresh);
        }
        Ok(glued)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn kmax(&self) -> i64 {
        self.kmax
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn decomposition(&self) -> Decomposition {
        self.how
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    pub fn get(&self, e: BasisElem, p: &[i64]) -> Result<&Arc<RatMatrix>> {
        self.memo
            .get(&(e, p.to_vec()))
            .ok_or_else(|| Error::OutOfRange(format!("ρ({e} ⊗ t^{p:?}) is outside the glued range")))
    }

    /// `ρ(x ⊗ t^p)` for any traceless `x`.
    pub fn eval(&self, x: &RatMatrix, p: &[i64]) -> Result<RatMatrix> {
        let mut acc = RatMatrix::zeros(self.dim, self.dim);
        for (e, c) in expand(x, self.n)? {
            acc = acc.add_scaled(self.get(e, p)?, &c)?;
        }
        Ok(acc)
    }

    /// Entries sorted by basis position, then exponent vector.
    pub fn entries(&self) -> Vec<(BasisElem, &[i64], &RatMatrix)> {
        let mut v: Vec<_> = self.memo.iter().map(|((e, p), a)| (*e, p.as_slice(), &**a)).collect();
        v.sort_by(|a, b| {
            (lie::basis_index(self.n, a.0), a.1).cmp(&(lie::basis_index(self.n, b.0), b.1))
        });
        v
    }

    pub fn same_operators(&self, other: &GluedAction) -> bool {
        self.memo.len() == other.memo.len()
            && self.memo.iter().all(|(k, a)| other.memo.get(k) == Some(a))
    }
}

impl fmt::Debug for GluedAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GluedAction")
            .field("m", &self.m)
            .field("n", &self.n)
            .field("kmax", &self.kmax)
            .field("entries", &self.memo.len())
            .finish()
    }
}

#[derive(Serialize)]
struct EntryRef<'a> {
    element: String,
    exps: &'a [i64],
    matrix: &'a RatMatrix,
}

impl Serialize for GluedAction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<EntryRef<'_>> = self
            .entries()
            .into_iter()
            .map(|(e, exps, matrix)| EntryRef { element: e.to_string(), exps, matrix })
            .collect();
        let mut st = s.serialize_struct("GluedAction", 6)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("kmax", &self.kmax)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("decomposition", &self.how)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

/// Builds the glued action after the conditions pass.
pub fn glue(sys: &LoopSystem, samples: usize, seed: u64, exec: Exec) -> Result<GluedAction> {
    let conditions = check_conditions(sys, samples, seed, exec)?;
    if let Some(c) = conditions.iter().find(|c| !c.status.passed()) {
        return Err(Error::Condition(format!(
            "{}: {}",
            c.name,
            c.witness.clone().unwrap_or_default()
        )));
    }
    GluedAction::build(sys, Decomposition::Standard, exec)
}

/// The multiloop action on `F(M)` determined by single-loop actions.
pub fn lift_module_action(parts: &[AffModule], n: usize, kmax: i64, seed: u64, exec: Exec) -> Result<GluedAction> {
    let sys = LoopSystem::from_parts(parts, n, kmax, exec)?;
    glue(&sys, 32, seed, exec)
}

/// `ρ(e ⊗ t_i^k) == ρ_i(e ⊗ t_i^k)` for every loop.
pub fn check_restriction(glued: &GluedAction, sys: &LoopSystem) -> Result<Check> {
    let mut fails = Vec::new();
    let mut checked = 0;
    let k = glued.kmax.min(sys.kmax);
    for i in 1..=sys.m() {
        for e in chevalley_basis(sys.n) {
            for kk in -k..=k {
                let mut p = vec![0; sys.m()];
                p[i - 1] = kk;
                checked += 1;
                if glued.get(e, &p)? != sys.rho_basis(i, e, kk)? {
                    fails.push(format!("ρ({e} ⊗ t_{i}^{kk}) ≠ ρ_{i}({e} ⊗ t_{i}^{kk})"));
                }
            }
        }
    }
    Ok(Check::from_failures("restriction", checked, fails))
}

/// All exponent vectors in `[-r, r]^m`.
pub fn exponent_box(m: usize, r: i64) -> Vec<Vec<i64>> {
    (0..m).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|p| {
                (-r..=r).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect()
    })
}

/// `[ρ(x ⊗ t^s), ρ(y ⊗ t^r)] == ρ([x, y] ⊗ t^{s+r})` for all Chevalley basis
/// pairs and `s, r ∈ [-radius, radius]^m`.
pub fn verify_lie_hom(glued: &GluedAction, radius: i64, exec: Exec) -> Result<Check> {
    if 2 * radius > glued.kmax {
        return Err(Error::OutOfRange(format!(
            "brackets of exponents up to {radius} leave the glued range {}",
            glued.kmax
        )));
    }
    let n = glued.n;
    let basis = chevalley_basis(n);
    let brackets: HashMap<(BasisElem, BasisElem), RatMatrix> = basis
        .iter()
        .flat_map(|&a| basis.iter().map(move |&b| (a, b)))
        .map(|(a, b)| Ok(((a, b), lie::bracket(&a.matrix(n), &b.matrix(n))?)))
        .collect::<Result<_>>()?;
    let exps = exponent_box(glued.m, radius);
    let outer: Vec<(BasisElem, &Vec<i64>)> = basis
        .iter()
        .flat_map(|&a| exps.iter().map(move |s| (a, s)))
        .collect();
    let res = exec.map(&outer, |&(a, s)| -> Result<(usize, Option<String>)> {
        let ra = glued.get(a, s)?;
        let mut count = 0;
        for &b in &basis {
            for r in &exps {
                count += 1;
                let lhs = ra.commutator(glued.get(b, r)?)?;
                let sum: Vec<i64> = s.iter().zip(r).map(|(x, y)| x + y).collect();
                let rhs = glued.eval(&brackets[&(a, b)], &sum)?;
                if lhs != rhs {
                    return Ok((count, Some(format!("[ρ({a} ⊗ t^{s:?}), ρ({b} ⊗ t^{r:?})] ≠ ρ([{a}, {b}] ⊗ t^{sum:?})"))));
                }
            }
        }
        Ok((count, None))
    });
    let mut total = 0;
    let mut fails = Vec::new();
    for r in res {
        let (c, f) = r?;
        total += c;
        fails.extend(f);
    }
    Ok(Check::from_failures("lie-homomorphism", total, fails))
}

/// Glued operators agree for every available alternative decomposition.
pub fn decomposition_independence(sys: &LoopSystem, exec: Exec) -> Result<Check> {
    let base = GluedAction::build(sys, Decomposition::Standard, exec)?;
    let mut alts = vec![Decomposition::Swapped];
    if sys.n >= 2 {
        alts.push(Decomposition::ThroughThird);
    }
    let mut fails = Vec::new();
    for how in &alts {
        let other = GluedAction::build(sys, *how, exec)?;
        if !base.same_operators(&other) {
            let (e, p) = base
                .memo
                .iter()
                .find(|(k, a)| other.memo.get(*k) != Some(*a))
                .map(|(k, _)| k.clone())
                .expect("some entry differs");
            fails.push(format!("{how:?} gives a different ρ({e} ⊗ t^{p:?})"));
        }
    }
    Ok(Check::from_failures("decomposition-independence", alts.len(), fails))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub generator: TorGen,
    pub exps: Vec<i64>,
    pub status: Status,
}

impl HasStatus for Comparison {
    fn status(&self) -> Status {
        self.status
    }
}

/// Glued two-loop operators against the direct toroidal action, generator
/// by generator (loop 1 carries `s`, loop 2 carries `t`).
pub fn compare_with_direct(glued: &GluedAction, b: &BalancedModule, kmax: i64, exec: Exec) -> Result<Vec<Comparison>> {
    if glued.m != 2 || b.m() != 2 {
        return Err(Error::InvalidArgument("comparison with the toroidal action needs two loops".into()));
    }
    if glued.n != b.n() || glued.dim != b.dim() {
        return Err(Error::Shape("glued action and module live on different spaces".into()));
    }
    let gens = TorGen::all(b.n(), kmax);
    exec.map(&gens, |&g| -> Result<Comparison> {
        let mono = g.monomial(b.n())?;
        let ours = glued.eval(&mono.elem, &mono.exps)?;
        let direct = b.toroidal_operator(g)?;
        Ok(Comparison { generator: g, exps: mono.exps, status: Status::from_bool(ours == *direct) })
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aff::{evaluation_module, FixtureSpec};
    use crate::report::all_pass;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::integer(x)).collect()
    }

    fn eval2() -> AffModule {
        evaluation_module(&[ints(&[2, 3]), ints(&[5, 7])]).unwrap()
    }

    #[test]
    fn levels_partition_the_box() {
        let mut all: Vec<Vec<i64>> = (1..=3).flat_map(|r| level(3, r, 2)).collect();
        all.push(vec![0, 0, 0]);
        all.sort();
        let mut expect = exponent_box(3, 2);
        expect.sort();
        assert_eq!(all, expect);
    }

    #[test]
    fn conditions_pass_for_modules() {
        let sys = LoopSystem::from_module(&eval2(), 2, 1, Exec::default()).unwrap();
        let report = check_conditions(&sys, 16, 7, Exec::default()).unwrap();
        assert!(all_pass(&report), "{report:?}");
        assert_eq!(report.len(), 4);
        assert!(report.iter().all(|c| c.checked > 0));
    }

    #[test]
    fn single_loop_is_vacuous() {
        let m = evaluation_module(&[ints(&[2, 3])]).unwrap();
        let sys = LoopSystem::from_module(&m, 2, 1, Exec::default()).unwrap();
        assert!(all_pass(&check_conditions(&sys, 8, 1, Exec::default()).unwrap()));
        let g = glue(&sys, 8, 1, Exec::default()).unwrap();
        assert_eq!(g.len(), 8 * 3);
        assert!(check_restriction(&g, &sys).unwrap().status.passed());
    }

    #[test]
    fn noncommuting_loops_fail_condition_iii() {
        let m = FixtureSpec::parse("noncomm:2,3;5,7", 2).unwrap().build().unwrap();
        let parts = vec![m.restrict_to_loop(1).unwrap(), m.restrict_to_loop(2).unwrap()];
        let sys = LoopSystem::from_parts(&parts, 2, 1, Exec::default()).unwrap();
        let report = check_conditions(&sys, 32, 3, Exec::default()).unwrap();
        let iii = report.iter().find(|c| c.name == "condition-iii").unwrap();
        assert!(!iii.status.passed());
        assert!(iii.witness.as_deref().unwrap().contains("≠"));
        assert!(matches!(glue(&sys, 32, 3, Exec::default()), Err(Error::Condition(_))));
    }

    #[test]
    fn recursion_example() {
        let sys = LoopSystem::from_module(&eval2(), 2, 1, Exec::default()).unwrap();
        let g = GluedAction::build(&sys, Decomposition::Standard, Exec::default()).unwrap();
        let lhs = g.get(BasisElem::H(1), &[1, 1]).unwrap();
        let rhs = sys
            .rho_basis(1, BasisElem::E(1, 2), 1)
            .unwrap()
            .commutator(sys.rho_basis(2, BasisElem::E(2, 1), 1).unwrap())
            .unwrap();
        assert_eq!(**lhs, rhs);
        assert!(check_restriction(&g, &sys).unwrap().status.passed());
        assert!(decomposition_independence(&sys, Exec::default()).unwrap().status.passed());
    }

    #[test]
    fn glued_matches_direct_and_operator_formula() {
        let m = eval2();
        let sys = LoopSystem::from_module(&m, 2, 2, Exec::default()).unwrap();
        let g = glue(&sys, 8, 11, Exec::default()).unwrap();
        let b = BalancedModule::build(&m, 2).unwrap();
        let cmp = compare_with_direct(&g, &b, 2, Exec::default()).unwrap();
        assert!(all_pass(&cmp));
        assert_eq!(cmp.len(), 5 * 3 * 3);
        // Independent route: the loop operator with the full exponent vector.
        for (e, p, a) in g.entries().into_iter().step_by(7) {
            assert_eq!(&b.loop_operator(&e.matrix(2), p).unwrap(), a);
        }
        assert!(verify_lie_hom(&g, 1, Exec::default()).unwrap().status.passed());
    }

    #[test]
    fn lie_hom_catches_a_tampered_entry() {
        let sys = LoopSystem::from_module(&eval2(), 2, 2, Exec::default()).unwrap();
        let mut g = GluedAction::build(&sys, Decomposition::Standard, Exec::default()).unwrap();
        let key = (BasisElem::E(1, 3), vec![1, -1]);
        let bumped = g.memo[&key].add_scaled(&RatMatrix::identity(g.dim), &Rational::ONE).unwrap();
        g.memo.insert(key, Arc::new(bumped));
        let c = verify_lie_hom(&g, 1, Exec::default()).unwrap();
        assert!(!c.status.passed());
    }

    #[test]
    fn three_loops_small() {
        let m = evaluation_module(&[ints(&[2, 3]), ints(&[5, 7]), ints(&[1, -1])]).unwrap();
        let sys = LoopSystem::from_module(&m, 2, 2, Exec::default()).unwrap();
        let g = glue(&sys, 8, 5, Exec::default()).unwrap();
        assert!(check_restriction(&g, &sys).unwrap().status.passed());
        let b = BalancedModule::build(&m, 2).unwrap();
        let x = lie::e_unit(2, 3, 1);
        assert_eq!(g.eval(&x, &[1, -2, 1]).unwrap(), b.loop_operator(&x, &[1, -2, 1]).unwrap());
    }

    #[test]
    fn table_system_validates() {
        let sys = LoopSystem::from_module(&eval2(), 2, 1, Exec::default()).unwrap();
        let mut t = sys.table(1).clone();
        let from = LoopSystem::from_tables(2, 1, sys.dim(), vec![t.clone(), sys.table(2).clone()]).unwrap();
        assert!(from.parts().is_none());
        t.remove(&(BasisElem::H(1), 1));
        assert!(LoopSystem::from_tables(2, 1, sys.dim(), vec![t]).is_err());
    }
}
