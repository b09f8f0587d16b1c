//! The balanced tensor product `F(M) = M ⊗_{C[S_ℓ]} V^{⊗ℓ}` and the loop
//! algebra operators induced on it.
//!
//! Ambient coordinates are indexed by `(a, t)` with `a` a basis index of `M`
//! (major) and `t` a multi-index of `V^{⊗ℓ}` in lexicographic order (minor).
//! The ambient operator for `m ⊗ v ↦ m.g ⊗ A v` is `R(g)^T ⊗ A`, where `R(g)`
//! is the row-convention matrix of `g` on `M`.
//!
//! The quotient is identified with the image of the symmetrizer
//! `E = (1/ℓ!) Σ_σ R(σ^{-1})^T ⊗ P(σ)`: `section` holds pivot columns of `E`
//! and `project` the nonzero rows of its reduced echelon form, so that
//! `project · section = I` and `ker project` is the balancing subspace.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::aff::AffModule;
use crate::error::{Error, Result};
use crate::exact::{RatMatrix, Rational};
use crate::exec::Exec;
use crate::lie::{self, cartan_entry, Kind, TorGen, Weight};
use crate::report::{first_failure, HasStatus, Status};
use crate::symgroup::Permutation;

pub struct BalancedModule {
    source: AffModule,
    n: usize,
    ell: usize,
    tensor_dim: usize,
    project: RatMatrix,
    section: RatMatrix,
    /// `R(σ_k)^T ⊗ P(σ_k)` for `k = 1..ℓ−1`.
    twisted: Vec<RatMatrix>,
    op_cache: RwLock<HashMap<TorGen, Arc<RatMatrix>>>,
    pow_cache: RwLock<HashMap<(usize, usize, i64), Arc<RatMatrix>>>,
}

/// Flat lexicographic index of a 1-based multi-index over `{1, …, n+1}`.
pub fn tensor_index(n: usize, idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &r| acc * (n + 1) + (r - 1))
}

pub fn tensor_tuple(n: usize, ell: usize, mut flat: usize) -> Vec<usize> {
    let mut out = vec![0; ell];
    for slot in out.iter_mut().rev() {
        *slot = flat % (n + 1) + 1;
        flat /= n + 1;
    }
    out
}

/// Place permutation `P(σ)` on `V^{⊗ℓ}`: `v_{t} ↦ v_{σ·t}`.
pub fn place_permutation(n: usize, p: &Permutation) -> RatMatrix {
    let ell = p.ell();
    let size = (n + 1).pow(ell as u32);
    let trip = (0..size).map(|t| {
        let tuple = tensor_tuple(n, ell, t);
        let moved = p.act_on_tuple(&tuple).expect("length ℓ");
        (tensor_index(n, &moved), t, Rational::ONE)
    });
    RatMatrix::from_triplets(size, size, trip).expect("in range")
}

/// `I ⊗ ⋯ ⊗ X ⊗ ⋯ ⊗ I` with `X` at place `j` (1-based) of `ℓ`.
pub fn place_operator(x: &RatMatrix, j: usize, ell: usize) -> RatMatrix {
    let d = x.rows();
    let left = RatMatrix::identity(d.pow((j - 1) as u32));
    let right = RatMatrix::identity(d.pow((ell - j) as u32));
    left.kron(x).kron(&right)
}

impl BalancedModule {
    pub fn build(source: &AffModule, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        let checks = source.verify(Exec::default());
        if let Some(c) = first_failure(&checks) {
            return Err(Error::RelationFailed {
                relation: c.relation.clone(),
            });
        }
        let ell = source.ell();
        let tensor_dim = (n + 1).pow(ell as u32);
        let ambient = source.dim() * tensor_dim;

        let perms = Permutation::all(ell);
        let mut sym = RatMatrix::zeros(ambient, ambient);
        for p in &perms {
            let r = source.act_perm(&p.inverse()).transpose();
            sym = &sym + &r.kron(&place_permutation(n, p));
        }
        let sym = sym.scale(&Rational::new(1, perms.len() as i64)?);
        let red = sym.rref();
        let project = red.matrix();
        let section = sym.select_columns(&red.pivots);

        let twisted = (1..ell)
            .map(|k| {
                let s = Permutation::coxeter(ell, k).expect("k < ℓ");
                source.sigma(k).transpose().kron(&place_permutation(n, &s))
            })
            .collect();

        Ok(BalancedModule {
            source: source.clone(),
            n,
            ell,
            tensor_dim,
            project,
            section,
            twisted,
            op_cache: RwLock::new(HashMap::new()),
            pow_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn source(&self) -> &AffModule {
        &self.source
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn m(&self) -> usize {
        self.source.m()
    }

    pub fn dim(&self) -> usize {
        self.project.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.source.dim() * self.tensor_dim
    }

    pub fn tensor_dim(&self) -> usize {
        self.tensor_dim
    }

    pub fn project(&self) -> &RatMatrix {
        &self.project
    }

    pub fn section(&self) -> &RatMatrix {
        &self.section
    }

    /// Ambient coordinates of `e_a ⊗ v_{idx}` (0-based `a`, 1-based `idx`).
    pub fn ambient_index(&self, a: usize, idx: &[usize]) -> usize {
        a * self.tensor_dim + tensor_index(self.n, idx)
    }

    /// Quotient coordinates of the class of `e_a ⊗ v_{idx}`.
    pub fn class_of(&self, a: usize, idx: &[usize]) -> Vec<Rational> {
        self.project.column(self.ambient_index(a, idx))
    }

    /// Quotient coordinates of the class of `m ⊗ v_{idx}` for a row vector `m`.
    pub fn class_of_vector(&self, m: &[Rational], idx: &[usize]) -> Vec<Rational> {
        self.embedding(idx).mul_vec(m).expect("vector of length dim M")
    }

    /// The map `m ↦ [m ⊗ v_{idx}]` as a `dim(F(M)) × dim(M)` matrix.
    pub fn embedding(&self, idx: &[usize]) -> RatMatrix {
        let t = tensor_index(self.n, idx);
        let cols: Vec<usize> = (0..self.source.dim()).map(|a| a * self.tensor_dim + t).collect();
        self.project.select_columns(&cols)
    }

    /// `y_{loop_, r}^e` on `M`, cached.
    pub fn y_power(&self, loop_: usize, r: usize, e: i64) -> Result<Arc<RatMatrix>> {
        let key = (loop_, r, e);
        if let Some(a) = self.pow_cache.read().expect("cache lock").get(&key) {
            return Ok(a.clone());
        }
        let a = Arc::new(self.source.y(loop_, r).pow(e)?);
        let mut w = self.pow_cache.write().expect("cache lock");
        Ok(w.entry(key).or_insert(a).clone())
    }

    /// `R(Π_i y_{i,j}^{exps[i]})` with loop 1 leftmost.
    pub fn loop_factor(&self, j: usize, exps: &[i64]) -> Result<RatMatrix> {
        let mut acc = RatMatrix::identity(self.source.dim());
        for (i, &e) in exps.iter().enumerate() {
            if e != 0 {
                acc = &acc * &*self.y_power(i + 1, j, e)?;
            }
        }
        Ok(acc)
    }

    /// `Σ_j R(Π_i y_{i,j}^{p_i})^T ⊗ (elem)_j` on the ambient space.
    pub fn ambient_loop_operator(&self, elem: &RatMatrix, exps: &[i64]) -> Result<RatMatrix> {
        if exps.len() != self.m() {
            return Err(Error::Shape(format!("{} exponents for {} loops", exps.len(), self.m())));
        }
        if elem.rows() != self.n + 1 || elem.cols() != self.n + 1 {
            return Err(Error::Shape("element is not an endomorphism of V".into()));
        }
        let mut acc = RatMatrix::zeros(self.ambient_dim(), self.ambient_dim());
        for j in 1..=self.ell {
            let r = self.loop_factor(j, exps)?.transpose();
            acc = &acc + &r.kron(&place_operator(elem, j, self.ell));
        }
        Ok(acc)
    }

    /// Induces an ambient operator on the quotient after checking that it
    /// preserves the balancing subspace.
    pub fn induce_ambient(&self, a: &RatMatrix) -> Result<RatMatrix> {
        let ca = &self.project * a;
        for (k, t) in self.twisted.iter().enumerate() {
            let defect = &ca - &(&ca * t);
            if let Some((col, _, _)) = defect.transpose().triplets().next() {
                let a_idx = col / self.tensor_dim;
                let tuple = tensor_tuple(self.n, self.ell, col % self.tensor_dim);
                return Err(Error::DescentFailure {
                    witness: format!(
                        "w = e_{} ⊗ v{:?}: w − (σ_{} twisted) w is balanced but its image is not",
                        a_idx + 1,
                        tuple,
                        k + 1
                    ),
                });
            }
        }
        Ok(&ca * &self.section)
    }

    /// Induces `Σ_t (action of g_t on M) ⊗ A_t`.
    pub fn induce_operator(&self, terms: &[(crate::aff::AffElement, RatMatrix)]) -> Result<RatMatrix> {
        let mut acc = RatMatrix::zeros(self.ambient_dim(), self.ambient_dim());
        for (g, a) in terms {
            if a.rows() != self.tensor_dim || a.cols() != self.tensor_dim {
                return Err(Error::Shape("tensor-side operator has the wrong size".into()));
            }
            let r = self.source.act_element(g)?.transpose();
            acc = &acc + &r.kron(a);
        }
        self.induce_ambient(&acc)
    }

    /// `elem ⊗ t^{exps}` acting on `F(M)`.
    pub fn loop_operator(&self, elem: &RatMatrix, exps: &[i64]) -> Result<RatMatrix> {
        self.induce_ambient(&self.ambient_loop_operator(elem, exps)?)
    }

    /// The single-loop affine action, with `loop_` supplying the `y_j`.
    /// `h_0` acts as `Σ_j (−h_θ)_j`.
    pub fn affine_operator(&self, kind: Kind, i: usize, loop_: usize) -> Result<RatMatrix> {
        if loop_ == 0 || loop_ > self.m() {
            return Err(Error::OutOfRange(format!("loop {loop_} of {}", self.m())));
        }
        let elem = lie::natural_rep(kind, i, self.n)?;
        let mut exps = vec![0; self.m()];
        match (i, kind) {
            (0, Kind::XPlus) => exps[loop_ - 1] = 1,
            (0, Kind::XMinus) => exps[loop_ - 1] = -1,
            _ => {}
        }
        self.loop_operator(&elem, &exps)
    }

    /// The two-loop action: `x_i^±(k) ↦ Σ_j m x_j^k y_j^{±δ_{i0}} ⊗ (x_i^±)_j v`
    /// and `h_i(k) ↦ Σ_j m x_j^k ⊗ (h_i)_j v`, with loop 1 the x's.
    pub fn toroidal_operator(&self, g: TorGen) -> Result<Arc<RatMatrix>> {
        if self.m() != 2 {
            return Err(Error::InvalidArgument(format!(
                "the toroidal action needs a two-loop module, this one has {} loops",
                self.m()
            )));
        }
        if g.i > self.n {
            return Err(Error::OutOfRange(format!("node {} for n = {}", g.i, self.n)));
        }
        if let Some(a) = self.op_cache.read().expect("cache lock").get(&g) {
            return Ok(a.clone());
        }
        let mono = g.monomial(self.n)?;
        let a = Arc::new(self.loop_operator(&mono.elem, &mono.exps)?);
        let mut w = self.op_cache.write().expect("cache lock");
        Ok(w.entry(g).or_insert(a).clone())
    }

    pub fn cached_operators(&self) -> usize {
        self.op_cache.read().expect("cache lock").len()
    }

    /// Simultaneous eigenspace of `h_1(0), …, h_n(0)` for `λ`, in quotient
    /// coordinates. Uses the loop-free action, so it applies for any `m`.
    pub fn weight_space(&self, lambda: &Weight) -> Result<Vec<Vec<Rational>>> {
        let d = self.dim();
        let zero = vec![0; self.m()];
        let mut blocks = Vec::new();
        for i in 1..=self.n {
            let h = self.loop_operator(&lie::natural_rep(Kind::H, i, self.n)?, &zero)?;
            let shift = RatMatrix::scalar(d, &Rational::integer(lambda.pairing(i)));
            blocks.push(&h - &shift);
        }
        let refs: Vec<&RatMatrix> = blocks.iter().collect();
        Ok(RatMatrix::vstack(&refs)?.kernel())
    }

    /// The map `(f ⊗ id)` from `F(M)` to `F(M')` for a row-convention
    /// module map `f` (`dim M × dim M'`).
    pub fn morphism(&self, target: &BalancedModule, f: &RatMatrix) -> Result<RatMatrix> {
        if f.rows() != self.source.dim() || f.cols() != target.source.dim() {
            return Err(Error::Shape("module map has the wrong size".into()));
        }
        if self.tensor_dim != target.tensor_dim {
            return Err(Error::Shape("modules induced with different (n, ℓ)".into()));
        }
        let amb = f.transpose().kron(&RatMatrix::identity(self.tensor_dim));
        Ok(&(&target.project * &amb) * &self.section)
    }
}

impl fmt::Debug for BalancedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BalancedModule")
            .field("n", &self.n)
            .field("ell", &self.ell)
            .field("m", &self.m())
            .field("dim", &self.dim())
            .field("ambient_dim", &self.ambient_dim())
            .finish()
    }
}

#[derive(Serialize)]
struct BalancedRepr<'a> {
    n: usize,
    ell: usize,
    m: usize,
    module_dim: usize,
    ambient_dim: usize,
    dim: usize,
    project: &'a RatMatrix,
    section: &'a RatMatrix,
}

impl Serialize for BalancedModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BalancedRepr {
            n: self.n,
            ell: self.ell,
            m: self.m(),
            module_dim: self.source.dim(),
            ambient_dim: self.ambient_dim(),
            dim: self.dim(),
            project: &self.project,
            section: &self.section,
        }
        .serialize(s)
    }
}

/// Operators of the two-loop algebra on a module presented in the form
/// `M ⊗_{C[S_ℓ]} V^{⊗ℓ}`; `carrier` fixes the quotient coordinates and the
/// `S_ℓ`-structure on `M`.
pub trait OperatorFamily: Sync {
    fn carrier(&self) -> &BalancedModule;
    fn operator(&self, g: TorGen) -> Result<Arc<RatMatrix>>;
}

impl OperatorFamily for BalancedModule {
    fn carrier(&self) -> &BalancedModule {
        self
    }

    fn operator(&self, g: TorGen) -> Result<Arc<RatMatrix>> {
        self.toroidal_operator(g)
    }
}

/// Operators supplied as an explicit table.
pub struct TableFamily {
    pub carrier: BalancedModule,
    pub table: BTreeMap<TorGen, Arc<RatMatrix>>,
}

impl TableFamily {
    /// The operators of `carrier` for `|k| ≤ kmax`, frozen into a table.
    pub fn snapshot(carrier: BalancedModule, kmax: i64) -> Result<Self> {
        let mut table = BTreeMap::new();
        for g in TorGen::all(carrier.n(), kmax) {
            table.insert(g, carrier.toroidal_operator(g)?);
        }
        Ok(TableFamily { carrier, table })
    }

    /// Adds `delta` to the operator of `g`.
    pub fn perturb(&mut self, g: TorGen, delta: &RatMatrix) -> Result<()> {
        let cur = self.table.get(&g).ok_or_else(|| Error::MissingGenerator(g.to_string()))?;
        let next = cur.checked_add(delta)?;
        self.table.insert(g, Arc::new(next));
        Ok(())
    }
}

impl OperatorFamily for TableFamily {
    fn carrier(&self) -> &BalancedModule {
        &self.carrier
    }

    fn operator(&self, g: TorGen) -> Result<Arc<RatMatrix>> {
        self.table
            .get(&g)
            .cloned()
            .ok_or_else(|| Error::MissingGenerator(g.to_string()))
    }
}

pub fn build(module: &AffModule, n: usize) -> Result<BalancedModule> {
    BalancedModule::build(module, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorFamily {
    /// `[h_i(k), h_j(m)] = 0`
    HH,
    /// `[h_i(k), x_j^±(m)] = ±a_ij x_j^±(k+m)`
    HX,
    /// `[x_i^+(k), x_j^−(m)] = δ_ij h_i(k+m)`
    XX,
    /// `[x_i^±(k), x_i^±(m)] = 0`
    SameRoot,
    /// `(ad x_i^±(0))^{1−a_ij} x_j^±(m) = 0`, `i ≠ j`
    Serre,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorRelationCheck {
    pub family: TorFamily,
    pub relation: String,
    pub i: usize,
    pub j: usize,
    pub k: i64,
    pub m: i64,
    pub status: Status,
}

impl HasStatus for TorRelationCheck {
    fn status(&self) -> Status {
        self.status
    }
}

#[derive(Clone, Copy, Debug)]
struct Instance {
    family: TorFamily,
    sign: Kind,
    i: usize,
    j: usize,
    k: i64,
    m: i64,
}

fn instances(n: usize, kmax: i64) -> Vec<Instance> {
    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            for k in -kmax..=kmax {
                for m in -kmax..=kmax {
                    out.push(Instance { family: TorFamily::HH, sign: Kind::H, i, j, k, m });
                    for sign in [Kind::XPlus, Kind::XMinus] {
                        out.push(Instance { family: TorFamily::HX, sign, i, j, k, m });
                    }
                    out.push(Instance { family: TorFamily::XX, sign: Kind::H, i, j, k, m });
                    if i == j {
                        for sign in [Kind::XPlus, Kind::XMinus] {
                            out.push(Instance { family: TorFamily::SameRoot, sign, i, j, k, m });
                        }
                    }
                }
            }
            if i != j {
                for m in -kmax..=kmax {
                    for sign in [Kind::XPlus, Kind::XMinus] {
                        out.push(Instance { family: TorFamily::Serre, sign, i, j, k: 0, m });
                    }
                }
            }
        }
    }
    out
}

fn check_instance<W: OperatorFamily + ?Sized>(w: &W, inst: &Instance) -> Result<TorRelationCheck> {
    let n = w.carrier().n;
    let dim = w.carrier().dim();
    let op = |g: TorGen| w.operator(g);
    let Instance { family, sign, i, j, k, m } = *inst;
    let zero = || RatMatrix::zeros(dim, dim);
    let (relation, lhs, rhs) = match family {
        TorFamily::HH => (
            format!("[h_{i}({k}), h_{j}({m})] = 0"),
            (*op(TorGen::h(i, k))?).commutator(&*op(TorGen::h(j, m))?)?,
            zero(),
        ),
        TorFamily::HX => {
            let a = cartan_entry(i, j, n)?;
            let c = if sign == Kind::XPlus { a } else { -a };
            let x = TorGen::new(sign, j, m);
            (
                format!("[h_{i}({k}), {x}] = {c} {sign}_{j}({})", k + m),
                (*op(TorGen::h(i, k))?).commutator(&*op(x)?)?,
                op(TorGen::new(sign, j, k + m))?.scale(&Rational::integer(c)),
            )
        }
        TorFamily::XX => {
            let rhs = if i == j { (*op(TorGen::h(i, k + m))?).clone() } else { zero() };
            (
                format!("[x+_{i}({k}), x-_{j}({m})] = δ h_{i}({})", k + m),
                (*op(TorGen::xp(i, k))?).commutator(&*op(TorGen::xm(j, m))?)?,
                rhs,
            )
        }
        TorFamily::SameRoot => (
            format!("[{sign}_{i}({k}), {sign}_{i}({m})] = 0"),
            (*op(TorGen::new(sign, i, k))?).commutator(&*op(TorGen::new(sign, i, m))?)?,
            zero(),
        ),
        TorFamily::Serre => {
            let power = 1 - cartan_entry(i, j, n)?;
            let ad = op(TorGen::new(sign, i, 0))?;
            let mut acc = (*op(TorGen::new(sign, j, m))?).clone();
            for _ in 0..power {
                acc = ad.commutator(&acc)?;
            }
            (format!("(ad {sign}_{i}(0))^{power} {sign}_{j}({m}) = 0"), acc, zero())
        }
    };
    Ok(TorRelationCheck {
        family,
        relation,
        i,
        j,
        k,
        m,
        status: Status::from_bool(lhs == rhs),
    })
}

/// Exact check of the defining relations of the two-loop algebra on `F(M)`
/// for all nodes and `|k|, |m| ≤ kmax`.
pub fn verify_toroidal_relations<W: OperatorFamily + ?Sized>(
    w: &W,
    kmax: i64,
    exec: Exec,
) -> Result<Vec<TorRelationCheck>> {
    let b = w.carrier();
    if b.m() != 2 {
        return Err(Error::InvalidArgument("toroidal relations need a two-loop module".into()));
    }
    // Warm the cache so the parallel pass mostly reads.
    let gens = TorGen::all(b.n, 2 * kmax);
    for r in exec.map(&gens, |g| w.operator(*g).map(|_| ())) {
        r?;
    }
    exec.map(&instances(b.n, kmax), |inst| check_instance(w, inst))
        .into_iter()
        .collect()
}

/// Rank of `m ↦ [m ⊗ v_{idx}]`; equals `dim M` when the map is injective.
pub fn embedding_rank(b: &BalancedModule, idx: &[usize]) -> usize {
    b.embedding(idx).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aff::{evaluation_module, one_dim, AffElement, FixtureSpec, Generator};
    use crate::exact::unit_vector;
    use crate::exact::rat;
    use crate::report::all_pass;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::integer(x)).collect()
    }

    /// Brute-force oracle: rank of the dense symmetrizer built entry by entry.
    fn symmetrizer_rank_oracle(module: &AffModule, n: usize) -> usize {
        let ell = module.ell();
        let nd = (n + 1).pow(ell as u32);
        let dim = module.dim() * nd;
        let mut dense = vec![vec![Rational::ZERO; dim]; dim];
        for p in Permutation::all(ell) {
            let r = module.act_perm(&p.inverse());
            for a in 0..module.dim() {
                for b in 0..module.dim() {
                    let c = r.get(b, a);
                    if c.is_zero() {
                        continue;
                    }
                    for t in 0..nd {
                        let moved = p.act_on_tuple(&tensor_tuple(n, ell, t)).unwrap();
                        let s = tensor_index(n, &moved);
                        dense[a * nd + s][b * nd + t] += &c;
                    }
                }
            }
        }
        RatMatrix::from_rows(dense).unwrap().rank()
    }

    #[test]
    fn quotient_dimensions() {
        let triv = one_dim(2, false, &[rat(2, 1), rat(3, 1)]).unwrap();
        let sign = one_dim(2, true, &[rat(-1, 1), rat(1, 2)]).unwrap();
        let reg = evaluation_module(&[ints(&[1, 1]), ints(&[1, 1])]).unwrap();
        for (m, want) in [(&triv, 6), (&sign, 3), (&reg, 9)] {
            let b = build(m, 2).unwrap();
            assert_eq!(b.dim(), want);
            assert_eq!(symmetrizer_rank_oracle(m, 2), want);
            assert!((b.project() * b.section()).is_identity());
        }
        let single = evaluation_module(&[ints(&[3])]).unwrap();
        let b = build(&single, 2).unwrap();
        assert_eq!(b.dim(), 3);
        assert!(b.project().is_identity());
    }

    #[test]
    fn kernel_of_project_is_balancing_subspace() {
        let m = evaluation_module(&[ints(&[2, 3]), ints(&[5, 7])]).unwrap();
        let b = build(&m, 2).unwrap();
        // Every m.σ ⊗ v − m ⊗ σ.v is killed.
        let s = m.sigma(1).transpose().kron(&RatMatrix::identity(b.tensor_dim()));
        let p = RatMatrix::identity(m.dim()).kron(&place_permutation(2, &Permutation::coxeter(2, 1).unwrap()));
        assert!((b.project() * &(&s - &p)).is_zero());
        // And the balancing subspace has the complementary dimension.
        let bal = &s - &p;
        assert_eq!(bal.rank() + b.dim(), b.ambient_dim());
    }

    #[test]
    fn induce_examples() {
        let m = evaluation_module(&[ints(&[2, 3]), ints(&[5, 7])]).unwrap();
        let b = build(&m, 2).unwrap();
        let id = AffElement::identity(2, 2);
        let t = b.tensor_dim();
        let q = b.induce_operator(&[(id.clone(), RatMatrix::identity(t))]).unwrap();
        assert!(q.is_identity());
        let s1 = AffElement::generator(2, 2, Generator::S(1)).unwrap();
        let p = place_permutation(2, &Permutation::coxeter(2, 1).unwrap());
        let a = b.induce_operator(&[(s1, RatMatrix::identity(t))]).unwrap();
        let c = b.induce_operator(&[(id, p)]).unwrap();
        assert_eq!(a, c);
        let y = AffElement::generator(2, 2, Generator::y(1, 1)).unwrap();
        match b.induce_operator(&[(y, RatMatrix::identity(t))]) {
            Err(Error::DescentFailure { witness }) => assert!(witness.contains("σ_1")),
            other => panic!("expected a descent failure, got {other:?}"),
        }
    }

    #[test]
    fn affine_operator_examples() {
        let n = 2;
        let m = evaluation_module(&[ints(&[2, 3]), ints(&[5, 7])]).unwrap();
        let b = build(&m, n).unwrap();
        let e = unit_vector(m.dim(), 0);
        // x_1^+ (m ⊗ v_2 ⊗ v_3) = m ⊗ v_1 ⊗ v_3
        let x = b.affine_operator(Kind::XPlus, 1, 2).unwrap();
        assert_eq!(x.mul_vec(&b.class_of_vector(&e, &[2, 3])).unwrap(), b.class_of_vector(&e, &[1, 3]));
        // x_0^+ (m ⊗ v_1 ⊗ v_3) = m.y_1 ⊗ v_3 ⊗ v_3
        let x0 = b.affine_operator(Kind::XPlus, 0, 2).unwrap();
        let my1 = m.y(2, 1).vec_mul(&e).unwrap();
        assert_eq!(x0.mul_vec(&b.class_of_vector(&e, &[1, 3])).unwrap(), b.class_of_vector(&my1, &[3, 3]));
        // h_0 (m ⊗ v_1 ⊗ v_2) = −(m ⊗ v_1 ⊗ v_2)
        let h0 = b.affine_operator(Kind::H, 0, 2).unwrap();
        let w = b.class_of_vector(&e, &[1, 2]);
        let neg: Vec<Rational> = w.iter().map(|c| -c).collect();
        assert_eq!(h0.mul_vec(&w).unwrap(), neg);
    }

    #[test]
    fn toroidal_operator_examples() {
        let n = 2;
        // ℓ = 1: h_1(1) acts on m ⊗ v_1 by the x-eigenvalue.
        let m = evaluation_module(&[ints(&[4]), ints(&[9])]).unwrap();
        let b = build(&m, n).unwrap();
        let e = unit_vector(1, 0);
        let w = b.class_of_vector(&e, &[1]);
        let h = b.toroidal_operator(TorGen::h(1, 1)).unwrap();
        assert_eq!(h.mul_vec(&w).unwrap(), vec![rat(4, 1), Rational::ZERO, Rational::ZERO]);
        // x_0^+(1)(m ⊗ v_1) = m.x_1 y_1 ⊗ v_3
        let x0 = b.toroidal_operator(TorGen::xp(0, 1)).unwrap();
        assert_eq!(x0.mul_vec(&w).unwrap(), b.class_of_vector(&[rat(36, 1)], &[3]));

        // k = 0 agrees with the affine action driven by the second loop.
        let m = FixtureSpec::parse("jordan:2,3;5,7", 2).unwrap().build().unwrap();
        let b = build(&m, n).unwrap();
        for i in 0..=n {
            for kind in [Kind::H, Kind::XPlus, Kind::XMinus] {
                assert_eq!(*b.toroidal_operator(TorGen::new(kind, i, 0)).unwrap(), b.affine_operator(kind, i, 2).unwrap());
            }
        }
        let three = evaluation_module(&[ints(&[1, 2]), ints(&[1, 2]), ints(&[3, 4])]).unwrap();
        assert!(build(&three, n).unwrap().toroidal_operator(TorGen::h(1, 0)).is_err());
    }

    #[test]
    fn relations_on_small_fixture() {
        let m = evaluation_module(&[ints(&[2, 3]), ints(&[5, 7])]).unwrap();
        let b = build(&m, 2).unwrap();
        let report = verify_toroidal_relations(&b, 1, Exec::default()).unwrap();
        assert!(all_pass(&report));
        let find = |f: TorFamily, i, j, k, mm| report.iter().find(|c| c.family == f && c.i == i && c.j == j && c.k == k && c.m == mm).unwrap().status;
        assert!(find(TorFamily::HH, 1, 2, 1, -1).passed());
        assert!(find(TorFamily::XX, 1, 1, 1, -1).passed());
        assert!(find(TorFamily::Serre, 1, 2, 0, 1).passed());
    }

    #[test]
    fn weight_spaces() {
        let n = 2;
        let triv = one_dim(2, false, &[rat(2, 1), rat(3, 1)]).unwrap();
        let b = build(&triv, n).unwrap();
        let sp = b.weight_space(&Weight::new(vec![2, 0, 0])).unwrap();
        assert_eq!(sp.len(), 1);
        // Oracle: weights of Sym²(C³) by enumeration of multisets.
        let mut total = 0;
        let mut seen = std::collections::BTreeMap::new();
        for a in 1..=3 {
            for c in a..=3 {
                *seen.entry(lie::tensor_weight(n, &[a, c])).or_insert(0) += 1;
            }
        }
        for (w, mult) in &seen {
            let sp = b.weight_space(w).unwrap();
            assert_eq!(sp.len(), *mult);
            total += sp.len();
            for k in -1..=1 {
                let h = b.loop_operator(&lie::natural_rep(Kind::H, 1, n).unwrap(), &[k, 0]).unwrap();
                let space = RatMatrix::from_columns(b.dim(), &sp).unwrap();
                let img = &h * &space;
                assert_eq!(space.hstack(&img).unwrap().rank(), sp.len());
            }
        }
        assert_eq!(total, b.dim());
    }

    #[test]
    fn embedding_is_injective_on_distinct_indices() {
        let m = evaluation_module(&[ints(&[2, 3, 5]), ints(&[7, 11, 13])]).unwrap();
        let b = build(&m, 3).unwrap();
        assert_eq!(embedding_rank(&b, &[1, 2, 3]), m.dim());
        assert_eq!(embedding_rank(&b, &[4, 1, 2]), m.dim());
        assert!(embedding_rank(&b, &[1, 1, 2]) < m.dim());
    }
}
