//! Sparse exact matrices.
//!
//! Storage is row-major with each row a sorted list of `(column, value)`
//! pairs and no stored zeros, so structural equality is mathematical
//! equality. Matrices act on column vectors unless a method says otherwise.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::Rational;
use super::sparse::{self, SparseVec};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Rational::ONE)
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        let data = if c.is_zero() {
            vec![Vec::new(); n]
        } else {
            (0..n).map(|i| vec![(i, c.clone())]).collect()
        };
        RatMatrix {
            rows: n,
            cols: n,
            data,
        }
    }

    /// Matrix unit with a single 1 at `(i, j)`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.data[i].push((j, Rational::ONE));
        m
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut data: Vec<SparseVec> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Shape(format!(
                    "entry ({r}, {c}) outside a {rows}x{cols} matrix"
                )));
            }
            data[r].push((c, v));
        }
        for row in &mut data {
            *row = sparse::normalize(std::mem::take(row));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let n = rows.len();
        let data = rows.into_iter().map(sparse::from_dense).collect();
        Ok(RatMatrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Convenience constructor for small integer literals.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::integer(v)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        let cols = columns.len();
        let mut trip = Vec::new();
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Shape(format!(
                    "column {j} has length {}, expected {rows}",
                    col.len()
                )));
            }
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    trip.push((i, j, v.clone()));
                }
            }
        }
        Self::from_triplets(rows, cols, trip)
    }

    pub(crate) fn from_sparse_rows(rows: usize, cols: usize, data: Vec<SparseVec>) -> Self {
        debug_assert_eq!(data.len(), rows);
        RatMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, r)| r.len() == 1 && r[0].0 == i && r[0].1.is_one())
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        sparse::get(&self.data[i], j)
    }

    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Entries sorted by `(row, col)`.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        self.data
            .iter()
            .map(|r| sparse::to_dense(r, self.cols))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (i, j, v) in self.triplets() {
            data[j].push((i, v.clone()));
        }
        RatMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, v * c)).collect())
            .collect();
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        Ok(self.combine(other, &Rational::ONE))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sub")?;
        Ok(self.combine(other, &-Rational::ONE))
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Self, c: &Rational) -> Result<Self> {
        self.same_shape(other, "add_scaled")?;
        Ok(self.combine(other, c))
    }

    fn combine(&self, other: &Self, c: &Rational) -> Self {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| sparse::axpy(a, c, b))
            .collect();
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    fn same_shape(&self, other: &Self, op: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{op}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "mul: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut acc = sparse::Accumulator::new(other.cols);
        let data = self
            .data
            .iter()
            .map(|row| {
                for (k, a) in row {
                    acc.add_scaled(a, &other.data[*k]);
                }
                acc.drain()
            })
            .collect();
        Ok(RatMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "mul_vec: {} columns vs vector of length {}",
                self.cols,
                v.len()
            )));
        }
        Ok(self
            .data
            .iter()
            .map(|row| row.iter().map(|(j, a)| a * &v[*j]).sum())
            .collect())
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.rows {
            return Err(Error::Shape(format!(
                "vec_mul: vector of length {} vs {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut acc = sparse::Accumulator::new(self.cols);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                acc.add_scaled(c, &self.data[i]);
            }
        }
        Ok(sparse::to_dense(&acc.drain(), self.cols))
    }

    /// Kronecker product; the left factor indexes the major coordinate.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = Vec::with_capacity(rows);
        for arow in &self.data {
            for brow in &other.data {
                let mut out = Vec::with_capacity(arow.len() * brow.len());
                for (ja, a) in arow {
                    for (jb, b) in brow {
                        out.push((ja * other.cols + jb, a * b));
                    }
                }
                data.push(out);
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other)?
            .checked_sub(&other.checked_mul(self)?)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, &j) in idx.iter().enumerate() {
            pos[j] = k;
        }
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut out: SparseVec = r
                    .iter()
                    .filter(|(j, _)| pos[*j] != usize::MAX)
                    .map(|(j, v)| (pos[*j], v.clone()))
                    .collect();
                out.sort_by_key(|e| e.0);
                out
            })
            .collect();
        RatMatrix {
            rows: self.rows,
            cols: idx.len(),
            data,
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        RatMatrix {
            rows: idx.len(),
            cols: self.cols,
            data: idx.iter().map(|&i| self.data[i].clone()).collect(),
        }
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[&RatMatrix]) -> Result<Self> {
        let cols = parts.first().map_or(0, |m| m.cols);
        let mut data = Vec::new();
        for p in parts {
            if p.cols != cols {
                return Err(Error::Shape("vstack: column counts differ".into()));
            }
            data.extend(p.data.iter().cloned());
        }
        Ok(RatMatrix {
            rows: data.len(),
            cols,
            data,
        })
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Shape("hstack: row counts differ".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut r = a.clone();
                r.extend(b.iter().map(|(j, v)| (j + self.cols, v.clone())));
                r
            })
            .collect();
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("pow of a non-square matrix".into()));
        }
        let (mut base, mut e) = if e < 0 {
            (self.inverse()?, e.unsigned_abs())
        } else {
            (self.clone(), e as u64)
        };
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n))?;
        let red = aug.rref();
        if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
            return Err(Error::Singular(format!("{n}x{n} matrix has rank < {n}")));
        }
        let data = red
            .rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .filter(|(j, _)| *j >= n)
                    .map(|(j, v)| (j - n, v))
                    .collect()
            })
            .collect();
        Ok(RatMatrix {
            rows: n,
            cols: n,
            data,
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn rref(&self) -> Rref {
        super::elim::rref(self.cols, self.data.clone())
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Exact basis of the right null space.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        self.rref().kernel_basis()
    }

    /// Some `x` with `self * x == b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::Shape(format!(
                "solve: {} rows vs right-hand side of length {}",
                self.rows,
                b.len()
            )));
        }
        let rhs = RatMatrix::from_columns(self.rows, &[b.to_vec()])?;
        let red = self.hstack(&rhs)?.rref();
        if red.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::ZERO; self.cols];
        for (row, &p) in red.rows.iter().zip(&red.pivots) {
            x[p] = sparse::get(row, self.cols);
        }
        Ok(Some(x))
    }
}

/// Reduced row echelon form: nonzero rows only, with their pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub cols: usize,
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn matrix(&self) -> RatMatrix {
        RatMatrix::from_sparse_rows(self.rows.len(), self.cols, self.rows.clone())
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&j| !is_pivot[j]).collect()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![Rational::ZERO; self.cols];
                v[f] = Rational::ONE;
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    let c = sparse::get(row, f);
                    if !c.is_zero() {
                        v[p] = -c;
                    }
                }
                v
            })
            .collect()
    }
}

pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> Result<RatMatrix> {
    a.checked_mul(b)
}

pub fn mat_kernel(a: &RatMatrix) -> Vec<Vec<Rational>> {
    a.kernel()
}

pub fn solve_linear(a: &RatMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    a.solve(b)
}

/// Panics on a shape mismatch; use `checked_mul` for fallible input.
impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.checked_mul(rhs).expect("matrix shape mismatch in mul")
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        self.checked_add(rhs).expect("matrix shape mismatch in add")
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        self.checked_sub(rhs).expect("matrix shape mismatch in sub")
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        self.scale(&-Rational::ONE)
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        } else {
            for (i, j, v) in self.triplets() {
                writeln!(f, "  ({i}, {j}) = {v}")?;
            }
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Rational)>,
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries: self.triplets().map(|(i, j, v)| (i, j, v.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        RatMatrix::from_triplets(repr.rows, repr.cols, repr.entries)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn identity_product() {
        let a = RatMatrix::from_ints(&[&[1, 2, 0], &[0, -1, 3], &[4, 0, 5]]);
        assert_eq!(mat_mul(&RatMatrix::identity(3), &a).unwrap(), a);
    }

    #[test]
    fn swap_is_involution() {
        let p = RatMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert!((&p * &p).is_identity());
    }

    #[test]
    fn hand_product() {
        let a = RatMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        let p = RatMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(&a * &p, RatMatrix::from_ints(&[&[2, 1], &[4, 3]]));
    }

    #[test]
    fn shape_errors() {
        let a = RatMatrix::zeros(2, 3);
        assert!(matches!(mat_mul(&a, &a), Err(Error::Shape(_))));
        assert!(matches!(solve_linear(&a, &[Rational::ONE]), Err(Error::Shape(_))));
        assert!(RatMatrix::from_triplets(2, 2, [(2, 0, Rational::ONE)]).is_err());
    }

    #[test]
    fn rank_one_kernel() {
        let a = RatMatrix::from_ints(&[&[1, 1], &[1, 1]]);
        let k = mat_kernel(&a);
        assert_eq!(k, vec![vec![rat(-1, 1), rat(1, 1)]]);
        assert!(mat_kernel(&RatMatrix::identity(4)).is_empty());
    }

    #[test]
    fn solve_simple() {
        let b = vec![rat(3, 1), rat(-2, 7)];
        assert_eq!(solve_linear(&RatMatrix::identity(2), &b).unwrap(), Some(b));
        let two = RatMatrix::from_ints(&[&[2]]);
        assert_eq!(
            solve_linear(&two, &[Rational::ONE]).unwrap(),
            Some(vec![rat(1, 2)])
        );
        let sing = RatMatrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve_linear(&sing, &[rat(1, 1), rat(2, 1)]).unwrap(), None);
    }

    #[test]
    fn inverse_and_negative_power() {
        let a = RatMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert_eq!(a.pow(-2).unwrap(), &inv * &inv);
        assert_eq!(a.pow(0).unwrap(), RatMatrix::identity(2));
        assert!(RatMatrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn kron_layout() {
        let a = RatMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        let b = RatMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        assert_eq!(k.get(0, 1), rat(1, 1));
        assert_eq!(k.get(2, 3), rat(4, 1));
        assert_eq!(k.get(3, 0), rat(3, 1));
        assert_eq!(k.get(1, 2), rat(2, 1));
    }

    #[test]
    fn json_format() {
        let a = RatMatrix::from_rows(vec![
            vec![rat(1, 2), Rational::ZERO],
            vec![Rational::ZERO, rat(3, 1)],
        ])
        .unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"rows":2,"cols":2,"entries":[[0,0,"1/2"],[1,1,"3"]]}"#);
        let back: RatMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }
}
